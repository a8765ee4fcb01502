#pragma once

#include <cstdint>

#include "windrep/energy.hpp"
#include "windrep/patching.hpp"

namespace windrep {

inline constexpr int kBruteForceLimit = 25;

struct SolveResult {
    SignAssignment signs; // canonical: first sign is +1
    double energy = 0.0;
    enum class Method { brute_force, local_search } method = Method::brute_force;
    long long evaluations = 0;
};

// Exhaustive minimization of the diagonal-free energy over sign vectors with
// the first sign fixed to +1 (the energy is invariant under a global flip).
// Enumeration walks a Gray code so each step is an O(n) incremental update;
// ties go to the lexicographically smallest vector, +1 ordered before -1.
// Throws TooManyPatches above kBruteForceLimit.
SolveResult brute_force(const QMatrix& Q);

// Best-of-restarts single-flip descent. Restart r draws its start from a
// generator seeded with seed + r, so results are reproducible.
SolveResult local_search(const QMatrix& Q, int restarts, std::uint64_t seed);

} // namespace windrep
