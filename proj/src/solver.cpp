#include "windrep/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "windrep/errors.hpp"

namespace windrep {

namespace {

// Dense surrogate matrix: finite values as-is, divergent entries replaced by
// sign * big_M, zero diagonal.
std::vector<double> effective_matrix(const QMatrix& Q) {
    const double M = big_M(Q);
    const int n = Q.n;
    std::vector<double> B(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const QEntry& q = Q.at(i, j);
            B[static_cast<std::size_t>(i) * n + j] = q.is_divergent ? q.sign * M : q.value;
        }
    }
    return B;
}

// Fixed-order pairwise sum, shared by every energy comparison here so that
// equal sign vectors always produce bit-identical energies.
double scratch_energy(const std::vector<double>& B, int n, const std::vector<int>& s) {
    double e = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            e += s[i] * s[j] * B[static_cast<std::size_t>(i) * n + j];
    return e;
}

// +1 sorts before -1.
bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] != b[k]) return a[k] > b[k];
    }
    return false;
}

} // namespace

SolveResult brute_force(const QMatrix& Q) {
    const int n = Q.n;
    if (n > kBruteForceLimit)
        throw TooManyPatches("brute_force: n = " + std::to_string(n) + " exceeds the limit of " +
                             std::to_string(kBruteForceLimit) + "; use local_search");
    SolveResult result;
    result.method = SolveResult::Method::brute_force;
    if (n == 0) return result;

    const std::vector<double> B = effective_matrix(Q);
    std::vector<int> s(n, 1);
    std::vector<int> best_s = s;
    double run_e = scratch_energy(B, n, s);
    double best_e = run_e;
    result.evaluations = 1;

    double abs_sum = 0.0;
    for (double v : B) abs_sum += std::abs(v);
    // Incremental updates can drift; candidates within this margin of the
    // best are re-evaluated with the scratch sum before comparing.
    const double margin = 1e-9 * (1.0 + abs_sum);

    const std::uint64_t steps = n >= 1 ? (1ull << (n - 1)) : 1;
    for (std::uint64_t step = 1; step < steps; ++step) {
        // Gray-code bit over s[1..n-1]; s[0] stays +1.
        const int k = std::countr_zero(step) + 1;
        double row = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != k) row += s[j] * B[static_cast<std::size_t>(k) * n + j];
        run_e -= 2.0 * s[k] * row;
        s[k] = -s[k];
        ++result.evaluations;
        if (run_e <= best_e + margin) {
            const double exact = scratch_energy(B, n, s);
            if (exact < best_e || (exact == best_e && lex_less(s, best_s))) {
                best_e = exact;
                best_s = s;
            }
        }
    }
    result.signs.signs = best_s;
    result.energy = best_e;
    return result;
}

SolveResult local_search(const QMatrix& Q, int restarts, std::uint64_t seed) {
    const int n = Q.n;
    SolveResult result;
    result.method = SolveResult::Method::local_search;
    if (n == 0) return result;
    restarts = std::max(restarts, 1);

    const std::vector<double> B = effective_matrix(Q);
    std::vector<int> best_s;
    double best_e = 0.0;
    bool have_best = false;

    for (int r = 0; r < restarts; ++r) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(r));
        std::vector<int> s(n);
        for (int& v : s) v = (rng() & 1u) ? 1 : -1;
        double e = scratch_energy(B, n, s);
        ++result.evaluations;

        for (;;) {
            int best_flip = -1;
            double best_delta = 0.0;
            for (int k = 0; k < n; ++k) {
                double row = 0.0;
                for (int j = 0; j < n; ++j)
                    if (j != k) row += s[j] * B[static_cast<std::size_t>(k) * n + j];
                const double delta = -2.0 * s[k] * row;
                ++result.evaluations;
                if (delta < best_delta) {
                    best_delta = delta;
                    best_flip = k;
                }
            }
            if (best_flip < 0) break;
            s[best_flip] = -s[best_flip];
            e += best_delta;
        }

        e = scratch_energy(B, n, s); // settle drift before comparing restarts
        if (s[0] == -1)
            for (int& v : s) v = -v;
        if (!have_best || e < best_e || (e == best_e && lex_less(s, best_s))) {
            best_e = e;
            best_s = s;
            have_best = true;
        }
    }
    result.signs.signs = best_s;
    result.energy = best_e;
    return result;
}

} // namespace windrep
