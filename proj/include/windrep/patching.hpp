#pragma once

#include <vector>

#include "windrep/geometry.hpp"

namespace windrep {

struct SignAssignment {
    std::vector<int> signs; // each entry is -1 or +1

    static SignAssignment all_plus(std::size_t n) { return {std::vector<int>(n, 1)}; }
};

// A maximal set of facets connected through manifold edges. internal_flips
// marks facets that must be reversed so the patch is internally consistent;
// the lowest-index facet is the orientation anchor and is never flipped.
struct Patch {
    int id = 0; // 1-based
    std::vector<int> facet_ids;
    std::vector<bool> internal_flips; // parallel to facet_ids
};

// Adjacency is severed across edges (2D: vertices) with three or more
// incident facets; those are reported in nonmanifold_edges. In 2D the second
// entry of each edge is -1.
struct PatchDecomposition {
    std::vector<Patch> patches;
    std::vector<std::array<int, 2>> nonmanifold_edges;

    std::size_t num_patches() const { return patches.size(); }
};

// Splits the mesh into orientable manifold patches. Facets connected through
// edges of incidence exactly 2 share a patch; internal flips are assigned by
// breadth-first propagation from the lowest-index facet of each patch.
// Throws NonOrientablePatch when propagation reaches a facet with
// contradictory flip requirements.
PatchDecomposition extract_patches(const SurfaceMesh& mesh);

// Final facet orientation = original XOR internal flip XOR (patch sign ==
// -1). Throws SizeMismatch when signs.size() != number of patches.
SurfaceMesh apply_signs(const SurfaceMesh& mesh, const PatchDecomposition& decomp,
                        const SignAssignment& signs);

} // namespace windrep
