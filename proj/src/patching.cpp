#include "windrep/patching.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

#include "windrep/errors.hpp"

namespace windrep {

namespace {

// One facet-side incidence of an undirected edge. `forward` records whether
// the facet traverses the edge from its lower-index endpoint to the higher
// one (3D) or has the vertex as its head (2D).
struct Incidence {
    int facet;
    bool forward;
};

using EdgeKey = std::array<int, 2>; // (lo, hi) in 3D, (vertex, -1) in 2D

std::map<EdgeKey, std::vector<Incidence>> build_edge_map(const SurfaceMesh& mesh) {
    std::map<EdgeKey, std::vector<Incidence>> edges;
    const int nf = static_cast<int>(mesh.facets.size());
    for (int f = 0; f < nf; ++f) {
        const auto& fac = mesh.facets[f];
        if (mesh.dimension == 2) {
            // Tail vertex: forward = false, head vertex: forward = true.
            edges[{fac[0], -1}].push_back({f, false});
            edges[{fac[1], -1}].push_back({f, true});
        } else {
            for (int k = 0; k < 3; ++k) {
                const int a = fac[k];
                const int b = fac[(k + 1) % 3];
                edges[{std::min(a, b), std::max(a, b)}].push_back({f, a < b});
            }
        }
    }
    return edges;
}

} // namespace

PatchDecomposition extract_patches(const SurfaceMesh& mesh) {
    const auto edges = build_edge_map(mesh);
    const int nf = static_cast<int>(mesh.facets.size());

    PatchDecomposition decomp;
    // facet -> list of (neighbor facet, flip parity). Parity true means the
    // two facets need *equal* flip states to be consistent... see below.
    std::vector<std::vector<std::pair<int, bool>>> adjacency(nf);
    for (const auto& [key, inc] : edges) {
        if (inc.size() > 2) {
            decomp.nonmanifold_edges.push_back({key[0], key[1]});
            continue; // adjacency severed here
        }
        if (inc.size() == 2) {
            // Consistent orientation requires the shared edge to be
            // traversed in opposite directions, so the needed relation is
            // flip_b = flip_a XOR (forward_a == forward_b).
            const bool same_dir = inc[0].forward == inc[1].forward;
            adjacency[inc[0].facet].push_back({inc[1].facet, same_dir});
            adjacency[inc[1].facet].push_back({inc[0].facet, same_dir});
        }
    }

    std::vector<int> patch_of(nf, -1);
    std::vector<bool> flip_of(nf, false);
    for (int seed = 0; seed < nf; ++seed) {
        if (patch_of[seed] >= 0) continue;
        const int pid = static_cast<int>(decomp.patches.size());
        Patch patch;
        patch.id = pid + 1;
        patch_of[seed] = pid;
        flip_of[seed] = false; // anchor keeps its original orientation
        std::deque<int> queue = {seed};
        while (!queue.empty()) {
            const int f = queue.front();
            queue.pop_front();
            patch.facet_ids.push_back(f);
            for (const auto& [g, same_dir] : adjacency[f]) {
                const bool flip_g = flip_of[f] ^ same_dir;
                if (patch_of[g] < 0) {
                    patch_of[g] = pid;
                    flip_of[g] = flip_g;
                    queue.push_back(g);
                } else if (flip_of[g] != flip_g) {
                    throw NonOrientablePatch("patch " + std::to_string(pid + 1) +
                                             " is non-orientable: facet " + std::to_string(g) +
                                             " has contradictory flip requirements");
                }
            }
        }
        std::sort(patch.facet_ids.begin(), patch.facet_ids.end());
        patch.internal_flips.reserve(patch.facet_ids.size());
        for (int f : patch.facet_ids) patch.internal_flips.push_back(flip_of[f]);
        decomp.patches.push_back(std::move(patch));
    }
    return decomp;
}

SurfaceMesh apply_signs(const SurfaceMesh& mesh, const PatchDecomposition& decomp,
                        const SignAssignment& signs) {
    if (signs.signs.size() != decomp.num_patches())
        throw SizeMismatch("apply_signs: " + std::to_string(signs.signs.size()) +
                           " signs for " + std::to_string(decomp.num_patches()) + " patches");
    SurfaceMesh out = mesh;
    for (const Patch& p : decomp.patches) {
        const bool patch_flip = signs.signs[p.id - 1] == -1;
        for (std::size_t k = 0; k < p.facet_ids.size(); ++k) {
            if (p.internal_flips[k] == patch_flip) continue; // XOR is false
            auto& f = out.facets[p.facet_ids[k]];
            if (mesh.dimension == 2)
                std::swap(f[0], f[1]);
            else
                std::swap(f[1], f[2]);
        }
    }
    return out;
}

} // namespace windrep
