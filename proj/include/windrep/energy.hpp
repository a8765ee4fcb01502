#pragma once

#include <vector>

#include "windrep/geometry.hpp"
#include "windrep/patching.hpp"

namespace windrep {

struct QuadratureConfig {
    // Gauss-Legendre order per subinterval (2D, clamped to [1,8]); selects
    // the per-subtriangle symmetric rule in 3D (>= 6 picks the 6-point
    // degree-4 rule, otherwise the interior 3-point rule).
    int base_points = 6;
    int refinement_levels = 8; // max ladder length, >= 2
    double convergence_tol = 1e-4;
    double divergence_threshold = 1e6;
};

struct QEntry {
    bool is_divergent = false;
    double value = 0.0; // finite value, meaningless when divergent
    int sign = 0;       // +1 or -1 when divergent

    static QEntry finite(double v) { return {false, v, 0}; }
    static QEntry divergent(int s) { return {true, 0.0, s}; }
};

// One run of the refinement ladder for a facet pair. Level l uses 2^l
// subdivisions of the integration facet; `values` holds the estimate at each
// level actually computed.
struct RefinementLadder {
    std::vector<double> values;
    bool converged = false;
    bool divergent = false;
    int divergence_sign = 0;
    double final_value = 0.0; // converged estimate
    double indicator = 0.0;   // divergence indicator at the stopping level
    int levels_used = 0;
};

// How an assembled entry was decided; kept for the energy report.
struct EntryDiagnostics {
    enum class Kind { diagonal, coincident_edge, converged, divergent_trend, unset };
    Kind kind = Kind::unset;
    int levels_used = 0;
};

struct QMatrix {
    int n = 0;
    std::vector<QEntry> entries;          // n*n, row-major, symmetric
    std::vector<EntryDiagnostics> info;   // n*n; empty when built by hand

    explicit QMatrix(int n_ = 0) : n(n_), entries(static_cast<std::size_t>(n_) * n_) {}
    QEntry& at(int i, int j) { return entries[static_cast<std::size_t>(i) * n + j]; }
    const QEntry& at(int i, int j) const { return entries[static_cast<std::size_t>(i) * n + j]; }
    void set_pair(int i, int j, QEntry e) { at(i, j) = e; at(j, i) = e; }
};

// Detects geometrically coincident boundary edges between two facets
// (segment endpoints in 2D, triangle edges in 3D, positions equal within
// eps). Returns 0 when none coincide, otherwise the divergence sign: -1 when
// the shared edge is traversed in opposite directions (compatible
// orientation), +1 when traversed in the same direction. Throws
// ConflictingDivergence when distinct shared edges disagree.
int coincident_edge_sign(const SurfaceMesh& mesh, int tau, int mu, double eps);

// Runs the refinement ladder for the surface-integral pair term without the
// coincident-edge fast path. Classifies the sequence as converged (relative
// change below convergence_tol), divergent (magnitudes growing monotonically
// with a non-decaying increment trend whose extrapolated magnitude exceeds
// divergence_threshold), or neither (all levels exhausted).
RefinementLadder pair_refinement_ladder(const SurfaceMesh& mesh, int tau, int mu,
                                        const QuadratureConfig& cfg);

// Interaction of facet pair (tau, mu): the normal flux of mu's angle
// gradient integrated over tau's front side, scaled by -1/total_angle with
// the domain-boundary normal pointing away from the domain. Facet pairs with
// a geometrically coincident edge short-circuit to Divergent. Throws
// NoConvergence when the ladder can classify the pair neither way.
QEntry pair_interaction(const SurfaceMesh& mesh, int tau, int mu,
                        const QuadratureConfig& cfg);

// Assembles the symmetric patch interaction matrix from pairwise facet
// interactions, using each facet's internally consistent reference
// orientation. Diagonals are Divergent(+1) by construction. An entry with
// any divergent summand is divergent with the first summand's sign;
// conflicting signs within one entry raise ConflictingDivergence.
QMatrix assemble_Q(const SurfaceMesh& mesh, const PatchDecomposition& decomp,
                   const QuadratureConfig& cfg);

// Surrogate magnitude standing in for an infinite entry when evaluating the
// diagonal-free energy: dominates every finite contribution.
double big_M(const QMatrix& Q);

// Diagonal-free energy: sum over unordered pairs i < j of s_i s_j Q_ij, with
// Divergent(sign) entries contributing s_i s_j * sign * big_M(Q).
double energy(const QMatrix& Q, const SignAssignment& signs);

// Independent volumetric cross-check of one off-diagonal entry: the dot
// product of the two patches' winding-number gradients summed over a regular
// grid (cells within exclusion_cells * spacing of any facet are skipped).
// Patch ids are 1-based. Throws CoincidentBoundaries when the patch
// boundaries geometrically coincide.
double volumetric_oracle(const SurfaceMesh& mesh, const PatchDecomposition& decomp,
                         int patch_i, int patch_j, int grid_resolution,
                         double margin_factor, double exclusion_cells);

} // namespace windrep
