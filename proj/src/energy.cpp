#include "windrep/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "windrep/errors.hpp"
#include "windrep/winding.hpp"

namespace windrep {

namespace {

struct Gauss {
    const double* nodes;   // on [-1, 1]
    const double* weights; // summing to 2
    int count;
};

// Abscissas and weights of the n-point Gauss-Legendre rules, n = 1..8.
const double kN1[] = {0.0};
const double kW1[] = {2.0};
const double kN2[] = {-0.5773502691896257, 0.5773502691896257};
const double kW2[] = {1.0, 1.0};
const double kN3[] = {-0.7745966692414834, 0.0, 0.7745966692414834};
const double kW3[] = {0.5555555555555556, 0.8888888888888888, 0.5555555555555556};
const double kN4[] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                      0.8611363115940526};
const double kW4[] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                      0.3478548451374538};
const double kN5[] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                      0.9061798459386640};
const double kW5[] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                      0.4786286704993665, 0.2369268850561891};
const double kN6[] = {-0.9324695142031521, -0.6612093864662645, -0.2386191860831969,
                      0.2386191860831969,  0.6612093864662645,  0.9324695142031521};
const double kW6[] = {0.1713244923791704, 0.3607615730481386, 0.4679139345726910,
                      0.4679139345726910, 0.3607615730481386, 0.1713244923791704};
const double kN7[] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
                      0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
const double kW7[] = {0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
                      0.4179591836734694, 0.3818300505051189, 0.2797053914892766,
                      0.1294849661688697};
const double kN8[] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                      -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                      0.7966664774136267,  0.9602898564975363};
const double kW8[] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                      0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                      0.2223810344533745, 0.1012285362903763};

Gauss gauss_rule(int order) {
    switch (std::clamp(order, 1, 8)) {
        case 1: return {kN1, kW1, 1};
        case 2: return {kN2, kW2, 2};
        case 3: return {kN3, kW3, 3};
        case 4: return {kN4, kW4, 4};
        case 5: return {kN5, kW5, 5};
        case 6: return {kN6, kW6, 6};
        case 7: return {kN7, kW7, 7};
        default: return {kN8, kW8, 8};
    }
}

// Symmetric triangle rules in barycentric coordinates, weights summing to 1.
// All points are strictly interior so nodes never touch the facet boundary.
struct TriRule {
    const double (*bary)[3];
    const double* weights;
    int count;
};

const double kTri3B[][3] = {{2.0 / 3, 1.0 / 6, 1.0 / 6},
                            {1.0 / 6, 2.0 / 3, 1.0 / 6},
                            {1.0 / 6, 1.0 / 6, 2.0 / 3}};
const double kTri3W[] = {1.0 / 3, 1.0 / 3, 1.0 / 3};

// Degree-4 six-point rule (Cowper / Strang-Fix).
const double kTri6B[][3] = {
    {0.816847572980459, 0.091576213509771, 0.091576213509771},
    {0.091576213509771, 0.816847572980459, 0.091576213509771},
    {0.091576213509771, 0.091576213509771, 0.816847572980459},
    {0.108103018168070, 0.445948490915965, 0.445948490915965},
    {0.445948490915965, 0.108103018168070, 0.445948490915965},
    {0.445948490915965, 0.445948490915965, 0.108103018168070}};
const double kTri6W[] = {0.109951743655322, 0.109951743655322, 0.109951743655322,
                         0.223381589678011, 0.223381589678011, 0.223381589678011};

TriRule tri_rule(int base_points) {
    if (base_points < 6) return {kTri3B, kTri3W, 3};
    return {kTri6B, kTri6W, 6};
}

// Quadrature estimate of the pair integrand over tau at one refinement
// level: flux of mu's angle gradient through tau's front side, prefactor
// 1/total_angle (the -1/total_angle of the reduction times the
// domain-outgoing normal on the front side, which is the negated facet
// normal).
double integrate_level(const SurfaceMesh& mesh, int tau, int mu, int level,
                       const QuadratureConfig& cfg) {
    const Vec3 nrm = facet_front_normal(mesh, tau);
    const auto& f = mesh.facets[tau];
    const Vec3& a = mesh.vertices[f[0]];
    const Vec3& b = mesh.vertices[f[1]];
    const int subdiv = 1 << level;
    double acc = 0.0;

    if (mesh.dimension == 2) {
        const Gauss rule = gauss_rule(cfg.base_points);
        const Vec3 d = b - a;
        const double half_h = 0.5 / subdiv; // half subinterval width in parameter space
        const double seg_len = norm(d);
        for (int m = 0; m < subdiv; ++m) {
            const double t_mid = (m + 0.5) / subdiv;
            for (int q = 0; q < rule.count; ++q) {
                const double t = t_mid + half_h * rule.nodes[q];
                const Vec3 p = a + t * d;
                const double flux = dot(detail::facet_angle_gradient_raw(mesh, mu, p), nrm);
                acc += rule.weights[q] * half_h * seg_len * flux;
            }
        }
    } else {
        const TriRule rule = tri_rule(cfg.base_points);
        const Vec3& c = mesh.vertices[f[2]];
        const double sub_area = facet_measure(mesh, tau) / (subdiv * subdiv);
        const Vec3 eb = (b - a) / subdiv;
        const Vec3 ec = (c - a) / subdiv;
        for (int i = 0; i < subdiv; ++i) {
            for (int j = 0; j < subdiv - i; ++j) {
                const Vec3 p0 = a + static_cast<double>(i) * eb + static_cast<double>(j) * ec;
                // Upward subtriangle (p0, p0+eb, p0+ec); downward partner
                // (p0+eb, p0+eb+ec, p0+ec) exists below the diagonal.
                for (int up = 0; up < (j < subdiv - i - 1 ? 2 : 1); ++up) {
                    Vec3 v0 = p0, v1 = p0 + eb, v2 = p0 + ec;
                    if (up == 1) {
                        v0 = p0 + eb;
                        v1 = p0 + eb + ec;
                        v2 = p0 + ec;
                    }
                    for (int q = 0; q < rule.count; ++q) {
                        const Vec3 p = rule.bary[q][0] * v0 + rule.bary[q][1] * v1 +
                                       rule.bary[q][2] * v2;
                        const double flux =
                            dot(detail::facet_angle_gradient_raw(mesh, mu, p), nrm);
                        acc += rule.weights[q] * sub_area * flux;
                    }
                }
            }
        }
    }
    return acc / dimension_constants(mesh.dimension).total_angle;
}

bool close(const Vec3& a, const Vec3& b, double eps) { return norm(a - b) < eps; }

void merge_sign(int& current, int candidate, const char* what) {
    if (candidate == 0) return;
    if (current == 0)
        current = candidate;
    else if (current != candidate)
        throw ConflictingDivergence(std::string(what) +
                                    ": divergent contributions of opposite sign");
}

} // namespace

int coincident_edge_sign(const SurfaceMesh& mesh, int tau, int mu, double eps) {
    const auto& ft = mesh.facets[tau];
    const auto& fm = mesh.facets[mu];
    int sign = 0;
    if (mesh.dimension == 2) {
        // A segment's boundary is its two endpoints; roles are tail (index 0)
        // and head (index 1). Same role at a shared position means the two
        // segments run through it in the same direction.
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                if (!close(mesh.vertices[ft[i]], mesh.vertices[fm[j]], eps)) continue;
                merge_sign(sign, i == j ? 1 : -1, "coincident endpoints");
            }
        }
    } else {
        for (int i = 0; i < 3; ++i) {
            const Vec3& a1 = mesh.vertices[ft[i]];
            const Vec3& b1 = mesh.vertices[ft[(i + 1) % 3]];
            for (int j = 0; j < 3; ++j) {
                const Vec3& a2 = mesh.vertices[fm[j]];
                const Vec3& b2 = mesh.vertices[fm[(j + 1) % 3]];
                if (close(a1, a2, eps) && close(b1, b2, eps))
                    merge_sign(sign, 1, "coincident edges");
                else if (close(a1, b2, eps) && close(b1, a2, eps))
                    merge_sign(sign, -1, "coincident edges");
            }
        }
    }
    return sign;
}

RefinementLadder pair_refinement_ladder(const SurfaceMesh& mesh, int tau, int mu,
                                        const QuadratureConfig& cfg) {
    RefinementLadder ladder;
    const int max_levels = std::max(cfg.refinement_levels, 2);
    const double floor = 1e-12 * std::max(1.0, bbox_diagonal(mesh));
    const double huge = std::numeric_limits<double>::infinity();

    for (int level = 0; level < max_levels; ++level) {
        const double v = integrate_level(mesh, tau, mu, level, cfg);
        ladder.levels_used = level + 1;

        if (!std::isfinite(v)) {
            // A node landed on a singular line. The integral is divergent;
            // take the sign from the value itself or the preceding trend.
            ladder.divergent = true;
            ladder.indicator = huge;
            if (std::isinf(v))
                ladder.divergence_sign = v > 0 ? 1 : -1;
            else if (!ladder.values.empty())
                ladder.divergence_sign = ladder.values.back() >= 0 ? 1 : -1;
            else
                ladder.divergence_sign = 1;
            ladder.values.push_back(v);
            return ladder;
        }
        ladder.values.push_back(v);

        const std::size_t k = ladder.values.size();
        if (k >= 2) {
            const double delta = ladder.values[k - 1] - ladder.values[k - 2];
            if (std::abs(delta) <= cfg.convergence_tol * std::max(std::abs(v), floor)) {
                ladder.converged = true;
                ladder.final_value = v;
                return ladder;
            }
        }
        if (k >= 4) {
            const double d0 = ladder.values[k - 3] - ladder.values[k - 4];
            const double d1 = ladder.values[k - 2] - ladder.values[k - 3];
            const double d2 = ladder.values[k - 1] - ladder.values[k - 2];
            const bool monotone = std::abs(ladder.values[k - 1]) > std::abs(ladder.values[k - 2]) &&
                                  std::abs(ladder.values[k - 2]) > std::abs(ladder.values[k - 3]) &&
                                  std::abs(ladder.values[k - 3]) > std::abs(ladder.values[k - 4]);
            if (monotone && d1 * d2 > 0.0 && d0 * d1 > 0.0) {
                // Geometric extrapolation of where the sequence is heading:
                // for increments decaying with ratio r < 1 this is the usual
                // tail bound, for a non-decaying trend it blows up, which is
                // exactly the signature of a divergent integral (the true
                // divergence here is logarithmic, so the raw estimates grow
                // without bound but slowly).
                const double r = d2 / d1;
                const double ind =
                    r >= 1.0 ? huge : std::abs(v) + std::abs(d2) * r / (1.0 - r);
                ladder.indicator = std::max(ladder.indicator, ind);
                if (ind > cfg.divergence_threshold) {
                    ladder.divergent = true;
                    ladder.divergence_sign = v >= 0 ? 1 : -1;
                    return ladder;
                }
            }
        }
    }
    return ladder; // neither converged nor divergent
}

QEntry pair_interaction(const SurfaceMesh& mesh, int tau, int mu, const QuadratureConfig& cfg) {
    const int nf = static_cast<int>(mesh.facets.size());
    if (tau < 0 || tau >= nf || mu < 0 || mu >= nf)
        throw IndexOutOfRange("pair_interaction: facet out of range");
    const double eps = eps_coincident(bbox_diagonal(mesh));
    if (const int s = coincident_edge_sign(mesh, tau, mu, eps); s != 0)
        return QEntry::divergent(s);
    const RefinementLadder ladder = pair_refinement_ladder(mesh, tau, mu, cfg);
    if (ladder.converged) return QEntry::finite(ladder.final_value);
    if (ladder.divergent) return QEntry::divergent(ladder.divergence_sign);
    throw NoConvergence("pair_interaction(" + std::to_string(tau) + ", " + std::to_string(mu) +
                        "): neither converged nor clearly divergent after " +
                        std::to_string(ladder.levels_used) + " levels");
}

QMatrix assemble_Q(const SurfaceMesh& mesh, const PatchDecomposition& decomp,
                   const QuadratureConfig& cfg) {
    const int n = static_cast<int>(decomp.num_patches());
    QMatrix Q(n);
    Q.info.resize(static_cast<std::size_t>(n) * n);

    // All interactions are taken in the internally consistent reference
    // orientation.
    const SurfaceMesh ref = apply_signs(mesh, decomp, SignAssignment::all_plus(decomp.num_patches()));
    const double eps = eps_coincident(mesh.facets.empty() ? 1.0 : bbox_diagonal(mesh));

    for (int i = 0; i < n; ++i) {
        Q.at(i, i) = QEntry::divergent(1);
        Q.info[static_cast<std::size_t>(i) * n + i] = {EntryDiagnostics::Kind::diagonal, 0};
    }

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double finite_sum = 0.0;
            int div_sign = 0;
            int levels_max = 0;
            bool any_coincident = false;
            const std::string label =
                "Q(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
            for (int tau : decomp.patches[i].facet_ids) {
                for (int mu : decomp.patches[j].facet_ids) {
                    const int cs = coincident_edge_sign(ref, tau, mu, eps);
                    if (cs != 0) {
                        merge_sign(div_sign, cs, label.c_str());
                        any_coincident = true;
                        continue;
                    }
                    // Once the entry is known divergent the finite part is
                    // immaterial; only coincident checks continue above.
                    if (div_sign != 0) continue;
                    const RefinementLadder ladder = pair_refinement_ladder(ref, tau, mu, cfg);
                    levels_max = std::max(levels_max, ladder.levels_used);
                    if (ladder.converged) {
                        finite_sum += ladder.final_value;
                    } else if (ladder.divergent) {
                        merge_sign(div_sign, ladder.divergence_sign, label.c_str());
                    } else {
                        throw NoConvergence(label + ": facet pair (" + std::to_string(tau) +
                                            ", " + std::to_string(mu) +
                                            ") did not converge; raise refinement_levels");
                    }
                }
            }
            EntryDiagnostics diag;
            diag.levels_used = levels_max;
            if (div_sign != 0) {
                Q.set_pair(i, j, QEntry::divergent(div_sign));
                diag.kind = any_coincident ? EntryDiagnostics::Kind::coincident_edge
                                           : EntryDiagnostics::Kind::divergent_trend;
            } else {
                Q.set_pair(i, j, QEntry::finite(finite_sum));
                diag.kind = EntryDiagnostics::Kind::converged;
            }
            Q.info[static_cast<std::size_t>(i) * n + j] = diag;
            Q.info[static_cast<std::size_t>(j) * n + i] = diag;
        }
    }
    return Q;
}

double big_M(const QMatrix& Q) {
    double sum = 0.0;
    for (int i = 0; i < Q.n; ++i)
        for (int j = i + 1; j < Q.n; ++j)
            if (!Q.at(i, j).is_divergent) sum += std::abs(Q.at(i, j).value);
    return 10.0 * sum + 1.0;
}

double energy(const QMatrix& Q, const SignAssignment& signs) {
    if (static_cast<int>(signs.signs.size()) != Q.n)
        throw SizeMismatch("energy: " + std::to_string(signs.signs.size()) + " signs for n = " +
                           std::to_string(Q.n));
    const double M = big_M(Q);
    double e = 0.0;
    for (int i = 0; i < Q.n; ++i) {
        for (int j = i + 1; j < Q.n; ++j) {
            const QEntry& q = Q.at(i, j);
            const double contribution = q.is_divergent ? q.sign * M : q.value;
            e += signs.signs[i] * signs.signs[j] * contribution;
        }
    }
    return e;
}

double volumetric_oracle(const SurfaceMesh& mesh, const PatchDecomposition& decomp,
                         int patch_i, int patch_j, int grid_resolution, double margin_factor,
                         double exclusion_cells) {
    const int n = static_cast<int>(decomp.num_patches());
    if (patch_i < 1 || patch_i > n || patch_j < 1 || patch_j > n || patch_i == patch_j)
        throw SizeMismatch("volumetric_oracle: invalid patch ids");
    const Patch& pi = decomp.patches[patch_i - 1];
    const Patch& pj = decomp.patches[patch_j - 1];

    const SurfaceMesh ref = apply_signs(mesh, decomp, SignAssignment::all_plus(decomp.num_patches()));
    const double eps = eps_coincident(bbox_diagonal(ref));
    for (int tau : pi.facet_ids)
        for (int mu : pj.facet_ids)
            if (coincident_edge_sign(ref, tau, mu, eps) != 0)
                throw CoincidentBoundaries("volumetric_oracle: patch boundaries coincide, "
                                           "the entry is infinite");

    // Internal flips are baked into ref, so both patch gradients are taken
    // with no flips.
    Patch pi_ref = pi, pj_ref = pj;
    std::fill(pi_ref.internal_flips.begin(), pi_ref.internal_flips.end(), false);
    std::fill(pj_ref.internal_flips.begin(), pj_ref.internal_flips.end(), false);

    const GridSpec grid = make_grid(ref, grid_resolution, margin_factor);
    const double exclusion = exclusion_cells * grid.spacing;
    double acc = 0.0;
    for (int iz = 0; iz < grid.counts[2]; ++iz) {
        for (int iy = 0; iy < grid.counts[1]; ++iy) {
            for (int ix = 0; ix < grid.counts[0]; ++ix) {
                const Vec3 c = grid.cell_center(ix, iy, iz);
                if (distance_to_surface(ref, c) < exclusion) continue;
                acc += dot(patch_winding_gradient(ref, pi_ref, c),
                           patch_winding_gradient(ref, pj_ref, c));
            }
        }
    }
    return acc * grid.cell_volume();
}

} // namespace windrep
