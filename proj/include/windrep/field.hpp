#pragma once

#include <cstdint>
#include <vector>

#include "windrep/geometry.hpp"
#include "windrep/winding.hpp"

namespace windrep {

// Regular grid of sampled winding numbers. Cells whose center lies within
// eps_singular of the surface are masked; their value slot holds 0 and must
// not be interpreted.
struct ScalarGrid {
    GridSpec spec;
    std::vector<double> values; // row-major per GridSpec::index
    std::vector<bool> mask;     // true = near surface, value invalid
};

// Samples the winding number at the centers of a square (2D) or cubic (3D)
// grid covering the bounding box scaled by margin_factor.
ScalarGrid sample_field(const SurfaceMesh& mesh, const PatchDecomposition& decomp,
                        const SignAssignment& signs, int resolution, double margin_factor);

// Renders a 2D grid as a binary PPM (P6, maxval 255). Values map affinely
// from [clamp_min, clamp_max] onto a cold-to-warm ramp with per-channel
// monotone interpolation; out-of-range values saturate and masked cells are
// black. Rows run top to bottom (decreasing y).
std::vector<std::uint8_t> render(const ScalarGrid& grid, double clamp_min, double clamp_max);

// Central-stencil discrete Laplacian (5-point in 2D, 7-point in 3D) of an
// arbitrary field function; exact on affine functions up to rounding.
template <typename F>
double discrete_laplacian(F&& f, const Vec3& p, double step, int dimension) {
    double acc = -2.0 * dimension * f(p);
    acc += f({p.x + step, p.y, p.z}) + f({p.x - step, p.y, p.z});
    acc += f({p.x, p.y + step, p.z}) + f({p.x, p.y - step, p.z});
    if (dimension == 3) acc += f({p.x, p.y, p.z + step}) + f({p.x, p.y, p.z - step});
    return acc / (step * step);
}

// Discrete Laplacian of the winding number at each point. Throws
// TooCloseToSurface for points nearer than 2 * step to any facet.
std::vector<double> laplacian_residual(const SurfaceMesh& mesh, const PatchDecomposition& decomp,
                                       const SignAssignment& signs,
                                       const std::vector<EvaluationPoint>& points, double step);

} // namespace windrep
