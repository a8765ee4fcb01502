#include "windrep/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "windrep/errors.hpp"

namespace windrep {

ScalarGrid sample_field(const SurfaceMesh& mesh, const PatchDecomposition& decomp,
                        const SignAssignment& signs, int resolution, double margin_factor) {
    if (mesh.vertices.empty() || mesh.facets.empty())
        throw EmptyMesh("sample_field: mesh has no facets");
    ScalarGrid grid;
    grid.spec = make_grid(mesh, resolution, margin_factor);
    grid.values.assign(grid.spec.num_cells(), 0.0);
    grid.mask.assign(grid.spec.num_cells(), false);
    const double eps = eps_singular(bbox_diagonal(mesh));

    for (int iz = 0; iz < grid.spec.counts[2]; ++iz) {
        for (int iy = 0; iy < grid.spec.counts[1]; ++iy) {
            for (int ix = 0; ix < grid.spec.counts[0]; ++ix) {
                const std::size_t idx = grid.spec.index(ix, iy, iz);
                const Vec3 c = grid.spec.cell_center(ix, iy, iz);
                if (distance_to_surface(mesh, c) < eps) {
                    grid.mask[idx] = true;
                    continue;
                }
                grid.values[idx] = winding_number(mesh, decomp, signs, c);
            }
        }
    }
    return grid;
}

namespace {

// Cold and warm ramp endpoints; every channel is monotone in the mapped
// parameter.
constexpr double kCold[3] = {30.0, 60.0, 255.0};
constexpr double kWarm[3] = {255.0, 230.0, 25.0};

} // namespace

std::vector<std::uint8_t> render(const ScalarGrid& grid, double clamp_min, double clamp_max) {
    if (!(clamp_min < clamp_max))
        throw BadClampRange("render: clamp_min must be below clamp_max");
    if (grid.spec.counts[2] != 1)
        throw SizeMismatch("render: image output requires a 2D grid");

    const int nx = grid.spec.counts[0];
    const int ny = grid.spec.counts[1];
    std::vector<std::uint8_t> out;
    char header[64];
    const int header_len = std::snprintf(header, sizeof header, "P6\n%d %d\n255\n", nx, ny);
    out.insert(out.end(), header, header + header_len);
    out.reserve(out.size() + static_cast<std::size_t>(nx) * ny * 3);

    for (int iy = ny - 1; iy >= 0; --iy) { // top image row = max y
        for (int ix = 0; ix < nx; ++ix) {
            const std::size_t idx = grid.spec.index(ix, iy, 0);
            if (grid.mask[idx]) {
                out.insert(out.end(), {0, 0, 0});
                continue;
            }
            double t = (grid.values[idx] - clamp_min) / (clamp_max - clamp_min);
            t = std::clamp(t, 0.0, 1.0);
            for (int ch = 0; ch < 3; ++ch) {
                const double v = kCold[ch] + t * (kWarm[ch] - kCold[ch]);
                out.push_back(static_cast<std::uint8_t>(std::lround(v)));
            }
        }
    }
    return out;
}

std::vector<double> laplacian_residual(const SurfaceMesh& mesh, const PatchDecomposition& decomp,
                                       const SignAssignment& signs,
                                       const std::vector<EvaluationPoint>& points, double step) {
    if (!(step > 0.0)) throw ParseError("laplacian_residual: step must be positive");
    std::vector<double> residuals;
    residuals.reserve(points.size());
    for (const EvaluationPoint& p : points) {
        if (distance_to_surface(mesh, p) < 2.0 * step)
            throw TooCloseToSurface("laplacian_residual: point within 2*step of the surface");
        residuals.push_back(discrete_laplacian(
            [&](const Vec3& q) { return winding_number(mesh, decomp, signs, q); }, p, step,
            mesh.dimension));
    }
    return residuals;
}

} // namespace windrep
