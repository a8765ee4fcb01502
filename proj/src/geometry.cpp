#include "windrep/geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "windrep/errors.hpp"

namespace windrep {

DimensionConstants dimension_constants(int dimension) {
    const double pi = 3.14159265358979323846;
    if (dimension == 2) return {2.0 * pi, pi};
    return {4.0 * pi, 2.0 * pi};
}

std::pair<Vec3, Vec3> bounding_box(const SurfaceMesh& mesh) {
    if (mesh.vertices.empty()) throw EmptyMesh("bounding_box: mesh has no vertices");
    Vec3 lo = mesh.vertices.front();
    Vec3 hi = lo;
    for (const Vec3& v : mesh.vertices) {
        lo.x = std::min(lo.x, v.x);
        lo.y = std::min(lo.y, v.y);
        lo.z = std::min(lo.z, v.z);
        hi.x = std::max(hi.x, v.x);
        hi.y = std::max(hi.y, v.y);
        hi.z = std::max(hi.z, v.z);
    }
    return {lo, hi};
}

double bbox_diagonal(const SurfaceMesh& mesh) {
    auto [lo, hi] = bounding_box(mesh);
    return norm(hi - lo);
}

double facet_measure(const SurfaceMesh& mesh, int facet_id) {
    const auto& f = mesh.facets[facet_id];
    const Vec3& a = mesh.vertices[f[0]];
    const Vec3& b = mesh.vertices[f[1]];
    if (mesh.dimension == 2) return norm(b - a);
    const Vec3& c = mesh.vertices[f[2]];
    return 0.5 * norm(cross(b - a, c - a));
}

Vec3 facet_front_normal(const SurfaceMesh& mesh, int facet_id) {
    const auto& f = mesh.facets[facet_id];
    const Vec3& a = mesh.vertices[f[0]];
    const Vec3& b = mesh.vertices[f[1]];
    if (mesh.dimension == 2) {
        Vec3 n = rotate_minus90(b - a);
        return n / norm(n);
    }
    const Vec3& c = mesh.vertices[f[2]];
    Vec3 n = cross(b - a, c - a);
    return n / norm(n);
}

Vec3 facet_centroid(const SurfaceMesh& mesh, int facet_id) {
    const auto& f = mesh.facets[facet_id];
    const Vec3& a = mesh.vertices[f[0]];
    const Vec3& b = mesh.vertices[f[1]];
    if (mesh.dimension == 2) return (a + b) / 2.0;
    const Vec3& c = mesh.vertices[f[2]];
    return (a + b + c) / 3.0;
}

void validate_mesh(const SurfaceMesh& mesh) {
    if (mesh.dimension != 2 && mesh.dimension != 3)
        throw ParseError("mesh dimension must be 2 or 3");
    const int arity = mesh.facet_arity();
    const int nv = static_cast<int>(mesh.vertices.size());
    for (std::size_t i = 0; i < mesh.facets.size(); ++i) {
        const auto& f = mesh.facets[i];
        for (int k = 0; k < arity; ++k) {
            if (f[k] < 0 || f[k] >= nv)
                throw IndexOutOfRange("facet " + std::to_string(i) + " references vertex " +
                                      std::to_string(f[k]) + " in a " + std::to_string(nv) +
                                      "-vertex mesh");
        }
        for (int k = 0; k < arity; ++k)
            for (int l = k + 1; l < arity; ++l)
                if (f[k] == f[l])
                    throw DegenerateFacet("facet " + std::to_string(i) + " repeats vertex " +
                                          std::to_string(f[k]));
    }
    if (mesh.facets.empty()) return;
    const double eps = eps_degenerate(bbox_diagonal(mesh));
    for (std::size_t i = 0; i < mesh.facets.size(); ++i) {
        const double m = facet_measure(mesh, static_cast<int>(i));
        if (m <= 0.0 || m < eps)
            throw DegenerateFacet("facet " + std::to_string(i) + " has measure " +
                                  std::to_string(m) + " below tolerance");
    }
}

SurfaceMesh make_mesh(int dimension, std::vector<Vec3> vertices,
                      std::vector<std::array<int, 3>> facets) {
    SurfaceMesh mesh;
    mesh.dimension = dimension;
    mesh.vertices = std::move(vertices);
    mesh.facets = std::move(facets);
    validate_mesh(mesh);
    return mesh;
}

SurfaceMesh flip_facet(const SurfaceMesh& mesh, int facet_id) {
    if (facet_id < 0 || facet_id >= static_cast<int>(mesh.facets.size()))
        throw IndexOutOfRange("flip_facet: facet " + std::to_string(facet_id));
    SurfaceMesh out = mesh;
    auto& f = out.facets[facet_id];
    if (mesh.dimension == 2)
        std::swap(f[0], f[1]);
    else
        std::swap(f[1], f[2]);
    return out;
}

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
    const Vec3 d = b - a;
    const double len2 = norm2(d);
    if (len2 == 0.0) return norm(p - a);
    double t = dot(p - a, d) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (a + t * d));
}

namespace {

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    // Project onto the triangle plane; if the projection's barycentric
    // coordinates are all nonnegative the foot is interior, otherwise the
    // nearest point lies on an edge.
    const Vec3 ab = b - a;
    const Vec3 ac = c - a;
    const Vec3 n = cross(ab, ac);
    const double n2 = norm2(n);
    if (n2 > 0.0) {
        const Vec3 ap = p - a;
        const double dist_plane = dot(ap, n) / std::sqrt(n2);
        const Vec3 foot = p - (dist_plane / std::sqrt(n2)) * n;
        const Vec3 af = foot - a;
        const double d00 = dot(ab, ab), d01 = dot(ab, ac), d11 = dot(ac, ac);
        const double d20 = dot(af, ab), d21 = dot(af, ac);
        const double denom = d00 * d11 - d01 * d01;
        const double v = (d11 * d20 - d01 * d21) / denom;
        const double w = (d00 * d21 - d01 * d20) / denom;
        if (v >= 0.0 && w >= 0.0 && v + w <= 1.0) return std::abs(dist_plane);
    }
    return std::min({point_segment_distance(p, a, b), point_segment_distance(p, b, c),
                     point_segment_distance(p, c, a)});
}

} // namespace

double distance_to_facet(const SurfaceMesh& mesh, int facet_id, const Vec3& p) {
    const auto& f = mesh.facets[facet_id];
    const Vec3& a = mesh.vertices[f[0]];
    const Vec3& b = mesh.vertices[f[1]];
    if (mesh.dimension == 2) return point_segment_distance(p, a, b);
    return point_triangle_distance(p, a, b, mesh.vertices[f[2]]);
}

double distance_to_facet_boundary(const SurfaceMesh& mesh, int facet_id, const Vec3& p) {
    const auto& f = mesh.facets[facet_id];
    const Vec3& a = mesh.vertices[f[0]];
    const Vec3& b = mesh.vertices[f[1]];
    if (mesh.dimension == 2) return std::min(norm(p - a), norm(p - b));
    const Vec3& c = mesh.vertices[f[2]];
    return std::min({point_segment_distance(p, a, b), point_segment_distance(p, b, c),
                     point_segment_distance(p, c, a)});
}

double distance_to_surface(const SurfaceMesh& mesh, const Vec3& p) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < mesh.facets.size(); ++f)
        best = std::min(best, distance_to_facet(mesh, static_cast<int>(f), p));
    return best;
}

GridSpec make_grid(const SurfaceMesh& mesh, int resolution, double margin_factor) {
    if (resolution < 2) throw ParseError("grid resolution must be at least 2");
    auto [lo, hi] = bounding_box(mesh);
    const Vec3 extent = hi - lo;
    const Vec3 center = (lo + hi) / 2.0;
    double max_extent = std::max(extent.x, extent.y);
    if (mesh.dimension == 3) max_extent = std::max(max_extent, extent.z);
    if (max_extent <= 0.0) max_extent = 1.0;
    const double side = margin_factor * max_extent;

    GridSpec grid;
    grid.dimension = mesh.dimension;
    grid.spacing = side / resolution;
    grid.counts = {resolution, resolution, mesh.dimension == 2 ? 1 : resolution};
    grid.origin = {center.x - side / 2.0, center.y - side / 2.0,
                   mesh.dimension == 2 ? 0.0 : center.z - side / 2.0};
    return grid;
}

} // namespace windrep
