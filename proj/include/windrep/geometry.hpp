#pragma once

#include <array>
#include <cmath>
#include <utility>
#include <vector>

namespace windrep {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_) : x(x_), y(y_) {}
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }

// In-plane rotation by -90 degrees: (x, y) -> (y, -x).
// Applied to a 2D segment direction it yields the front-side normal, so a
// counter-clockwise closed polygon has its front (outward) side facing away
// from the enclosed region and winding number +1 inside.
inline Vec3 rotate_minus90(const Vec3& v) { return {v.y, -v.x, 0.0}; }

// Indexed mesh of oriented facets: segments when dimension == 2 (third facet
// index is -1), triangles when dimension == 3. Vertex order defines the facet
// normal (3D right-hand rule; 2D direction rotated -90 degrees).
struct SurfaceMesh {
    int dimension = 3;
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> facets;

    int facet_arity() const { return dimension == 2 ? 2 : 3; }
    std::size_t num_facets() const { return facets.size(); }
};

// Full angle of a sphere around a point (2*pi in 2D, 4*pi in 3D) and the
// one-sided limit magnitude of a facet angle on the facet surface, which is
// always half of it.
struct DimensionConstants {
    double total_angle;
    double surface_jump;
};

DimensionConstants dimension_constants(int dimension);

// Validates all structural invariants (index ranges, no repeated vertices
// within a facet, facet measure at least eps_degenerate). Throws
// IndexOutOfRange or DegenerateFacet. Used by the loaders and by
// programmatic constructors.
void validate_mesh(const SurfaceMesh& mesh);

SurfaceMesh make_mesh(int dimension, std::vector<Vec3> vertices,
                      std::vector<std::array<int, 3>> facets);

// Tight axis-aligned bounding box over all vertices. Throws EmptyMesh.
std::pair<Vec3, Vec3> bounding_box(const SurfaceMesh& mesh);

double bbox_diagonal(const SurfaceMesh& mesh);

// Scale-relative tolerances.
inline double eps_degenerate(double bbox_diag) { return 1e-12 * bbox_diag; }
inline double eps_singular(double bbox_diag) { return 1e-9 * bbox_diag; }
inline double eps_coincident(double bbox_diag) { return 1e-9 * bbox_diag; }

// Length of a segment facet or area of a triangle facet.
double facet_measure(const SurfaceMesh& mesh, int facet_id);

// Unit front-side normal of a facet.
Vec3 facet_front_normal(const SurfaceMesh& mesh, int facet_id);

Vec3 facet_centroid(const SurfaceMesh& mesh, int facet_id);

// Reverses the facet's vertex order; returns a new mesh. Involution.
SurfaceMesh flip_facet(const SurfaceMesh& mesh, int facet_id);

// Distance from point p to the closed facet (segment or triangle).
double distance_to_facet(const SurfaceMesh& mesh, int facet_id, const Vec3& p);

// Distance from p to the facet's boundary: its endpoints in 2D, its three
// edge segments in 3D. This is where facet angles are undefined.
double distance_to_facet_boundary(const SurfaceMesh& mesh, int facet_id, const Vec3& p);

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b);

// Regular sampling grid: a square (2D) or cube (3D) of uniform cells
// centered on the mesh bounding box, side = margin_factor times the largest
// bbox extent, `resolution` cells along each active axis.
struct GridSpec {
    Vec3 origin; // corner of cell (0, 0, 0)
    double spacing = 0.0;
    std::array<int, 3> counts = {0, 0, 1}; // z count is 1 for 2D grids
    int dimension = 2;

    std::size_t num_cells() const {
        return static_cast<std::size_t>(counts[0]) * counts[1] * counts[2];
    }
    std::size_t index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(iz) * counts[1] + iy) * counts[0] + ix;
    }
    Vec3 cell_center(int ix, int iy, int iz) const {
        return {origin.x + (ix + 0.5) * spacing, origin.y + (iy + 0.5) * spacing,
                dimension == 2 ? 0.0 : origin.z + (iz + 0.5) * spacing};
    }
    double cell_volume() const {
        return dimension == 2 ? spacing * spacing : spacing * spacing * spacing;
    }
};

GridSpec make_grid(const SurfaceMesh& mesh, int resolution, double margin_factor);

// Distance from p to the nearest facet of the mesh.
double distance_to_surface(const SurfaceMesh& mesh, const Vec3& p);

} // namespace windrep
