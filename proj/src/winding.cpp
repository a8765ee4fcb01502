#include "windrep/winding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "windrep/errors.hpp"

namespace windrep {

namespace detail {

// Signed angle from ray (a - p) to ray (b - p). Positive when p lies on the
// segment's back side (front normal = direction rotated by -90 degrees), so
// the angles of a counter-clockwise polygon sum to +2*pi inside.
double segment_angle(const Vec3& a, const Vec3& b, const Vec3& p) {
    const double ux = a.x - p.x, uy = a.y - p.y;
    const double vx = b.x - p.x, vy = b.y - p.y;
    return std::atan2(ux * vy - uy * vx, ux * vx + uy * vy);
}

// d/dp of the angle above. Writing the angle as atan2 of the endpoint rays,
// each endpoint contributes the perpendicular of its ray over its squared
// length; the result has no branch cut and is smooth across the segment
// interior.
Vec3 segment_angle_gradient(const Vec3& a, const Vec3& b, const Vec3& p) {
    const double ux = a.x - p.x, uy = a.y - p.y;
    const double vx = b.x - p.x, vy = b.y - p.y;
    const double u2 = ux * ux + uy * uy;
    const double v2 = vx * vx + vy * vy;
    return {vy / v2 - uy / u2, -vx / v2 + ux / u2, 0.0};
}

// Van Oosterom & Strackee, "The Solid Angle of a Plane Triangle",
// IEEE Trans. Biomed. Eng. 30(2), 1983. Negated ordering so that the value
// is positive on the back side of an (a, b, c) right-hand-rule triangle.
double triangle_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& p) {
    const Vec3 ra = a - p;
    const Vec3 rb = b - p;
    const Vec3 rc = c - p;
    const double la = norm(ra), lb = norm(rb), lc = norm(rc);
    const double numerator = dot(ra, cross(rb, rc));
    const double denominator =
        la * lb * lc + dot(ra, rb) * lc + dot(rb, rc) * la + dot(rc, ra) * lb;
    return 2.0 * std::atan2(numerator, denominator);
}

namespace {

// Contribution of one directed boundary edge to the solid-angle gradient
// (the Biot-Savart field of a straight segment):
//   (r_a x r_b) (|r_a| + |r_b|) / (|r_a| |r_b| (|r_a| |r_b| + r_a . r_b))
Vec3 edge_gradient_term(const Vec3& ea, const Vec3& eb, const Vec3& p) {
    const Vec3 ra = ea - p;
    const Vec3 rb = eb - p;
    const double la = norm(ra), lb = norm(rb);
    const double denom = la * lb * (la * lb + dot(ra, rb));
    return cross(ra, rb) * ((la + lb) / denom);
}

} // namespace

Vec3 triangle_solid_angle_gradient(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& p) {
    return edge_gradient_term(a, b, p) + edge_gradient_term(b, c, p) +
           edge_gradient_term(c, a, p);
}

namespace {

// Evaluating on the index-sorted vertex order and multiplying by the
// permutation parity makes flipping a facet negate its angle bit-exactly
// (a direct evaluation would round the reordered sums differently).
struct CanonicalFacet {
    int v[3];
    double parity;
};

CanonicalFacet canonicalize(const std::array<int, 3>& f, int arity) {
    CanonicalFacet c{{f[0], f[1], f[2]}, 1.0};
    if (arity == 2) {
        if (c.v[0] > c.v[1]) {
            std::swap(c.v[0], c.v[1]);
            c.parity = -1.0;
        }
        return c;
    }
    if (c.v[0] > c.v[1]) { std::swap(c.v[0], c.v[1]); c.parity = -c.parity; }
    if (c.v[1] > c.v[2]) { std::swap(c.v[1], c.v[2]); c.parity = -c.parity; }
    if (c.v[0] > c.v[1]) { std::swap(c.v[0], c.v[1]); c.parity = -c.parity; }
    return c;
}

} // namespace

double facet_angle_raw(const SurfaceMesh& mesh, int facet_id, const Vec3& p) {
    const CanonicalFacet c = canonicalize(mesh.facets[facet_id], mesh.facet_arity());
    if (mesh.dimension == 2)
        return c.parity * segment_angle(mesh.vertices[c.v[0]], mesh.vertices[c.v[1]], p);
    return c.parity * triangle_solid_angle(mesh.vertices[c.v[0]], mesh.vertices[c.v[1]],
                                           mesh.vertices[c.v[2]], p);
}

Vec3 facet_angle_gradient_raw(const SurfaceMesh& mesh, int facet_id, const Vec3& p) {
    const CanonicalFacet c = canonicalize(mesh.facets[facet_id], mesh.facet_arity());
    if (mesh.dimension == 2)
        return c.parity * segment_angle_gradient(mesh.vertices[c.v[0]], mesh.vertices[c.v[1]], p);
    return c.parity * triangle_solid_angle_gradient(mesh.vertices[c.v[0]], mesh.vertices[c.v[1]],
                                                    mesh.vertices[c.v[2]], p);
}

} // namespace detail

namespace {

void check_not_singular(const SurfaceMesh& mesh, int facet_id, const Vec3& p) {
    if (facet_id < 0 || facet_id >= static_cast<int>(mesh.facets.size()))
        throw IndexOutOfRange("facet " + std::to_string(facet_id));
    const double eps = eps_singular(bbox_diagonal(mesh));
    if (distance_to_facet_boundary(mesh, facet_id, p) < eps)
        throw SingularEvaluation("evaluation point within eps_singular of facet " +
                                 std::to_string(facet_id) + " boundary");
}

} // namespace

double facet_angle(const SurfaceMesh& mesh, int facet_id, const EvaluationPoint& p) {
    check_not_singular(mesh, facet_id, p);
    return detail::facet_angle_raw(mesh, facet_id, p);
}

Vec3 facet_angle_gradient(const SurfaceMesh& mesh, int facet_id, const EvaluationPoint& p) {
    check_not_singular(mesh, facet_id, p);
    return detail::facet_angle_gradient_raw(mesh, facet_id, p);
}

double winding_number(const SurfaceMesh& mesh, const PatchDecomposition& decomp,
                      const SignAssignment& signs, const EvaluationPoint& p) {
    if (signs.signs.size() != decomp.num_patches())
        throw SizeMismatch("winding_number: sign count does not match patch count");
    const double eps = eps_singular(bbox_diagonal(mesh));
    double total = 0.0;
    for (const Patch& patch : decomp.patches) {
        double patch_sum = 0.0;
        for (std::size_t k = 0; k < patch.facet_ids.size(); ++k) {
            const int f = patch.facet_ids[k];
            if (distance_to_facet_boundary(mesh, f, p) < eps)
                throw SingularEvaluation("winding_number: point on facet boundary");
            const double theta = detail::facet_angle_raw(mesh, f, p);
            patch_sum += patch.internal_flips[k] ? -theta : theta;
        }
        total += signs.signs[patch.id - 1] * patch_sum;
    }
    return total / dimension_constants(mesh.dimension).total_angle;
}

Vec3 patch_winding_gradient(const SurfaceMesh& mesh, const Patch& patch,
                            const EvaluationPoint& p) {
    Vec3 grad;
    for (std::size_t k = 0; k < patch.facet_ids.size(); ++k) {
        const Vec3 g = detail::facet_angle_gradient_raw(mesh, patch.facet_ids[k], p);
        grad += patch.internal_flips[k] ? -1.0 * g : g;
    }
    return grad / dimension_constants(mesh.dimension).total_angle;
}

Vec3 winding_gradient(const SurfaceMesh& mesh, const PatchDecomposition& decomp,
                      const SignAssignment& signs, const EvaluationPoint& p) {
    if (signs.signs.size() != decomp.num_patches())
        throw SizeMismatch("winding_gradient: sign count does not match patch count");
    const double eps = eps_singular(bbox_diagonal(mesh));
    for (std::size_t f = 0; f < mesh.facets.size(); ++f)
        if (distance_to_facet_boundary(mesh, static_cast<int>(f), p) < eps)
            throw SingularEvaluation("winding_gradient: point on facet boundary");
    Vec3 grad;
    for (const Patch& patch : decomp.patches)
        grad += static_cast<double>(signs.signs[patch.id - 1]) *
                patch_winding_gradient(mesh, patch, p);
    return grad;
}

} // namespace windrep
