#pragma once

#include "windrep/geometry.hpp"
#include "windrep/patching.hpp"

namespace windrep {

using EvaluationPoint = Vec3;

// Signed angle subtended by a facet at p: radians in 2D, steradians in 3D.
// Positive on the facet's back side; approaching the facet interior from the
// front side the value tends to -surface_jump. Throws SingularEvaluation
// when p is within eps_singular of the facet's boundary, where the angle is
// undefined.
double facet_angle(const SurfaceMesh& mesh, int facet_id, const EvaluationPoint& p);

// Analytic spatial gradient of facet_angle. Continuous across the facet
// interior (equal value on both sides); magnitude grows without bound near
// the facet's boundary.
Vec3 facet_angle_gradient(const SurfaceMesh& mesh, int facet_id, const EvaluationPoint& p);

// Winding number for a sign assignment: (1/total_angle) * sum over patches
// of s_i times the angle sum of the patch in its internally consistent
// reference orientation.
double winding_number(const SurfaceMesh& mesh, const PatchDecomposition& decomp,
                      const SignAssignment& signs, const EvaluationPoint& p);

Vec3 winding_gradient(const SurfaceMesh& mesh, const PatchDecomposition& decomp,
                      const SignAssignment& signs, const EvaluationPoint& p);

// Gradient of one patch's winding number (sign +1, internal flips applied).
Vec3 patch_winding_gradient(const SurfaceMesh& mesh, const Patch& patch,
                            const EvaluationPoint& p);

namespace detail {

// Unguarded kernels: no singularity check, angles always for the stored
// vertex order. Used by the quadrature loops, which evaluate on facet
// interiors by construction.
double segment_angle(const Vec3& a, const Vec3& b, const Vec3& p);
Vec3 segment_angle_gradient(const Vec3& a, const Vec3& b, const Vec3& p);
double triangle_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& p);
Vec3 triangle_solid_angle_gradient(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& p);
double facet_angle_raw(const SurfaceMesh& mesh, int facet_id, const Vec3& p);
Vec3 facet_angle_gradient_raw(const SurfaceMesh& mesh, int facet_id, const Vec3& p);

} // namespace detail

} // namespace windrep
