#pragma once

// Shared mesh fixtures and test oracles.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "windrep/geometry.hpp"
#include "windrep/patching.hpp"
#include "windrep/winding.hpp"

namespace fixtures {

using windrep::SurfaceMesh;
using windrep::Vec3;

inline constexpr double kPi = 3.14159265358979323846;

// Portable deterministic uniforms: distributions from <random> are not
// bit-stable across standard libraries, the raw engine output is.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

// Counter-clockwise unit square [0,1]^2 as four segments.
inline SurfaceMesh unit_square() {
    return windrep::make_mesh(2,
                              {{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                              {{{0, 1, -1}}, {{1, 2, -1}}, {{2, 3, -1}}, {{3, 0, -1}}});
}

// Unit cube [0,1]^3, 12 triangles, outward orientation.
inline SurfaceMesh unit_cube() {
    std::vector<Vec3> v = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                           {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
    std::vector<std::array<int, 3>> f = {
        {0, 2, 1}, {0, 3, 2}, // z = 0, outward -z
        {4, 5, 6}, {4, 6, 7}, // z = 1, outward +z
        {0, 1, 5}, {0, 5, 4}, // y = 0, outward -y
        {2, 3, 7}, {2, 7, 6}, // y = 1, outward +y
        {0, 4, 7}, {0, 7, 3}, // x = 0, outward -x
        {1, 2, 6}, {1, 6, 5}, // x = 1, outward +x
    };
    return windrep::make_mesh(3, std::move(v), std::move(f));
}

// Closed counter-clockwise regular polygon.
inline SurfaceMesh ngon(int n, double radius = 1.0, Vec3 center = {0, 0}) {
    std::vector<Vec3> v;
    std::vector<std::array<int, 3>> f;
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * kPi * i / n;
        v.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
    }
    for (int i = 0; i < n; ++i) f.push_back({i, (i + 1) % n, -1});
    return windrep::make_mesh(2, std::move(v), std::move(f));
}

// Closed polygon split into `arcs` arcs of consecutive segments; the split
// vertices are duplicated so the arcs are topologically separate patches
// whose endpoints coincide geometrically.
inline SurfaceMesh split_ngon(int n, int arcs, double radius = 1.0, Vec3 center = {0, 0}) {
    std::vector<Vec3> pos;
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * kPi * i / n;
        pos.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
    }
    std::vector<Vec3> v;
    std::vector<std::array<int, 3>> f;
    const int base = n / arcs;
    int start = 0;
    for (int arc = 0; arc < arcs; ++arc) {
        const int len = arc < arcs - 1 ? base : n - start; // remainder on the last arc
        const int first = static_cast<int>(v.size());
        for (int k = 0; k <= len; ++k) v.push_back(pos[(start + k) % n]);
        for (int k = 0; k < len; ++k) f.push_back({first + k, first + k + 1, -1});
        start += len;
    }
    return windrep::make_mesh(2, std::move(v), std::move(f));
}

// Polygon with `gap_every`-th segments removed: open arcs, no shared
// vertices between arcs.
inline SurfaceMesh gapped_ngon(int n, std::vector<int> gap_segments, double radius = 1.0,
                               Vec3 center = {0, 0}) {
    SurfaceMesh full = ngon(n, radius, center);
    std::vector<std::array<int, 3>> kept;
    for (int i = 0; i < n; ++i) {
        bool gap = false;
        for (int g : gap_segments) gap = gap || g == i;
        if (!gap) kept.push_back(full.facets[i]);
    }
    full.facets = std::move(kept);
    return full;
}

// Three triangles sharing one common edge: a non-manifold fan.
inline SurfaceMesh triangle_fan3() {
    std::vector<Vec3> v = {{0, 0, 0}, {0, 0, 1}, {1, 0, 0.5}, {-0.5, 0.87, 0.5},
                           {-0.5, -0.87, 0.5}};
    std::vector<std::array<int, 3>> f = {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}};
    return windrep::make_mesh(3, std::move(v), std::move(f));
}

// Nine-triangle Moebius band: faces (i, i+1, i+2) mod 9 form an odd cycle of
// edge-glued triangles, which cannot be oriented consistently.
inline SurfaceMesh mobius9() {
    std::vector<Vec3> v;
    for (int i = 0; i < 9; ++i) {
        const double a = 2.0 * kPi * i / 9.0;
        v.push_back({std::cos(a), std::sin(a), 0.25 * std::cos(4.5 * a)});
    }
    std::vector<std::array<int, 3>> f;
    for (int i = 0; i < 9; ++i) f.push_back({i, (i + 1) % 9, (i + 2) % 9});
    return windrep::make_mesh(3, std::move(v), std::move(f));
}

// Two consistently oriented triangles sharing one edge.
inline SurfaceMesh two_triangles() {
    return windrep::make_mesh(3, {{0, 0, 0}, {1, 0, 0}, {0.5, 1, 0}, {0.5, -1, 0.2}},
                              {{{0, 1, 2}}, {{1, 0, 3}}});
}

// Appends an open circular arc (CCW when a1 > a0) as a chain of segments
// with fresh vertices.
inline void add_arc(SurfaceMesh& m, Vec3 center, double radius, double a0, double a1, int n) {
    const int base = static_cast<int>(m.vertices.size());
    for (int i = 0; i <= n; ++i) {
        const double a = a0 + (a1 - a0) * i / n;
        m.vertices.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
    }
    for (int i = 0; i < n; ++i) m.facets.push_back({base + i, base + i + 1, -1});
}

// Two-patch fixtures with separated boundaries and strong coupling, for
// checking the surface integral against the volumetric oracle.
inline SurfaceMesh oracle_pair(int variant) {
    SurfaceMesh m;
    m.dimension = 2;
    switch (variant) {
        case 0: // nested gapped circles, gaps on the same side
            add_arc(m, {0, 0}, 1.0, 0.3, 2 * kPi - 0.3, 20);
            add_arc(m, {0, 0}, 1.8, 0.5, 2 * kPi - 0.5, 24);
            break;
        case 1: { // gapped circle inside an open octagon
            add_arc(m, {0, 0}, 1.0, 0.25, 2 * kPi - 0.25, 16);
            const int base = static_cast<int>(m.vertices.size());
            for (int i = 0; i <= 7; ++i) {
                const double a = 2 * kPi * (i + 0.5) / 8;
                m.vertices.push_back({2.1 * std::cos(a), 2.1 * std::sin(a)});
            }
            for (int i = 0; i < 7; ++i) m.facets.push_back({base + i, base + i + 1, -1});
            break;
        }
        default: // annulus-like: inner arc wound clockwise, outer CCW
            add_arc(m, {0, 0}, 1.0, 2 * kPi - 0.3, 0.3, 20);
            add_arc(m, {0, 0}, 1.9, 0.4, 2 * kPi - 0.4, 24);
            break;
    }
    windrep::validate_mesh(m);
    return m;
}

// A large outline with two openings plus two nearly closed bubbles hovering
// over the openings, mouths facing away from the body. The energy favors
// turning the bubbles inside out.
inline SurfaceMesh torso_fixture() {
    SurfaceMesh m;
    m.dimension = 2;
    const double g = 0.35, gs = 0.3;
    add_arc(m, {0, 0}, 1.0, kPi / 2 + g, 2 * kPi - gs, 20); // neck gap to side gap
    add_arc(m, {0, 0}, 1.0, gs, kPi / 2 - g, 8);            // side gap to neck gap
    add_arc(m, {0, 1.32}, 0.22, kPi / 2 + 0.2 * kPi, kPi / 2 + 2 * kPi - 0.2 * kPi, 12);
    add_arc(m, {1.32, 0}, 0.22, 0.2 * kPi, 2 * kPi - 0.2 * kPi, 12);
    windrep::validate_mesh(m);
    return m;
}

// Solid-boundary-with-missing-pieces fixtures (3 to 12 patches each).
inline SurfaceMesh solid_with_gaps(int variant) {
    switch (variant) {
        case 0: // circle with three gaps -> 3 arcs
            return gapped_ngon(16, {3, 9, 13});
        case 1: { // square outline, 20 segments, 4 gaps -> 4 arcs
            SurfaceMesh m;
            m.dimension = 2;
            std::vector<Vec3> ring;
            for (int side = 0; side < 4; ++side) {
                for (int k = 0; k < 5; ++k) {
                    const double t = k / 5.0;
                    switch (side) {
                        case 0: ring.push_back({t, 0}); break;
                        case 1: ring.push_back({1, t}); break;
                        case 2: ring.push_back({1 - t, 1}); break;
                        default: ring.push_back({0, 1 - t}); break;
                    }
                }
            }
            m.vertices = ring;
            for (int i = 0; i < 20; ++i) {
                if (i == 2 || i == 7 || i == 12 || i == 17) continue;
                m.facets.push_back({i, (i + 1) % 20, -1});
            }
            windrep::validate_mesh(m);
            return m;
        }
        default: { // non-convex blob outline, 25 segments, 5 gaps -> 5 arcs
            SurfaceMesh m;
            m.dimension = 2;
            std::vector<Vec3> ring;
            for (int i = 0; i < 25; ++i) {
                const double a = 2 * kPi * i / 25;
                const double r = 1.0 + 0.25 * std::cos(3 * a);
                ring.push_back({r * std::cos(a), r * std::sin(a)});
            }
            m.vertices = ring;
            for (int i = 0; i < 25; ++i) {
                if (i % 5 == 2) continue;
                m.facets.push_back({i, (i + 1) % 25, -1});
            }
            windrep::validate_mesh(m);
            return m;
        }
    }
}

inline bool point_in_unit_square(const Vec3& p) {
    return p.x > 0.0 && p.x < 1.0 && p.y > 0.0 && p.y < 1.0;
}

inline bool point_in_unit_cube(const Vec3& p) {
    return point_in_unit_square(p) && p.z > 0.0 && p.z < 1.0;
}

// Central finite-difference gradient of any scalar field.
template <typename F>
Vec3 fd_gradient(F&& f, const Vec3& p, double h, int dimension) {
    Vec3 g;
    g.x = (f({p.x + h, p.y, p.z}) - f({p.x - h, p.y, p.z})) / (2 * h);
    g.y = (f({p.x, p.y + h, p.z}) - f({p.x, p.y - h, p.z})) / (2 * h);
    if (dimension == 3) g.z = (f({p.x, p.y, p.z + h}) - f({p.x, p.y, p.z - h})) / (2 * h);
    return g;
}

// Draws a point in the box around the mesh at least min_dist from every
// facet boundary (and facet, if strict) by rejection.
inline Vec3 sample_point_away(const SurfaceMesh& mesh, std::mt19937_64& rng, double margin,
                              double min_dist) {
    auto [lo, hi] = windrep::bounding_box(mesh);
    const Vec3 c = (lo + hi) / 2.0;
    const Vec3 half = (hi - lo) / 2.0;
    double hx = std::max({half.x, half.y, half.z}) * margin;
    for (;;) {
        Vec3 p{c.x + uniform(rng, -hx, hx), c.y + uniform(rng, -hx, hx),
               mesh.dimension == 3 ? c.z + uniform(rng, -hx, hx) : 0.0};
        if (windrep::distance_to_surface(mesh, p) >= min_dist) return p;
    }
}

} // namespace fixtures
