#pragma once

#include <string>

#include "windrep/geometry.hpp"

namespace windrep {

enum class MeshFormat { obj, poly2d };

// Parses a format name ("obj" or "poly2d"); throws ParseError otherwise.
MeshFormat parse_format(const std::string& name);

// Guesses the format from the file extension (.obj -> obj, anything else ->
// poly2d).
MeshFormat format_from_path(const std::string& path);

// obj: ASCII subset with `v x y z` and `f i j k` records (1-based indices,
// triangles only). poly2d: `v x y` and `s i j` records (1-based), `#` starts
// a comment. Vertex and facet order are preserved.
SurfaceMesh load_mesh(const std::string& path, MeshFormat format);

// Writes poly2d for 2D meshes and obj for 3D meshes, coordinates with 17
// significant digits so that load(save(m)) round-trips.
void save_mesh(const SurfaceMesh& mesh, const std::string& path);

} // namespace windrep
