#include "windrep/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "windrep/errors.hpp"

namespace windrep {

MeshFormat parse_format(const std::string& name) {
    if (name == "obj") return MeshFormat::obj;
    if (name == "poly2d") return MeshFormat::poly2d;
    throw ParseError("unknown mesh format '" + name + "' (expected obj or poly2d)");
}

MeshFormat format_from_path(const std::string& path) {
    const auto pos = path.rfind('.');
    if (pos != std::string::npos && path.substr(pos) == ".obj") return MeshFormat::obj;
    return MeshFormat::poly2d;
}

namespace {

std::string strip_comment(const std::string& line) {
    const auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

int parse_index(const std::string& token, std::size_t line_no) {
    if (token.find('/') != std::string::npos)
        throw ParseError("line " + std::to_string(line_no) +
                         ": obj face with attribute indices is not supported");
    std::size_t used = 0;
    int idx = 0;
    try {
        idx = std::stoi(token, &used);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad index '" + token + "'");
    }
    if (used != token.size())
        throw ParseError("line " + std::to_string(line_no) + ": bad index '" + token + "'");
    return idx;
}

double parse_coord(const std::string& token, std::size_t line_no) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad coordinate '" + token + "'");
    }
    if (used != token.size())
        throw ParseError("line " + std::to_string(line_no) + ": bad coordinate '" + token + "'");
    return v;
}

} // namespace

SurfaceMesh load_mesh(const std::string& path, MeshFormat format) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");

    SurfaceMesh mesh;
    mesh.dimension = (format == MeshFormat::obj) ? 3 : 2;
    const int arity = mesh.facet_arity();
    const char facet_record = (format == MeshFormat::obj) ? 'f' : 's';

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(strip_comment(line));
        std::string tag;
        if (!(ss >> tag)) continue;
        if (tag == "v") {
            Vec3 v;
            std::string tx, ty, tz;
            if (!(ss >> tx >> ty)) throw ParseError("line " + std::to_string(line_no) +
                                                    ": vertex needs " + std::to_string(arity == 2 ? 2 : 3) +
                                                    " coordinates");
            v.x = parse_coord(tx, line_no);
            v.y = parse_coord(ty, line_no);
            if (mesh.dimension == 3) {
                if (!(ss >> tz)) throw ParseError("line " + std::to_string(line_no) +
                                                  ": vertex needs 3 coordinates");
                v.z = parse_coord(tz, line_no);
            }
            std::string extra;
            if (ss >> extra) throw ParseError("line " + std::to_string(line_no) +
                                              ": trailing token '" + extra + "'");
            mesh.vertices.push_back(v);
        } else if (tag.size() == 1 && tag[0] == facet_record) {
            std::array<int, 3> f = {-1, -1, -1};
            for (int k = 0; k < arity; ++k) {
                std::string tok;
                if (!(ss >> tok)) throw ParseError("line " + std::to_string(line_no) +
                                                   ": facet needs " + std::to_string(arity) +
                                                   " indices");
                f[k] = parse_index(tok, line_no) - 1; // 1-based in file
            }
            std::string extra;
            if (ss >> extra) throw ParseError("line " + std::to_string(line_no) + ": facet has more than " +
                                              std::to_string(arity) + " indices");
            mesh.facets.push_back(f);
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unknown record '" + tag + "'");
        }
    }
    validate_mesh(mesh);
    return mesh;
}

void save_mesh(const SurfaceMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    char buf[256];
    for (const Vec3& v : mesh.vertices) {
        if (mesh.dimension == 2)
            std::snprintf(buf, sizeof buf, "v %.17g %.17g\n", v.x, v.y);
        else
            std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
        out << buf;
    }
    for (const auto& f : mesh.facets) {
        if (mesh.dimension == 2)
            out << "s " << f[0] + 1 << ' ' << f[1] + 1 << '\n';
        else
            out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    }
    if (!out.flush()) throw IoError("failed writing '" + path + "'");
}

} // namespace windrep
