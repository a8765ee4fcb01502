#include "windrep/cli.hpp"

#include <fstream>
#include <iostream>

#include <json.hpp>

#include "windrep/errors.hpp"
#include "windrep/field.hpp"
#include "windrep/patching.hpp"
#include "windrep/solver.hpp"
#include "windrep/winding.hpp"

namespace windrep {

namespace {

using json = nlohmann::ordered_json;

SurfaceMesh load_input(const RunConfig& cfg) {
    if (cfg.input_path.empty()) throw ParseError("no input file given");
    const MeshFormat fmt = cfg.format.value_or(format_from_path(cfg.input_path));
    return load_mesh(cfg.input_path, fmt);
}

SignAssignment resolve_signs(const RunConfig& cfg, std::size_t n) {
    if (!cfg.signs) return SignAssignment::all_plus(n);
    if (cfg.signs->size() != n)
        throw SizeMismatch("--signs has " + std::to_string(cfg.signs->size()) +
                           " entries for " + std::to_string(n) + " patches");
    for (int v : *cfg.signs)
        if (v != 1 && v != -1) throw ParseError("--signs entries must be 1 or -1");
    return {*cfg.signs};
}

void emit_report(const RunConfig& cfg, const json& report) {
    const std::string text = report.dump(2);
    std::cout << text << '\n';
    if (!cfg.report_path.empty()) {
        std::ofstream out(cfg.report_path);
        if (!out) throw IoError("cannot open '" + cfg.report_path + "' for writing");
        out << text << '\n';
    }
}

json q_matrix_json(const QMatrix& Q) {
    json rows = json::array();
    for (int i = 0; i < Q.n; ++i) {
        json row = json::array();
        for (int j = 0; j < Q.n; ++j) {
            const QEntry& e = Q.at(i, j);
            if (e.is_divergent)
                row.push_back(json{{"divergent", e.sign}});
            else
                row.push_back(e.value);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json quadrature_json(const QuadratureConfig& q) {
    return json{{"base_points", q.base_points},
                {"refinement_levels", q.refinement_levels},
                {"convergence_tol", q.convergence_tol},
                {"divergence_threshold", q.divergence_threshold}};
}

const char* kind_name(EntryDiagnostics::Kind k) {
    switch (k) {
        case EntryDiagnostics::Kind::diagonal: return "diagonal";
        case EntryDiagnostics::Kind::coincident_edge: return "coincident_edge";
        case EntryDiagnostics::Kind::converged: return "converged";
        case EntryDiagnostics::Kind::divergent_trend: return "divergent_trend";
        default: return "unset";
    }
}

int count_divergent_offdiag(const QMatrix& Q) {
    int count = 0;
    for (int i = 0; i < Q.n; ++i)
        for (int j = i + 1; j < Q.n; ++j)
            if (Q.at(i, j).is_divergent) ++count;
    return count;
}

json nonmanifold_json(const SurfaceMesh& mesh, const PatchDecomposition& decomp) {
    json list = json::array();
    for (const auto& e : decomp.nonmanifold_edges) {
        if (mesh.dimension == 2)
            list.push_back(json::array({e[0]}));
        else
            list.push_back(json::array({e[0], e[1]}));
    }
    return list;
}

} // namespace

int run_orient(const RunConfig& cfg) {
    const SurfaceMesh mesh = load_input(cfg);
    if (cfg.output_path.empty()) throw ParseError("orient requires --output for the mesh");
    const PatchDecomposition decomp = extract_patches(mesh);
    const QMatrix Q = assemble_Q(mesh, decomp, cfg.quad);

    SolveResult solved;
    if (cfg.solver == RunConfig::Solver::brute) {
        solved = brute_force(Q);
    } else {
        const int restarts = cfg.restarts > 0 ? cfg.restarts : 4 * std::max(Q.n, 1);
        solved = local_search(Q, restarts, cfg.seed);
    }
    const double before = energy(Q, SignAssignment::all_plus(decomp.num_patches()));

    const SurfaceMesh oriented = apply_signs(mesh, decomp, solved.signs);
    save_mesh(oriented, cfg.output_path);

    json flipped = json::array();
    for (std::size_t i = 0; i < solved.signs.signs.size(); ++i)
        if (solved.signs.signs[i] == -1) flipped.push_back(i + 1);

    emit_report(cfg, json{{"n", Q.n},
                          {"signs", solved.signs.signs},
                          {"flipped_patches", flipped},
                          {"energy_before", before},
                          {"energy_after", solved.energy},
                          {"method",
                           solved.method == SolveResult::Method::brute_force ? "brute-force"
                                                                             : "local-search"},
                          {"evaluations", solved.evaluations},
                          {"divergent_entries", count_divergent_offdiag(Q)},
                          {"output", cfg.output_path}});
    return kExitOk;
}

int run_energy(const RunConfig& cfg) {
    const SurfaceMesh mesh = load_input(cfg);
    const PatchDecomposition decomp = extract_patches(mesh);
    const SignAssignment signs = resolve_signs(cfg, decomp.num_patches());
    const QMatrix Q = assemble_Q(mesh, decomp, cfg.quad);

    int finite = 0;
    json diagnostics = json::array();
    for (int i = 0; i < Q.n; ++i) {
        for (int j = i + 1; j < Q.n; ++j) {
            if (!Q.at(i, j).is_divergent) ++finite;
            const auto& d = Q.info[static_cast<std::size_t>(i) * Q.n + j];
            diagnostics.push_back(json{{"i", i + 1},
                                       {"j", j + 1},
                                       {"outcome", kind_name(d.kind)},
                                       {"levels", d.levels_used}});
        }
    }

    emit_report(cfg, json{{"n", Q.n},
                          {"finite_entries", finite},
                          {"divergent_entries", count_divergent_offdiag(Q)},
                          {"Q", q_matrix_json(Q)},
                          {"signs", signs.signs},
                          {"energy", energy(Q, signs)},
                          {"quadrature", quadrature_json(cfg.quad)},
                          {"diagnostics", diagnostics}});
    return kExitOk;
}

int run_field(const RunConfig& cfg) {
    const SurfaceMesh mesh = load_input(cfg);
    if (mesh.dimension == 3 && !cfg.output_path.empty())
        throw ParseError("image output requires a 2D mesh; use --grid-json for 3D fields");
    const PatchDecomposition decomp = extract_patches(mesh);
    const SignAssignment signs = resolve_signs(cfg, decomp.num_patches());

    const ScalarGrid grid = sample_field(mesh, decomp, signs, cfg.resolution, cfg.margin);
    if (!cfg.output_path.empty()) {
        const auto bytes = render(grid, cfg.clamp_min, cfg.clamp_max);
        std::ofstream out(cfg.output_path, std::ios::binary);
        if (!out) throw IoError("cannot open '" + cfg.output_path + "' for writing");
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        if (!out) throw IoError("failed writing '" + cfg.output_path + "'");
    }
    if (!cfg.grid_json_path.empty()) {
        json g{{"origin", json::array({grid.spec.origin.x, grid.spec.origin.y})},
               {"spacing", grid.spec.spacing},
               {"counts", json::array({grid.spec.counts[0], grid.spec.counts[1]})},
               {"values", grid.values},
               {"mask", grid.mask}};
        if (mesh.dimension == 3) {
            g["origin"].push_back(grid.spec.origin.z);
            g["counts"].push_back(grid.spec.counts[2]);
        }
        std::ofstream out(cfg.grid_json_path);
        if (!out) throw IoError("cannot open '" + cfg.grid_json_path + "' for writing");
        out << g.dump(2) << '\n';
    }

    // The number reported alongside each image: the diagonal-free energy of
    // the rendered sign assignment.
    const QMatrix Q = assemble_Q(mesh, decomp, cfg.quad);
    emit_report(cfg, json{{"n", Q.n},
                          {"signs", signs.signs},
                          {"energy", energy(Q, signs)},
                          {"resolution", cfg.resolution},
                          {"margin", cfg.margin},
                          {"clamp", json::array({cfg.clamp_min, cfg.clamp_max})},
                          {"masked_cells",
                           static_cast<long long>(std::count(grid.mask.begin(), grid.mask.end(),
                                                             true))},
                          {"image", cfg.output_path},
                          {"grid_json", cfg.grid_json_path}});
    return kExitOk;
}

int run_patches(const RunConfig& cfg) {
    const SurfaceMesh mesh = load_input(cfg);
    const PatchDecomposition decomp = extract_patches(mesh);

    json patches = json::array();
    for (const Patch& p : decomp.patches) {
        const long long flips =
            std::count(p.internal_flips.begin(), p.internal_flips.end(), true);
        patches.push_back(json{{"id", p.id},
                               {"facet_count", p.facet_ids.size()},
                               {"internal_flips", flips},
                               {"facets", p.facet_ids}});
    }
    emit_report(cfg, json{{"dimension", mesh.dimension},
                          {"num_patches", decomp.num_patches()},
                          {"patches", patches},
                          {"nonmanifold_edges", nonmanifold_json(mesh, decomp)}});
    return kExitOk;
}

int run(const RunConfig& cfg) {
    try {
        switch (cfg.command) {
            case RunConfig::Command::orient: return run_orient(cfg);
            case RunConfig::Command::energy: return run_energy(cfg);
            case RunConfig::Command::field: return run_field(cfg);
            case RunConfig::Command::patches: return run_patches(cfg);
        }
        return kExitConfig;
    } catch (const NonOrientablePatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNonOrientable;
    } catch (const ConflictingDivergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const NoConvergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

} // namespace windrep
