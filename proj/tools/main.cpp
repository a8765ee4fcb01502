#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "windrep/cli.hpp"
#include "windrep/errors.hpp"

namespace {

std::vector<int> parse_signs_csv(const std::string& csv) {
    std::vector<int> signs;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            signs.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw windrep::ParseError("--signs: bad entry '" + item + "'");
        }
    }
    return signs;
}

void add_common_flags(CLI::App* cmd, windrep::RunConfig& cfg, std::string& format) {
    cmd->add_option("--input,-i", cfg.input_path, "Input mesh file")->required();
    cmd->add_option("--format", format, "Input format: obj or poly2d (default: by extension)");
    cmd->add_option("--report", cfg.report_path, "Also write the JSON report to this file");
}

void add_signs_flag(CLI::App* cmd, std::string& signs_csv) {
    cmd->add_option("--signs", signs_csv, "Comma-separated patch signs, each 1 or -1");
}

void add_quadrature_flags(CLI::App* cmd, windrep::RunConfig& cfg) {
    cmd->add_option("--quad-base", cfg.quad.base_points, "Quadrature nodes per facet");
    cmd->add_option("--quad-levels", cfg.quad.refinement_levels, "Max refinement levels");
    cmd->add_option("--quad-tol", cfg.quad.convergence_tol, "Relative convergence tolerance");
    cmd->add_option("--div-threshold", cfg.quad.divergence_threshold,
                    "Divergence detection threshold");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Repairs facet orientations by minimizing the Dirichlet energy of the "
                 "generalized winding number"};
    app.require_subcommand(1);

    windrep::RunConfig cfg;
    std::string format;
    std::string signs_csv;
    std::string solver = "brute";

    CLI::App* orient = app.add_subcommand("orient", "Solve for patch signs and write the "
                                                    "reoriented mesh");
    add_common_flags(orient, cfg, format);
    add_quadrature_flags(orient, cfg);
    orient->add_option("--output,-o", cfg.output_path, "Output mesh path")->required();
    orient->add_option("--solver", solver, "brute or local");
    orient->add_option("--seed", cfg.seed, "Random seed for the local solver");
    orient->add_option("--restarts", cfg.restarts, "Local-search restarts (default 4n)");

    CLI::App* energy = app.add_subcommand("energy", "Report the patch interaction matrix and "
                                                    "energy");
    add_common_flags(energy, cfg, format);
    add_signs_flag(energy, signs_csv);
    add_quadrature_flags(energy, cfg);

    CLI::App* field = app.add_subcommand("field", "Sample the winding number on a grid and "
                                                  "render it");
    add_common_flags(field, cfg, format);
    add_signs_flag(field, signs_csv);
    add_quadrature_flags(field, cfg);
    field->add_option("--output,-o", cfg.output_path, "Output PPM image path (2D only)");
    field->add_option("--grid-json", cfg.grid_json_path, "Raw grid export path");
    field->add_option("--resolution", cfg.resolution, "Grid cells per axis");
    field->add_option("--margin", cfg.margin, "Bounding-box scale factor");
    field->add_option("--clamp-min", cfg.clamp_min, "Color ramp lower bound");
    field->add_option("--clamp-max", cfg.clamp_max, "Color ramp upper bound");

    CLI::App* patches = app.add_subcommand("patches", "Report the patch decomposition");
    add_common_flags(patches, cfg, format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return windrep::kExitConfig;
    }

    try {
        if (!format.empty()) cfg.format = windrep::parse_format(format);
        if (!signs_csv.empty()) cfg.signs = parse_signs_csv(signs_csv);
        if (solver == "brute")
            cfg.solver = windrep::RunConfig::Solver::brute;
        else if (solver == "local")
            cfg.solver = windrep::RunConfig::Solver::local;
        else
            throw windrep::ParseError("--solver must be brute or local");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return windrep::kExitConfig;
    }

    if (orient->parsed())
        cfg.command = windrep::RunConfig::Command::orient;
    else if (energy->parsed())
        cfg.command = windrep::RunConfig::Command::energy;
    else if (field->parsed())
        cfg.command = windrep::RunConfig::Command::field;
    else if (patches->parsed())
        cfg.command = windrep::RunConfig::Command::patches;

    return windrep::run(cfg);
}
