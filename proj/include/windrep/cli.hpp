#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "windrep/energy.hpp"
#include "windrep/mesh_io.hpp"

namespace windrep {

struct RunConfig {
    enum class Command { orient, energy, field, patches };
    enum class Solver { brute, local };

    Command command = Command::orient;
    std::string input_path;
    std::string output_path;    // oriented mesh (orient) or PPM image (field)
    std::string report_path;    // optional copy of the JSON report
    std::string grid_json_path; // optional raw grid export (field)
    std::optional<MeshFormat> format;

    Solver solver = Solver::brute;
    std::uint64_t seed = 0;
    int restarts = 0; // 0 picks the default of 4n

    QuadratureConfig quad;

    int resolution = 256;
    double margin = 2.0;
    double clamp_min = -0.25;
    double clamp_max = 1.25;
    std::optional<std::vector<int>> signs; // parsed from --signs CSV
};

// Exit codes shared by all subcommands: 0 success, 2 parse/config errors,
// 3 non-orientable patch, 4 conflicting divergence or no convergence.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNonOrientable = 3;
inline constexpr int kExitNumeric = 4;

int run_orient(const RunConfig& cfg);
int run_energy(const RunConfig& cfg);
int run_field(const RunConfig& cfg);
int run_patches(const RunConfig& cfg);

// Dispatches on cfg.command and maps exceptions to exit codes, printing a
// one-line diagnostic to stderr.
int run(const RunConfig& cfg);

} // namespace windrep
