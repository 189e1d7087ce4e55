// SPDX-License-Identifier: Apache-2.0
#pragma once

// Run configuration: flat `key = value` lines, `#` starts a comment outside
// quotes, values may be double-quoted. One run per file.

#include "bjorling/bjorling_data.hpp"
#include "bjorling/solver_fd.hpp"
#include "bjorling/vec3.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bjorling::cli {

/// Malformed configuration: unknown key, bad value, missing field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string name = "run";
    std::array<std::string, 3> beta;
    std::array<std::string, 3> field;
    std::string h = "0";
    double s0 = 0.0;
    double s1 = 1.0;
    PeriodKind periodicity = PeriodKind::None;
    double T = 0.0;
    bool periodic_grid = false; // defaults to periodicity != none

    std::string method = "ck";
    int K = 16;
    int N = 256;
    std::optional<double> delta; // empty means "auto"
    int M_t = 20;
    double safety = 0.5;
    bool allow_beyond_radius = false;
    FdConfig fd;

    std::string output;
    bool glue = true; // glue Moebius runs into the quotient mesh

    std::vector<std::string> checks;
    bool checks_given = false;
    std::map<std::string, double> thresholds;

    double symmetry_phi = 0.0;
    int symmetry_shift = 0;
    Vec3 symmetry_v;
    std::optional<double> translator_tau;
};

/// Parse configuration text. `origin` names the source in error messages.
/// Throws ConfigError.
RunConfig parse_config(std::string_view text, const std::string& origin = "<config>");

/// Read and parse a file. Throws ConfigError if it cannot be read.
RunConfig load_config(const std::filesystem::path& path);

/// Directory holding the gallery presets: $BJORLING_GALLERY_DIR if set,
/// else the directory configured at build time.
std::filesystem::path gallery_dir();

/// Preset names (file stems of *.cfg in the gallery directory), sorted.
std::vector<std::string> gallery_names();

/// A file path if it exists, else the gallery preset of that name.
/// Throws ConfigError if neither exists.
std::filesystem::path resolve_config(const std::string& arg);

/// Names accepted in the `checks` list.
const std::vector<std::string>& known_checks();

} // namespace bjorling::cli
