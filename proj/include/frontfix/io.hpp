#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "frontfix/implicit.hpp"
#include "frontfix/stability.hpp"
#include "frontfix/types.hpp"

namespace frontfix {

/// Shortest decimal form with 17 significant digits; round-trips exactly.
std::string format_float17(double v);

/// Write content to path atomically (temp file in the same directory,
/// then rename). Parent directories are created as needed.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

struct RunConfig {
    ModelParams params{0.1, 0.2, 1.0, 1.0};
    double x_inf = 1.0;
    int J = 20;
    double mu = 20.0;
    Scheme scheme = Scheme::Implicit;
    StepSolverConfig solver;
    std::string out_prefix;
};

/// Parse a flat JSON document with keys r, sigma, T, E, x_inf, J, mu,
/// scheme onto the config. Unknown keys are rejected; missing keys keep
/// their current values.
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

Scheme parse_scheme(const std::string& name);

} // namespace frontfix
