#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isoprod/classify.hpp"

namespace isoprod {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Command { eval, curvature, classify, corollary, motion_check };
enum class OutputFormat { json, csv };

std::string_view to_string(Command c);
std::string_view to_string(OutputFormat f);

/// One resolved invocation. Exactly one input source is expected:
/// --expr, --f/--g, --family plus parameter flags, or a JSON model literal.
struct RunConfig {
    Command command = Command::curvature;
    std::optional<std::string> expr_text;
    std::optional<std::string> f_text;
    std::optional<std::string> g_text;
    std::optional<std::string> family;
    std::optional<std::string> model_json;
    std::map<std::string, double> family_params;  // A, a, b, a1, b1, a2, b2
    std::vector<double> alphas;
    GridSpec grid = default_grid();
    double tol = kDefaultTol;
    std::uint64_t seed = 42;
    OutputFormat format = OutputFormat::json;
    std::optional<std::string> out_path;
};

struct RunOutcome {
    int exit_code = 0;    // 0 ok, 1 domain/parse/config error, 2 anomaly
    std::string report;   // JSON report, or CSV for grid commands
};

/// Executes the command and assembles the report. Identical config and seed
/// produce a byte-identical report.
RunOutcome run(const RunConfig& cfg);

struct GridAxis {
    Interval interval;
    int count = 0;
};

/// Parses the "min:max:count" axis syntax.
GridAxis parse_grid_axis(const std::string& text);

}  // namespace isoprod
