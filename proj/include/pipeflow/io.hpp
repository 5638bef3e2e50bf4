// Scenario-file parsing, CSV/JSON emission and atomic file writes. Config
// files are strictly SI; CSV output uses km and 1e-2 MPa unless SI output is
// requested. Unknown config keys are rejected by name.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pipeflow/domain.hpp"
#include "pipeflow/oracle.hpp"

namespace pipeflow {

inline constexpr const char* kToolName = "pipeflow";
inline constexpr const char* kToolVersion = "1.0.0";

// Exact unit conversions at the I/O boundary.
inline constexpr double kMetersPerKm = 1000.0;
inline constexpr double kPaPerTableUnit = 1e4;  // 1e-2 MPa
inline constexpr double kPaPerMPa = 1e6;

struct OutputGrids {
    std::vector<double> x;  // m
    std::vector<double> t;  // absolute s
};

struct RunSpec {
    ValidatedScenario scenario;
    SeriesConfig series;
    FDConfig fd;
    std::string fit = "none";
    OutputGrids outputs;
};

RunSpec parse_scenario_json(const nlohmann::json& j);
RunSpec load_scenario_file(const std::filesystem::path& path);
nlohmann::ordered_json resolved_config_json(const RunSpec& spec);

// Fixed 6-significant-digit formatting used for every CSV number.
std::string format_g6(double v);

// Section field as CSV: first column x_km, one column per offset since t_ref.
std::string csv_from_field(const PressureField& field, bool si, double t_ref);

void atomic_write(const std::filesystem::path& path, const std::string& content);

std::uint64_t fnv1a64(std::string_view data);

}  // namespace pipeflow
