#pragma once

// Config-driven scenarios for the command-line front end.
//
// A scenario file is JSON with four sections whose field names follow the
// library constructors: "environment", "reference", "source", "sweep"
// (exactly one of "spectrum" or "length"), plus an optional "scenario" name.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "purcell/engine.hpp"

namespace purcell {

// Invalid or inconsistent configuration; `field` is a JSON-pointer-like path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct SpectrumSweep {
    std::vector<double> k_grid;
};

struct LengthSweep {
    LineSweepSpec line;
    Wavenumber k{1.0};
};

struct ScenarioConfig {
    std::string name = "scenario";
    GreensModel environment = GreensModel::homogeneous(1.0);
    GreensModel reference = GreensModel::homogeneous(1.0);
    std::optional<ExtendedSource> source;  // spectrum sweeps only
    std::variant<SpectrumSweep, LengthSweep> sweep;
    std::string format = "csv";
    std::uint64_t config_hash = 0;
};

std::uint64_t fnv1a64(std::string_view bytes);

// `base_dir` resolves relative grid-field paths.
ScenarioConfig parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir);
ScenarioConfig load_scenario(const std::filesystem::path& path);

struct ScenarioResult {
    std::string name;
    bool is_length = false;
    std::vector<double> abscissa;  // k or d
    std::vector<double> gamma_ratio;
    std::vector<double> extremity_field;  // length sweeps only
    std::uint64_t config_hash = 0;

    std::size_t argmax() const;
    std::size_t argmin() const;
};

ScenarioResult run_scenario(const ScenarioConfig& config, std::size_t workers = 0);

std::string format_csv(const ScenarioResult& result);

struct ScenarioSummary {
    std::string scenario;
    double k_or_d_at_extremum = 0.0;
    double gamma_ratio_min = 0.0;
    double gamma_ratio_max = 0.0;
};

ScenarioSummary summarize(const ScenarioResult& result);
std::string format_summary_json(const ScenarioSummary& summary);
ScenarioSummary parse_summary_json(std::string_view text);

// 17 significant digits.
std::string format_real(double v);

} // namespace purcell
