#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ultrachirp/dynamics.hpp"
#include "ultrachirp/signal.hpp"

namespace ultrachirp::cli {

using json = nlohmann::json;

enum class OutputKind { trajectory, decomposition, spectrum, diagnostics, asymptotics };
enum class SweepAxis { omega_L, b, amplitude };
enum class SweepMetric { final_p2, max_p2, rwa_error };

std::string_view to_string(OutputKind k);
std::string_view to_string(SweepAxis a);
std::string_view to_string(SweepMetric m);
OutputKind output_kind_from_string(std::string_view s);
SweepAxis sweep_axis_from_string(std::string_view s);
SweepMetric sweep_metric_from_string(std::string_view s);

struct ScenarioConfig {
    std::string name = "scenario";
    PulseParams pulse;
    std::vector<HamiltonianModel> models;
    IntegratorConfig integrator;
    std::vector<OutputKind> outputs;
    std::filesystem::path output_dir = "out";
    std::string format = "csv+json";
    /// Sampling for decomposition, diagnostics and asymptotics outputs.
    TimeGrid grid{-4.0, 4.0, 4001};

    bool wants(OutputKind k) const;
    /// Throws ConfigError.
    void validate() const;
};

struct SweepConfig {
    ScenarioConfig base;
    SweepAxis axis = SweepAxis::omega_L;
    std::vector<double> values;
    SweepMetric metric = SweepMetric::final_p2;

    void validate() const;
    /// base with the axis set to values[i]; the output directory is point_<i>.
    ScenarioConfig point(std::size_t i) const;
};

/// Field names mirror the structs. A pulse without "transition" is resonant.
ScenarioConfig scenario_from_json(const json& j);
SweepConfig sweep_from_json(const json& j);
json to_json(const ScenarioConfig& c);
json to_json(const SweepConfig& c);

/// Parameters of the named figure (fig1..fig6, fig8, fig9). Throws ConfigError.
ScenarioConfig figure_preset(std::string_view name);
std::vector<std::string> figure_names();

json read_json_file(const std::filesystem::path& path);

}  // namespace ultrachirp::cli
