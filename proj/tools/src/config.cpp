#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "io.hpp"
#include "ultrachirp/errors.hpp"

namespace ultrachirp::cli {

namespace {

template <class E, std::size_t N>
E parse_tag(std::string_view s, const std::pair<std::string_view, E> (&table)[N], const char* what) {
    for (const auto& [name, value] : table) {
        if (name == s) return value;
    }
    throw ConfigError(std::string("unknown ") + what + " '" + std::string(s) + "'");
}

constexpr std::pair<std::string_view, OutputKind> kOutputs[] = {
    {"trajectory", OutputKind::trajectory},   {"decomposition", OutputKind::decomposition},
    {"spectrum", OutputKind::spectrum},       {"diagnostics", OutputKind::diagnostics},
    {"asymptotics", OutputKind::asymptotics},
};
constexpr std::pair<std::string_view, SweepAxis> kAxes[] = {
    {"omega_L", SweepAxis::omega_L}, {"b", SweepAxis::b}, {"amplitude", SweepAxis::amplitude}};
constexpr std::pair<std::string_view, SweepMetric> kMetrics[] = {
    {"final_p2", SweepMetric::final_p2}, {"max_p2", SweepMetric::max_p2}, {"rwa_error", SweepMetric::rwa_error}};

template <class E, std::size_t N>
std::string_view tag_name(E v, const std::pair<std::string_view, E> (&table)[N]) {
    for (const auto& [name, value] : table) {
        if (value == v) return name;
    }
    return "?";
}

template <class T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed, const char* where) {
    if (!j.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
    for (const auto& item : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            throw ConfigError("unknown field '" + item.key() + "' in " + where);
        }
    }
}

}  // namespace

std::string_view to_string(OutputKind k) { return tag_name(k, kOutputs); }
std::string_view to_string(SweepAxis a) { return tag_name(a, kAxes); }
std::string_view to_string(SweepMetric m) { return tag_name(m, kMetrics); }
OutputKind output_kind_from_string(std::string_view s) { return parse_tag(s, kOutputs, "output kind"); }
SweepAxis sweep_axis_from_string(std::string_view s) { return parse_tag(s, kAxes, "sweep axis"); }
SweepMetric sweep_metric_from_string(std::string_view s) { return parse_tag(s, kMetrics, "sweep metric"); }

bool ScenarioConfig::wants(OutputKind k) const {
    return std::find(outputs.begin(), outputs.end(), k) != outputs.end();
}

void ScenarioConfig::validate() const {
    try {
        pulse.validate();
        integrator.validate();
        grid.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    if (models.empty()) throw ConfigError("scenario needs at least one model");
    if (outputs.empty()) throw ConfigError("scenario needs at least one output kind");
    if (format != "csv+json") throw ConfigError("unsupported format '" + format + "', expected csv+json");
    if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

void SweepConfig::validate() const {
    base.validate();
    if (values.empty()) throw ConfigError("sweep needs at least one value");
    for (double v : values) {
        if (!std::isfinite(v)) throw ConfigError("sweep values must be finite");
    }
    for (std::size_t i = 0; i < values.size(); ++i) point(i).validate();
}

ScenarioConfig SweepConfig::point(std::size_t i) const {
    ScenarioConfig c = base;
    const double v = values.at(i);
    switch (axis) {
        case SweepAxis::omega_L:
            if (c.pulse.transition == c.pulse.carrier) c.pulse.transition = v;
            c.pulse.carrier = v;
            break;
        case SweepAxis::b: c.pulse.chirp = v; break;
        case SweepAxis::amplitude: c.pulse.amplitude = v; break;
    }
    char sub[32];
    std::snprintf(sub, sizeof sub, "point_%03zu", i);
    c.output_dir = base.output_dir / sub;
    c.name = base.name + "/" + sub;
    return c;
}

ScenarioConfig scenario_from_json(const json& j) {
    check_keys(j, {"name", "pulse", "models", "integrator", "outputs", "output_dir", "format", "grid"}, "scenario");
    ScenarioConfig c;
    read(j, "name", c.name);
    if (!j.contains("pulse")) throw ConfigError("scenario is missing 'pulse'");
    const json& p = j.at("pulse");
    check_keys(p, {"amplitude", "chirp", "carrier", "transition"}, "pulse");
    read(p, "amplitude", c.pulse.amplitude);
    read(p, "chirp", c.pulse.chirp);
    read(p, "carrier", c.pulse.carrier);
    c.pulse.transition = c.pulse.carrier;
    read(p, "transition", c.pulse.transition);

    if (j.contains("models")) {
        for (const auto& m : j.at("models")) {
            try {
                c.models.push_back(hamiltonian_model_from_string(m.get<std::string>()));
            } catch (const InvalidArgument& e) {
                throw ConfigError(e.what());
            }
        }
    }
    if (j.contains("integrator")) {
        const json& g = j.at("integrator");
        check_keys(g, {"t_start", "t_end", "max_step", "rel_tol", "store_every", "output_intervals", "verify"},
                   "integrator");
        read(g, "t_start", c.integrator.t_start);
        read(g, "t_end", c.integrator.t_end);
        read(g, "max_step", c.integrator.max_step);
        read(g, "rel_tol", c.integrator.rel_tol);
        read(g, "store_every", c.integrator.store_every);
        read(g, "output_intervals", c.integrator.output_intervals);
        read(g, "verify", c.integrator.verify);
    }
    if (j.contains("outputs")) {
        for (const auto& o : j.at("outputs")) c.outputs.push_back(output_kind_from_string(o.get<std::string>()));
    }
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    read(j, "format", c.format);
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        check_keys(g, {"start", "end", "count"}, "grid");
        read(g, "start", c.grid.start);
        read(g, "end", c.grid.end);
        read(g, "count", c.grid.count);
    }
    return c;
}

SweepConfig sweep_from_json(const json& j) {
    check_keys(j, {"base", "axis", "values", "metric"}, "sweep");
    if (!j.contains("base")) throw ConfigError("sweep is missing 'base'");
    SweepConfig s;
    s.base = scenario_from_json(j.at("base"));
    if (j.contains("axis")) s.axis = sweep_axis_from_string(j.at("axis").get<std::string>());
    read(j, "values", s.values);
    if (j.contains("metric")) s.metric = sweep_metric_from_string(j.at("metric").get<std::string>());
    return s;
}

json to_json(const ScenarioConfig& c) {
    json models = json::array();
    for (auto m : c.models) models.push_back(std::string(to_string(m)));
    json outputs = json::array();
    for (auto o : c.outputs) outputs.push_back(std::string(to_string(o)));
    return {{"name", c.name},
            {"pulse", to_json(c.pulse)},
            {"models", models},
            {"integrator", to_json(c.integrator)},
            {"outputs", outputs},
            {"output_dir", c.output_dir.generic_string()},
            {"format", c.format},
            {"grid", to_json(c.grid)}};
}

json to_json(const SweepConfig& c) {
    return {{"base", to_json(c.base)},
            {"axis", std::string(to_string(c.axis))},
            {"values", c.values},
            {"metric", std::string(to_string(c.metric))}};
}

ScenarioConfig figure_preset(std::string_view name) {
    using enum OutputKind;
    constexpr auto exact = HamiltonianModel::exact_ip;
    constexpr auto quad = HamiltonianModel::rwa_quadrature;
    constexpr auto analytic = HamiltonianModel::rwa_analytic;
    const double root2 = std::sqrt(2.0);

    ScenarioConfig c;
    c.name = std::string(name);
    c.output_dir = std::filesystem::path("out") / c.name;
    c.models = {exact, quad, analytic};
    if (name == "fig1" || name == "fig2" || name == "fig9") {
        c.pulse = PulseParams::resonant(4.0 * root2, 2.0, 10.0 * root2);
        if (name == "fig1") c.outputs = {decomposition, spectrum};
        if (name == "fig2") c.outputs = {decomposition};
        if (name == "fig9") {
            c.outputs = {asymptotics};
            c.grid = {-8.0, 8.0, 1601};
        }
    } else if (name == "fig3") {
        c.pulse = PulseParams::resonant(200.0, 3500.0, 20000.0);
        c.outputs = {trajectory};
    } else if (name == "fig4") {
        c.pulse = PulseParams::resonant(200.0, 3500.0, 5000.0);
        c.outputs = {trajectory};
    } else if (name == "fig5") {
        c.pulse = PulseParams::resonant(200.0, 3500.0, 700.0);
        c.outputs = {trajectory};
    } else if (name == "fig6") {
        c.pulse = PulseParams::resonant(200.0, 3500.0, 5000.0);
        c.outputs = {decomposition, diagnostics};
    } else if (name == "fig8") {
        c.pulse = PulseParams::resonant(5.0, 30.0, 40.0);
        c.outputs = {decomposition, diagnostics};
    } else {
        throw ConfigError("unknown figure preset '" + std::string(name) + "'");
    }
    if (name == "fig3" || name == "fig4" || name == "fig5") {
        c.integrator.output_intervals = 8000;
    }
    return c;
}

std::vector<std::string> figure_names() {
    return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig8", "fig9"};
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open " + path.string());
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
    }
}

}  // namespace ultrachirp::cli
