#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "config.hpp"
#include "io.hpp"
#include "runner.hpp"
#include "ultrachirp/diagnostics.hpp"
#include "ultrachirp/errors.hpp"

using namespace ultrachirp;
using namespace ultrachirp::cli;

namespace {

enum Exit { kOk = 0, kInternal = 1, kConfig = 2, kNumerical = 3 };

// Flag overrides, applied to the scenario JSON before parsing.
struct Overrides {
    std::optional<std::string> name, output_dir, format;
    std::optional<double> amplitude, chirp, carrier, transition;
    std::optional<double> t_start, t_end, max_step, rel_tol;
    std::optional<std::size_t> store_every, output_intervals;
    std::optional<double> grid_start, grid_end;
    std::optional<std::size_t> grid_count;
    std::vector<std::string> models, outputs;

    void add(CLI::App* app) {
        app->add_option("--name", name);
        app->add_option("--output-dir", output_dir);
        app->add_option("--format", format);
        app->add_option("--amplitude", amplitude);
        app->add_option("--chirp", chirp);
        app->add_option("--carrier", carrier);
        app->add_option("--transition", transition);
        app->add_option("--t-start", t_start);
        app->add_option("--t-end", t_end);
        app->add_option("--max-step", max_step);
        app->add_option("--rel-tol", rel_tol);
        app->add_option("--store-every", store_every);
        app->add_option("--output-intervals", output_intervals);
        app->add_option("--grid-start", grid_start);
        app->add_option("--grid-end", grid_end);
        app->add_option("--grid-count", grid_count);
        app->add_option("--models", models)->delimiter(',');
        app->add_option("--outputs", outputs)->delimiter(',');
    }

    template <class T>
    static void set(json& j, const char* key, const std::optional<T>& v) {
        if (v) j[key] = *v;
    }

    void apply(json& s) const {
        set(s, "name", name);
        set(s, "output_dir", output_dir);
        set(s, "format", format);
        set(s["pulse"], "amplitude", amplitude);
        set(s["pulse"], "chirp", chirp);
        set(s["pulse"], "carrier", carrier);
        set(s["pulse"], "transition", transition);
        if (t_start || t_end || max_step || rel_tol || store_every || output_intervals) {
            json& g = s["integrator"];
            set(g, "t_start", t_start);
            set(g, "t_end", t_end);
            set(g, "max_step", max_step);
            set(g, "rel_tol", rel_tol);
            set(g, "store_every", store_every);
            set(g, "output_intervals", output_intervals);
        }
        if (grid_start || grid_end || grid_count) {
            json& g = s["grid"];
            set(g, "start", grid_start);
            set(g, "end", grid_end);
            set(g, "count", grid_count);
        }
        if (!models.empty()) s["models"] = models;
        if (!outputs.empty()) s["outputs"] = outputs;
    }
};

json parse_inline_or_file(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && arg[first] == '{') {
        try {
            return json::parse(arg);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("invalid JSON argument: ") + e.what());
        }
    }
    return read_json_file(arg);
}

json convert_units_command(const json& in) {
    if (in.contains("omega_L")) {
        DimensionalPulse d;
        d.carrier = in.at("omega_L").get<double>();
        d.rate = in.at("a").get<double>();
        d.chirp = in.value("b", 0.0);
        d.transition = in.value("omega_0", 0.0);
        return {{"input", to_json(d)}, {"dimensionless", to_json(diagnostics::convert_units(d))}};
    }
    if (in.contains("carrier")) {
        PulseParams p;
        p.carrier = in.at("carrier").get<double>();
        p.chirp = in.value("chirp", 0.0);
        p.transition = in.value("transition", p.carrier);
        const double a = in.at("a").get<double>();
        const DimensionalPulse d = diagnostics::to_dimensional(p, a);
        const UnitConversion u = diagnostics::convert_units(d);
        return {{"input", {{"carrier", p.carrier}, {"chirp", p.chirp}, {"transition", p.transition}, {"a", a}}},
                {"dimensional", to_json(d)},
                {"sigma_t", u.sigma_t},
                {"sigma_omega", u.sigma_omega}};
    }
    throw ConfigError("convert-units expects {omega_L, a, b} or {carrier, chirp, a}");
}

int report_error(const std::exception& e, int code) {
    std::cerr << error_json(e).dump() << std::endl;
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ultrachirp: two-level dynamics under ultrachirped Gaussian pulses"};
    app.require_subcommand(1);

    std::optional<std::size_t> workers;
    app.add_option("--workers", workers, std::string("worker threads (default: $") + kWorkersEnv + " or all cores)");

    std::string scenario_path;
    Overrides scenario_over;
    auto* scenario = app.add_subcommand("scenario", "run a scenario from a JSON config");
    scenario->add_option("config", scenario_path)->required();
    scenario_over.add(scenario);

    std::string figure_name;
    Overrides figure_over;
    auto* figure = app.add_subcommand("figure", "run a figure preset");
    figure->add_option("preset", figure_name, "fig1..fig6, fig8, fig9")->required();
    figure_over.add(figure);

    std::string sweep_path;
    Overrides sweep_over;
    std::optional<std::string> axis, metric;
    std::vector<double> values;
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep from a JSON config");
    sweep->add_option("config", sweep_path)->required();
    sweep->add_option("--axis", axis);
    sweep->add_option("--values", values)->delimiter(',');
    sweep->add_option("--metric", metric);
    sweep_over.add(sweep);

    std::string units_arg;
    auto* units = app.add_subcommand("convert-units", "convert pulse parameters between SI and dimensionless units");
    units->add_option("json", units_arg, "inline JSON object or path to a JSON file")->required();

    auto* self = app.add_subcommand("selftest", "run the oracle cross-checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        const std::size_t nworkers = workers ? std::max<std::size_t>(*workers, 1) : worker_count();
        if (scenario->parsed() || figure->parsed()) {
            json j = scenario->parsed() ? read_json_file(scenario_path) : to_json(figure_preset(figure_name));
            (scenario->parsed() ? scenario_over : figure_over).apply(j);
            const ScenarioConfig cfg = scenario_from_json(j);
            const json manifest = run_scenario(cfg, nworkers);
            std::cout << json{{"manifest", (cfg.output_dir / "manifest.json").generic_string()},
                              {"files", manifest["files"].size()}}
                             .dump()
                      << std::endl;
        } else if (sweep->parsed()) {
            json j = read_json_file(sweep_path);
            if (!j.contains("base")) throw ConfigError("sweep is missing 'base'");
            sweep_over.apply(j["base"]);
            if (axis) j["axis"] = *axis;
            if (metric) j["metric"] = *metric;
            if (!values.empty()) j["values"] = values;
            const SweepConfig cfg = sweep_from_json(j);
            const json manifest = run_sweep(cfg, nworkers);
            std::size_t failed = 0;
            for (const auto& row : manifest["points"]) failed += row["status"] != "ok";
            std::cout << json{{"manifest", (cfg.base.output_dir / "manifest.json").generic_string()},
                              {"points", manifest["points"].size()},
                              {"failed", failed}}
                             .dump()
                      << std::endl;
        } else if (units->parsed()) {
            std::cout << convert_units_command(parse_inline_or_file(units_arg)).dump(2) << std::endl;
        } else if (self->parsed()) {
            const json r = selftest();
            std::cout << r.dump(2) << std::endl;
            return r["pass"].get<bool>() ? kOk : kNumerical;
        }
    } catch (const ConfigError& e) {
        return report_error(e, kConfig);
    } catch (const InvalidArgument& e) {
        return report_error(e, kConfig);
    } catch (const json::exception& e) {
        return report_error(e, kConfig);
    } catch (const Error& e) {
        return report_error(e, kNumerical);
    } catch (const std::exception& e) {
        return report_error(e, kInternal);
    }
    return kOk;
}
