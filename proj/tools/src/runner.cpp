#include "runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <optional>
#include <thread>

#include "io.hpp"
#include "oracles.hpp"
#include "ultrachirp/asymptotics.hpp"
#include "ultrachirp/diagnostics.hpp"
#include "ultrachirp/errors.hpp"
#include "ultrachirp/faddeyeva.hpp"
#include "wofz_oracle.hpp"

#ifndef ULTRACHIRP_VERSION
#define ULTRACHIRP_VERSION "0.0.0"
#endif

namespace ultrachirp::cli {

namespace fs = std::filesystem;

std::size_t worker_count() {
    if (const char* env = std::getenv(kWorkersEnv); env && *env) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (*end != '\0' || n < 1) throw ConfigError(std::string(kWorkersEnv) + " must be a positive integer");
        return static_cast<std::size_t>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

namespace {

json tool_json() { return {{"name", "ultrachirp"}, {"version", ULTRACHIRP_VERSION}}; }

struct Emitter {
    fs::path dir;
    json files = json::array();

    void csv(const std::string& name, const std::string& kind, const std::string& model, const PulseParams& p,
             const std::string& body) {
        write_atomic(dir / name, body);
        files.push_back({{"path", name}, {"kind", kind}, {"model", model}, {"params", to_json(p)}});
    }
};

// Sampling for the spectrum output: [-8, 8] with a power-of-two count whose
// Nyquist frequency covers the chirp excursion with margin.
TimeGrid spectrum_grid(const PulseParams& p) {
    const double top = 1.5 * (std::abs(p.carrier) + 16.0 * std::abs(p.chirp) + 10.0);
    const double needed = 16.0 * top / std::numbers::pi;
    std::size_t count = std::size_t{1} << 14;
    while (static_cast<double>(count) < needed && count < (std::size_t{1} << 22)) count <<= 1;
    return {-8.0, 8.0, count};
}

json trajectory_summary(const Trajectory& tr, const std::string& file) {
    return {{"model", std::string(to_string(tr.model))},
            {"file", file},
            {"final_p2", tr.final_p2()},
            {"max_p2", tr.max_p2()},
            {"samples", tr.times.size()},
            {"convergence", to_json(tr.report)}};
}

struct ScenarioResult {
    json manifest;
    std::vector<Trajectory> trajectories;
};

ScenarioResult execute(const ScenarioConfig& cfg, std::size_t workers, bool force_models) {
    cfg.validate();
    fs::create_directories(cfg.output_dir);
    Emitter out{cfg.output_dir};
    ScenarioResult result;
    json manifest = {{"tool", tool_json()}, {"config", to_json(cfg)}};

    if (cfg.wants(OutputKind::trajectory) || force_models) {
        result.trajectories.resize(cfg.models.size());
        parallel_for(cfg.models.size(), workers, [&](std::size_t i) {
            result.trajectories[i] = dynamics::evolve(cfg.models[i], cfg.pulse, cfg.integrator);
        });
        json runs = json::array();
        for (const Trajectory& tr : result.trajectories) {
            const std::string model(to_string(tr.model));
            std::string file;
            if (cfg.wants(OutputKind::trajectory)) {
                file = "trajectory_" + model + ".csv";
                out.csv(file, "trajectory", model, cfg.pulse, trajectory_csv(tr));
            }
            runs.push_back(trajectory_summary(tr, file));
        }
        manifest["trajectories"] = runs;
    }

    if (cfg.wants(OutputKind::decomposition)) {
        const Decomposition q = signal::quadrature_decomposition(cfg.pulse, cfg.grid);
        const Decomposition a = signal::analytic_decomposition(cfg.pulse, cfg.grid);
        out.csv("decomposition_quadrature.csv", "decomposition", "quadrature", cfg.pulse,
                decomposition_csv(q, cfg.pulse));
        out.csv("decomposition_analytic.csv", "decomposition", "analytic", cfg.pulse,
                decomposition_csv(a, cfg.pulse));
    }

    if (cfg.wants(OutputKind::spectrum)) {
        const TimeGrid g = spectrum_grid(cfg.pulse);
        const std::vector<double> real = signal::sample_real_field(cfg.pulse, g);
        const std::vector<Complex> real_c(real.begin(), real.end());
        std::vector<NamedSpectrum> spectra = {
            {"field", signal::spectrum(real_c, g)},
            {"quadrature", signal::spectrum(signal::sample_quadrature(cfg.pulse, g), g)},
            {"analytic", signal::spectrum(signal::sample_analytic(cfg.pulse, g), g)},
        };
        out.csv("spectrum.csv", "spectrum", "field+quadrature+analytic", cfg.pulse, spectrum_csv(spectra, cfg.pulse));
        manifest["spectrum"] = {{"grid", to_json(g)}, {"convention", std::string(Spectrum::convention)}};
    }

    if (cfg.wants(OutputKind::diagnostics)) {
        json d = {{"resonance", to_json(diagnostics::resonance_report(cfg.pulse))},
                  {"closeness", to_json(signal::closeness_metrics(cfg.pulse))}};
        json adiabatic = json::object();
        for (SignalModel m : {SignalModel::quadrature, SignalModel::analytic}) {
            const std::string model(to_string(m));
            try {
                const AdiabaticityReport r = diagnostics::adiabaticity_report(m, cfg.pulse, cfg.grid);
                const std::string file = "adiabaticity_" + model + ".csv";
                out.csv(file, "adiabaticity", model, cfg.pulse, adiabaticity_csv(r, cfg.pulse));
                adiabatic[model] = to_json(r);
                adiabatic[model]["file"] = file;
            } catch (const LevelCrossing& e) {
                adiabatic[model] = error_json(e);
            }
        }
        d["adiabaticity"] = adiabatic;
        write_atomic(cfg.output_dir / "diagnostics.json", d.dump(2) + "\n");
        out.files.push_back({{"path", "diagnostics.json"}, {"kind", "diagnostics"}, {"model", "quadrature+analytic"},
                             {"params", to_json(cfg.pulse)}});
        manifest["diagnostics"] = d;
    }

    if (cfg.wants(OutputKind::asymptotics)) {
        out.csv("asymptotics.csv", "asymptotics", "analytic", cfg.pulse,
                asymptotics_csv(asymptotics::component_series(cfg.pulse, cfg.grid), cfg.pulse));
        json a;
        try {
            const Crossovers c = asymptotics::crossover_times(cfg.pulse);
            a["crossovers"] = {{"t1", c.t1}, {"t2", c.t2}};
        } catch (const NoSignChange& e) {
            a["crossovers"] = error_json(e);
        }
        const auto tc = asymptotics::imaginary_crossing(cfg.pulse);
        a["imaginary_crossing"] = tc ? json(*tc) : json(nullptr);
        manifest["asymptotics"] = a;
    }

    manifest["files"] = out.files;
    write_atomic(cfg.output_dir / "manifest.json", manifest.dump(2) + "\n");
    result.manifest = std::move(manifest);
    return result;
}

double metric_value(SweepMetric metric, const Trajectory& tr, const Trajectory* reference) {
    switch (metric) {
        case SweepMetric::final_p2: return tr.final_p2();
        case SweepMetric::max_p2: return tr.max_p2();
        case SweepMetric::rwa_error: return dynamics::max_p2_difference(tr, *reference);
    }
    return NAN;
}

}  // namespace

json run_scenario(const ScenarioConfig& cfg, std::size_t workers) { return execute(cfg, workers, false).manifest; }

json run_sweep(const SweepConfig& input, std::size_t workers) {
    SweepConfig cfg = input;
    const bool error_metric = cfg.metric == SweepMetric::rwa_error;
    if (error_metric) {
        auto& models = cfg.base.models;
        if (std::find(models.begin(), models.end(), HamiltonianModel::exact_ip) == models.end()) {
            models.insert(models.begin(), HamiltonianModel::exact_ip);
        }
        if (cfg.base.integrator.output_intervals == 0) cfg.base.integrator.output_intervals = 8000;
    }
    cfg.validate();
    fs::create_directories(cfg.base.output_dir);

    const std::size_t n = cfg.values.size();
    std::vector<json> rows(n);
    const std::size_t outer = std::min(workers, n);
    const std::size_t inner = std::max<std::size_t>(1, workers / std::max<std::size_t>(outer, 1));
    parallel_for(n, outer, [&](std::size_t i) {
        const ScenarioConfig point = cfg.point(i);
        json row = {{"value", cfg.values[i]}, {"manifest", (fs::path(point.output_dir.filename()) / "manifest.json").generic_string()}};
        try {
            const ScenarioResult r = execute(point, inner, true);
            const Trajectory* reference = nullptr;
            for (const auto& tr : r.trajectories) {
                if (tr.model == HamiltonianModel::exact_ip) reference = &tr;
            }
            json metrics = json::object();
            for (const auto& tr : r.trajectories) {
                metrics[std::string(to_string(tr.model))] = metric_value(cfg.metric, tr, reference);
            }
            row["metrics"] = metrics;
            row["status"] = "ok";
        } catch (const std::exception& e) {
            row["status"] = "error";
            row["error"] = error_json(e)["error"];
        }
        rows[i] = std::move(row);
    });

    std::string csv = "# sweep axis=" + std::string(to_string(cfg.axis)) + " metric=" +
                      std::string(to_string(cfg.metric)) + "\n" + std::string(to_string(cfg.axis));
    for (auto m : cfg.base.models) csv += "," + std::string(to_string(m));
    csv += ",status\n";
    for (const json& row : rows) {
        csv += format_number(row["value"].get<double>());
        for (auto m : cfg.base.models) {
            const std::string key(to_string(m));
            const bool ok = row.contains("metrics") && row["metrics"].contains(key);
            csv += "," + format_number(ok ? row["metrics"][key].get<double>() : NAN);
        }
        csv += "," + (row["status"] == "ok" ? std::string("ok") : "error:" + row["error"]["kind"].get<std::string>());
        csv += "\n";
    }
    write_atomic(cfg.base.output_dir / "summary.csv", csv);

    json manifest = {{"tool", tool_json()},
                     {"sweep", to_json(cfg)},
                     {"points", rows},
                     {"files", json::array({{{"path", "summary.csv"},
                                             {"kind", "sweep_summary"},
                                             {"model", "all"},
                                             {"params", to_json(cfg.base.pulse)}}})}};
    write_atomic(cfg.base.output_dir / "manifest.json", manifest.dump(2) + "\n");
    return manifest;
}

json selftest() {
    json checks = json::array();
    bool pass = true;
    auto record = [&](const std::string& name, double value, double limit) {
        const bool ok = value <= limit;
        pass = pass && ok;
        checks.push_back({{"name", name}, {"value", value}, {"limit", limit}, {"pass", ok}});
    };

    double worst = 0.0;
    for (double x : {-10.0, -6.0, -2.0, 0.5, 4.0, 10.0}) {
        for (double y : {-10.0, -3.0, -0.5, 0.0, 2.0, 10.0}) {
            const Complex z(x, y);
            const Complex ref = testing::wofz_reference(z);
            worst = std::max(worst, std::abs(faddeyeva::wofz(z) - ref) / std::abs(ref));
        }
    }
    record("wofz_vs_series_oracle", worst, 1e-10);

    const PulseParams p = PulseParams::resonant(4.0 * std::sqrt(2.0), 2.0, 10.0 * std::sqrt(2.0));
    record("analytic_vs_fft_oracle_l2", testing::analytic_oracle_l2(p, 8.0, 64.0, std::size_t{1} << 19), 1e-6);

    const TimeGrid g{-8.0, 8.0, std::size_t{1} << 16};
    double re_err = 0.0;
    const signal::AnalyticField field(p);
    for (std::size_t i = 0; i < g.count; ++i) {
        const double e = signal::real_field(p, g.at(i));
        if (std::abs(e) > 1e-12 * p.amplitude) {
            re_err = std::max(re_err, std::abs(field.value(g.at(i)).real() - e) / std::abs(e));
        }
    }
    record("real_part_matches_field", re_err, 1e-8);
    record("negative_frequency_energy",
           testing::negative_frequency_fraction(signal::spectrum(signal::sample_analytic(p, g), g)), 1e-10);
    record("quadrature_sigma_t_error",
           std::abs(signal::spectral_moments(signal::sample_quadrature(p, g), g).sigma_t - 0.5), 1e-6);

    return {{"tool", tool_json()}, {"checks", checks}, {"pass", pass}};
}

}  // namespace ultrachirp::cli
