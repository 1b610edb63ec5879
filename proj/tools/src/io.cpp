#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ultrachirp/errors.hpp"

namespace ultrachirp::cli {

namespace fs = std::filesystem;

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string comment_line(std::string_view model, const PulseParams& p) {
    std::string s = "# model=";
    s += model;
    s += " amplitude=" + format_number(p.amplitude);
    s += " chirp=" + format_number(p.chirp);
    s += " carrier=" + format_number(p.carrier);
    s += " transition=" + format_number(p.transition);
    s += '\n';
    return s;
}

namespace {

void append_row(std::string& out, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) out += ',';
        out += format_number(v);
        first = false;
    }
    out += '\n';
}

}  // namespace

std::string trajectory_csv(const Trajectory& tr) {
    std::string out = comment_line(to_string(tr.model), tr.params);
    out += "t,re_c1,im_c1,re_c2,im_c2,p2\n";
    out.reserve(out.size() + tr.times.size() * 6 * 24);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        const TwoLevelState& s = tr.states[i];
        append_row(out, {tr.times[i], s.c1.real(), s.c1.imag(), s.c2.real(), s.c2.imag(), tr.p2[i]});
    }
    return out;
}

std::string decomposition_csv(const Decomposition& d, const PulseParams& p) {
    std::string out = comment_line(to_string(d.model), p);
    out += "t,field,amplitude,phase,unwrapped_phase,inst_frequency\n";
    for (std::size_t i = 0; i < d.times.count; ++i) {
        const double t = d.times.at(i);
        append_row(out, {t, signal::real_field(p, t), d.amplitude[i], d.phase[i], d.unwrapped_phase[i],
                         d.inst_frequency[i]});
    }
    return out;
}

std::string spectrum_csv(const std::vector<NamedSpectrum>& spectra, const PulseParams& p) {
    std::string names;
    for (const auto& s : spectra) names += (names.empty() ? "" : "+") + s.name;
    std::string out = comment_line(names, p);
    out += "# convention: ";
    out += Spectrum::convention;
    out += "\nomega";
    for (const auto& s : spectra) out += ",re_" + s.name + ",im_" + s.name;
    out += '\n';
    if (spectra.empty()) return out;
    const auto& axis = spectra.front().spectrum.frequencies;
    for (const auto& s : spectra) {
        if (s.spectrum.frequencies != axis) throw InvalidArgument("spectra do not share a frequency axis");
    }
    for (std::size_t i = 0; i < axis.size(); ++i) {
        out += format_number(axis[i]);
        for (const auto& s : spectra) {
            out += ',' + format_number(s.spectrum.values[i].real());
            out += ',' + format_number(s.spectrum.values[i].imag());
        }
        out += '\n';
    }
    return out;
}

std::string adiabaticity_csv(const AdiabaticityReport& r, const PulseParams& p) {
    std::string out = comment_line(to_string(r.model), p);
    out += "t,omega_eff,omega_ad,ratio\n";
    for (std::size_t i = 0; i < r.times.count; ++i) {
        append_row(out, {r.times.at(i), r.omega_eff[i], r.omega_ad[i], r.ratio[i]});
    }
    return out;
}

std::string asymptotics_csv(const std::vector<AsymptoticRow>& rows, const PulseParams& p) {
    std::string out = comment_line("analytic", p);
    out += "t,ln_abs_ea,ln_abs_g1,ln_abs_g2,dominant\n";
    for (const AsymptoticRow& r : rows) {
        out += format_number(r.t) + ',' + format_number(r.log_field) + ',' + format_number(r.log_g1) + ',' +
               format_number(r.log_g2) + ',';
        out += to_string(r.dominant);
        out += '\n';
    }
    return out;
}

void write_atomic(const fs::path& path, std::string_view content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("cannot write " + tmp.string());
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) throw ConfigError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

json to_json(const PulseParams& p) {
    return {{"amplitude", p.amplitude}, {"chirp", p.chirp}, {"carrier", p.carrier}, {"transition", p.transition}};
}

json to_json(const TimeGrid& g) { return {{"start", g.start}, {"end", g.end}, {"count", g.count}}; }

json to_json(const IntegratorConfig& c) {
    return {{"t_start", c.t_start},         {"t_end", c.t_end},
            {"max_step", c.max_step},       {"rel_tol", c.rel_tol},
            {"store_every", c.store_every}, {"output_intervals", c.output_intervals},
            {"verify", c.verify}};
}

json to_json(const ConvergenceReport& r) {
    return {{"omega_max", r.omega_max},
            {"step", r.step},
            {"steps", r.steps},
            {"halving_max_dp2", r.halving_max_dp2},
            {"norm_drift", r.norm_drift},
            {"verified", r.verified}};
}

json to_json(const Closeness& c) {
    return {{"sup_deviation_bound", c.sup_deviation_bound},
            {"l2_deviation", c.l2_deviation},
            {"total_energy", c.total_energy},
            {"closeness_ratio", c.closeness_ratio},
            {"decompositions_close", c.decompositions_close}};
}

json to_json(const ResonanceReport& r) {
    json j = {{"nominal_time", r.nominal_time},
              {"nf_time", r.nf_time ? json(*r.nf_time) : json(nullptr)},
              {"nf_inside_pulse", r.nf_inside_pulse},
              {"margin", std::isfinite(r.margin) ? json(r.margin) : json(nullptr)},
              {"margin_threshold", r.margin_threshold},
              {"single_resonance_ok", r.single_resonance_ok}};
    return j;
}

json to_json(const AdiabaticityReport& r) {
    return {{"model", std::string(to_string(r.model))},
            {"grid", to_json(r.times)},
            {"window", r.window},
            {"max_ratio", r.max_ratio},
            {"adiabatic", r.adiabatic}};
}

json to_json(const UnitConversion& u) {
    return {{"carrier", u.carrier}, {"chirp", u.chirp},     {"transition", u.transition},
            {"rate", u.rate},       {"sigma_t", u.sigma_t}, {"sigma_omega", u.sigma_omega}};
}

json to_json(const DimensionalPulse& d) {
    return {{"omega_L", d.carrier}, {"a", d.rate}, {"b", d.chirp}, {"omega_0", d.transition}};
}

json error_json(const std::exception& e) {
    json j;
    if (const auto* acc = dynamic_cast<const AccuracyError*>(&e)) {
        j = {{"kind", acc->kind()}, {"message", acc->what()}, {"measured", acc->measured()}, {"limit", acc->limit()}};
    } else if (const auto* ov = dynamic_cast<const OverflowError*>(&e)) {
        j = {{"kind", ov->kind()}, {"message", ov->what()}, {"z", {ov->re(), ov->im()}}};
    } else if (const auto* err = dynamic_cast<const Error*>(&e)) {
        j = {{"kind", err->kind()}, {"message", err->what()}};
    } else if (dynamic_cast<const json::exception*>(&e)) {
        j = {{"kind", "config_error"}, {"message", e.what()}};
    } else {
        j = {{"kind", "internal"}, {"message", e.what()}};
    }
    return {{"error", j}};
}

}  // namespace ultrachirp::cli
