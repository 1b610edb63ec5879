#include "ultrachirp/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ultrachirp/errors.hpp"

namespace ultrachirp::diagnostics {

double adiabatic_frequency(double rabi, double rabi_rate, double detuning, double detuning_rate) {
    const double d2 = rabi * rabi + detuning * detuning;
    return (rabi * detuning_rate - detuning * rabi_rate) / d2;
}

AdiabaticityReport adiabaticity_report(SignalModel model, const TimeGrid& grid,
                                       const std::vector<double>& rabi, const std::vector<double>& rabi_rate,
                                       const std::vector<double>& detuning,
                                       const std::vector<double>& detuning_rate, double window) {
    grid.validate();
    const std::size_t n = grid.count;
    if (rabi.size() != n || rabi_rate.size() != n || detuning.size() != n || detuning_rate.size() != n) {
        throw InvalidArgument("adiabaticity series must match the grid length");
    }
    AdiabaticityReport r;
    r.model = model;
    r.times = grid;
    r.window = window;
    r.rabi = rabi;
    r.detuning = detuning;
    r.omega_eff.resize(n);
    r.omega_ad.resize(n);
    r.ratio.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double eff = std::hypot(rabi[i], detuning[i]);
        if (!(eff >= kLevelCrossing)) {
            std::ostringstream msg;
            msg << "effective Rabi frequency " << eff << " vanishes at t = " << grid.at(i);
            throw LevelCrossing(msg.str());
        }
        r.omega_eff[i] = eff;
        r.omega_ad[i] = adiabatic_frequency(rabi[i], rabi_rate[i], detuning[i], detuning_rate[i]);
        r.ratio[i] = std::abs(r.omega_ad[i]) / (2.0 * eff);
        if (std::abs(grid.at(i)) <= window) r.max_ratio = std::max(r.max_ratio, r.ratio[i]);
    }
    r.adiabatic = r.max_ratio < 1.0;
    return r;
}

AdiabaticityReport adiabaticity_report(SignalModel model, const PulseParams& p, const TimeGrid& grid,
                                       double window) {
    p.validate();
    grid.validate();
    const std::size_t n = grid.count;
    std::vector<double> rabi(n), rabi_rate(n), detuning(n), detuning_rate(n);
    if (model == SignalModel::quadrature) {
        for (std::size_t i = 0; i < n; ++i) {
            const double t = grid.at(i);
            rabi[i] = p.amplitude * std::exp(-t * t);
            rabi_rate[i] = -2.0 * t * rabi[i];
            detuning[i] = p.transition - p.carrier - 2.0 * p.chirp * t;
            detuning_rate[i] = -2.0 * p.chirp;
        }
    } else {
        const signal::AnalyticField field(p);
        const auto frequency = [&](double t) { return field.inst_frequency(field.sample(t)); };
        for (std::size_t i = 0; i < n; ++i) {
            const double t = grid.at(i);
            const FieldSample s = field.sample(t);
            rabi[i] = std::abs(s.value);
            rabi_rate[i] = rabi[i] > 0.0 ? (s.derivative * std::conj(s.value)).real() / rabi[i] : 0.0;
            detuning[i] = p.transition - field.inst_frequency(s);
            detuning_rate[i] =
                -(frequency(t + kFrequencyStep) - frequency(t - kFrequencyStep)) / (2.0 * kFrequencyStep);
        }
    }
    return adiabaticity_report(model, grid, rabi, rabi_rate, detuning, detuning_rate, window);
}

ResonanceReport resonance_report(const PulseParams& p, double margin_threshold) {
    p.validate();
    ResonanceReport r;
    r.margin_threshold = margin_threshold;
    if (p.chirp == 0.0) {
        r.margin = std::numeric_limits<double>::infinity();
        r.single_resonance_ok = true;
        return r;
    }
    r.nf_time = -p.carrier / p.chirp;
    r.nf_inside_pulse = std::abs(*r.nf_time) <= kPulseWindow;
    r.margin = 2.0 * p.carrier / (3.0 * std::abs(p.chirp));
    r.single_resonance_ok = r.margin > margin_threshold;
    return r;
}

UnitConversion convert_units(const DimensionalPulse& pulse) {
    if (!std::isfinite(pulse.carrier) || !std::isfinite(pulse.chirp) || !std::isfinite(pulse.rate) ||
        !std::isfinite(pulse.transition)) {
        throw InvalidArgument("pulse quantities must be finite");
    }
    if (!(pulse.rate > 0.0)) throw InvalidArgument("envelope rate a must be positive");
    UnitConversion u;
    const double root = std::sqrt(pulse.rate);
    u.rate = pulse.rate;
    u.carrier = pulse.carrier / root;
    u.chirp = pulse.chirp / pulse.rate;
    u.transition = (pulse.transition == 0.0 ? pulse.carrier : pulse.transition) / root;
    u.sigma_t = 0.5 / root;
    u.sigma_omega = root * std::sqrt(1.0 + u.chirp * u.chirp);
    return u;
}

DimensionalPulse to_dimensional(const PulseParams& p, double rate) {
    if (!std::isfinite(rate) || !(rate > 0.0)) throw InvalidArgument("envelope rate a must be positive");
    const double root = std::sqrt(rate);
    return {p.carrier * root, rate, p.chirp * rate, p.transition * root};
}

}  // namespace ultrachirp::diagnostics
