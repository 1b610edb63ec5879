#include "ultrachirp/asymptotics.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "ultrachirp/errors.hpp"

namespace ultrachirp {

std::string_view to_string(Dominance d) {
    switch (d) {
        case Dominance::central: return "central";
        case Dominance::outer: return "outer";
        case Dominance::transition: return "transition";
    }
    return "transition";
}

namespace asymptotics {

namespace {

constexpr Complex kI{0.0, 1.0};

// A = exp(-omega_L^2 / (4 (1 - ib))) split as exp(log_mod) * unit.
struct Weight {
    double log_mod;
    Complex unit;
};

Weight weight(const PulseParams& p) {
    const double b2 = 1.0 + p.chirp * p.chirp;
    const double s = p.carrier * p.carrier / (4.0 * b2);
    return {-s, std::polar(1.0, -p.chirp * s)};
}

}  // namespace

AsymptoticComponents asymptotic_components(const PulseParams& p, double t) {
    p.validate();
    const signal::AnalyticField field(p);
    AsymptoticComponents c;
    c.t = t;
    c.z = field.z(t);
    if (c.z == Complex(0.0, 0.0)) throw SingularPoint("z(t) = 0, the 1/z terms are singular");

    const Weight a = weight(p);
    // g1 = i E0 Re(A/z) / sqrt(pi)
    const double re = (a.unit / c.z).real();
    const double scale = std::exp(a.log_mod);
    c.g1 = kI * (p.amplitude * std::numbers::inv_sqrtpi * scale * re);
    c.log_g1 = std::log(p.amplitude * std::numbers::inv_sqrtpi * std::abs(re)) + a.log_mod;

    // A e^{-z^2} = e^{-t^2 + i theta_q}, and the other branch is its conjugate.
    const Complex eq = signal::quadrature_signal(p, t);
    c.g2 = c.z.imag() > 0.0 ? std::conj(eq) : eq;
    c.log_g2 = std::log(p.amplitude) - t * t;

    const double band = std::log1p(kTransitionBand);
    const double d = c.log_g2 - c.log_g1;
    c.dominant = d > band ? Dominance::central : d < -band ? Dominance::outer : Dominance::transition;
    return c;
}

double phase_constant(const PulseParams& p) {
    const double b2 = 1.0 + p.chirp * p.chirp;
    return p.chirp * p.carrier * p.carrier / (4.0 * b2) + 0.5 * std::atan(p.chirp);
}

double phase_amplitude(const PulseParams& p, double t) {
    const double b2 = 1.0 + p.chirp * p.chirp;
    const double alpha = phase_constant(p);
    const double u = p.chirp * t + 0.5 * p.carrier;
    const double num = 2.0 * std::pow(b2, 0.25) * (t * std::cos(alpha) + u * std::sin(alpha));
    return num / (std::sqrt(std::numbers::pi) * (t * t + u * u)) *
           std::exp(-p.carrier * p.carrier / (4.0 * b2));
}

PhaseAsymptote asymptotic_phase(const PulseParams& p, double t) {
    p.validate();
    const signal::AnalyticField field(p);
    const Complex z = field.z(t);
    if (!(std::abs(z) > kRegimeRadius)) {
        std::ostringstream msg;
        msg << "|z(" << t << ")| = " << std::abs(z) << " is not above " << kRegimeRadius;
        throw NotAsymptotic(msg.str());
    }
    PhaseAsymptote a;
    a.alpha = phase_constant(p);
    a.F = phase_amplitude(p, t);
    a.sign = z.imag() > 0.0 ? -1 : 1;
    const double theta = p.carrier * t + p.chirp * t * t;
    const double g = 2.0 * std::exp(-t * t);
    a.estimate = std::atan2(a.F + a.sign * g * std::sin(theta), g * std::cos(theta));
    a.limit = std::copysign(0.5 * std::numbers::pi, a.F) + 2.0 * std::numbers::pi * a.branch;
    return a;
}

Crossovers crossover_times(const PulseParams& p, double window, double tol) {
    p.validate();
    if (!(window > 0.0) || !(tol > 0.0)) throw InvalidArgument("window and tolerance must be positive");
    const auto gap = [&](double t) {
        const AsymptoticComponents c = asymptotic_components(p, t);
        return c.log_g1 - c.log_g2;
    };
    const auto bisect = [&](double lo, double hi, const char* side) {
        double flo = gap(lo);
        const double fhi = gap(hi);
        if (!(flo * fhi < 0.0)) {
            throw NoSignChange(std::string("no |g1| = |g2| crossover on the ") + side + " side");
        }
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            const double fm = gap(mid);
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };
    return {bisect(-window, 0.0, "negative"), bisect(0.0, window, "positive")};
}

std::optional<double> imaginary_crossing(const PulseParams& p) {
    p.validate();
    const signal::AnalyticField field(p);
    const double slope = (field.z(1.0) - field.z(0.0)).imag();
    if (slope == 0.0) return std::nullopt;
    return -field.z(0.0).imag() / slope;
}

std::vector<AsymptoticRow> component_series(const PulseParams& p, const TimeGrid& grid) {
    grid.validate();
    const signal::AnalyticField field(p);
    std::vector<AsymptoticRow> rows;
    rows.reserve(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double t = grid.at(i);
        const AsymptoticComponents c = asymptotic_components(p, t);
        rows.push_back({t, std::log(std::abs(field.value(t))), c.log_g1, c.log_g2, c.dominant});
    }
    return rows;
}

}  // namespace asymptotics
}  // namespace ultrachirp
