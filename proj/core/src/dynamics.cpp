#include "ultrachirp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "ultrachirp/errors.hpp"

namespace ultrachirp {

std::string_view to_string(HamiltonianModel model) {
    switch (model) {
        case HamiltonianModel::exact_schrodinger: return "exact_schrodinger";
        case HamiltonianModel::exact_ip: return "exact_ip";
        case HamiltonianModel::rwa_quadrature: return "rwa_quadrature";
        case HamiltonianModel::rwa_analytic: return "rwa_analytic";
    }
    throw InvalidArgument("unknown Hamiltonian model tag");
}

HamiltonianModel hamiltonian_model_from_string(std::string_view name) {
    if (name == "exact_schrodinger") return HamiltonianModel::exact_schrodinger;
    if (name == "exact_ip") return HamiltonianModel::exact_ip;
    if (name == "rwa_quadrature") return HamiltonianModel::rwa_quadrature;
    if (name == "rwa_analytic") return HamiltonianModel::rwa_analytic;
    throw InvalidArgument("unknown Hamiltonian model '" + std::string(name) + "'");
}

void IntegratorConfig::validate() const {
    if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_start < t_end)) {
        throw InvalidArgument("integrator window requires finite t_start < t_end");
    }
    if (!(max_step >= 0.0) || !std::isfinite(max_step)) throw InvalidArgument("max_step must be >= 0");
    if (!(rel_tol > 0.0)) throw InvalidArgument("rel_tol must be positive");
    if (store_every == 0) throw InvalidArgument("store_every must be at least 1");
}

double Trajectory::max_p2() const { return *std::max_element(p2.begin(), p2.end()); }

namespace dynamics {

namespace {

constexpr Complex kI{0.0, 1.0};

// H = [[-detuning/2, coupling], [conj(coupling), detuning/2]]
struct Elements {
    double detuning;
    Complex coupling;
};

// Matrix elements in the frame co-rotating with the diagonal,
//   c1 = e^{i phi/2} a1,  c2 = e^{-i phi/2} a2,  phi' = detuning,  phi(t0) = 0,
// where i a1' = g a2 and i a2' = conj(g) a1 with g = coupling e^{-i phi}.
// `phase` is phi up to multiples of 2 pi; it only feeds the rotation back to
// the model picture, where a 2 pi slip is a global sign.
struct FrameElements {
    Complex g;
    double phase;
};

class ModelEvaluator {
public:
    ModelEvaluator(HamiltonianModel model, const PulseParams& p, double t0 = 0.0)
        : model_(model), p_(p), t0_(t0) {
        if (model == HamiltonianModel::rwa_analytic) {
            field_.emplace(p);
            const Complex e0 = field_->value(t0);
            const double mag = std::abs(e0);
            if (mag > 0.0) {
                start_phasor_ = e0 / mag;
                start_arg_ = std::arg(e0);
            }
        }
    }

    Elements operator()(double t) const {
        const double rabi = p_.amplitude * std::exp(-t * t);
        const double theta = p_.carrier * t + p_.chirp * t * t;
        switch (model_) {
            case HamiltonianModel::exact_schrodinger:
                return {p_.transition, rabi * std::cos(theta)};
            case HamiltonianModel::exact_ip:
                return {laser_detuning(t), 0.5 * rabi * (1.0 + std::polar(1.0, -2.0 * theta))};
            case HamiltonianModel::rwa_quadrature:
                return {laser_detuning(t), 0.5 * rabi};
            case HamiltonianModel::rwa_analytic: {
                const FieldSample s = field_->sample(t);
                return {p_.transition - field_->inst_frequency(s), 0.5 * std::abs(s.value)};
            }
        }
        throw InvalidArgument("unknown Hamiltonian model tag");
    }

    FrameElements frame(double t) const {
        const double rabi = p_.amplitude * std::exp(-t * t);
        const double theta = p_.carrier * t + p_.chirp * t * t;
        const double dt = t - t0_;
        switch (model_) {
            case HamiltonianModel::exact_schrodinger: {
                const double phi = p_.transition * dt;
                return {rabi * std::cos(theta) * std::polar(1.0, -phi), phi};
            }
            case HamiltonianModel::exact_ip: {
                const double phi = laser_phase(t);
                return {0.5 * rabi * (std::polar(1.0, -phi) + std::polar(1.0, -phi - 2.0 * theta)), phi};
            }
            case HamiltonianModel::rwa_quadrature: {
                const double phi = laser_phase(t);
                return {0.5 * rabi * std::polar(1.0, -phi), phi};
            }
            case HamiltonianModel::rwa_analytic: {
                // phi = omega_0 (t - t0) - (theta_a(t) - theta_a(t0)), so
                // |E_a|/2 e^{-i phi} = E_a/2 e^{-i omega_0 (t - t0)} conj(u0).
                const Complex ea = field_->value(t);
                const double rot = p_.transition * dt;
                const Complex g = 0.5 * ea * std::polar(1.0, -rot) * std::conj(start_phasor_);
                const double arg = std::abs(ea) > 0.0 ? std::arg(ea) : start_arg_;
                return {g, rot - (arg - start_arg_)};
            }
        }
        throw InvalidArgument("unknown Hamiltonian model tag");
    }

private:
    double laser_detuning(double t) const { return p_.transition - (p_.carrier + 2.0 * p_.chirp * t); }
    // \int_{t0}^{t} laser_detuning
    double laser_phase(double t) const {
        return (p_.transition - p_.carrier) * (t - t0_) - p_.chirp * (t * t - t0_ * t0_);
    }

    HamiltonianModel model_;
    PulseParams p_;
    double t0_;
    std::optional<signal::AnalyticField> field_;
    Complex start_phasor_{1.0, 0.0};
    double start_arg_ = 0.0;
};

double max_envelope(const PulseParams& p, double t_start, double t_end) {
    const double nearest = (t_start <= 0.0 && t_end >= 0.0) ? 0.0 : std::min(std::abs(t_start), std::abs(t_end));
    return p.amplitude * std::exp(-nearest * nearest);
}

struct RunResult {
    std::vector<double> times;
    std::vector<TwoLevelState> states;
    double norm_drift = 0.0;
};

struct Amplitudes {
    Complex a1;
    Complex a2;
};

inline Amplitudes rate(const Complex& g, const Amplitudes& y) {
    return {-kI * g * y.a2, -kI * std::conj(g) * y.a1};
}

inline Amplitudes advance(const Amplitudes& y, const Amplitudes& k, double h) {
    return {y.a1 + h * k.a1, y.a2 + h * k.a2};
}

RunResult run(const ModelEvaluator& eval, double t0, double t1, std::size_t steps, std::size_t store_every,
              const TwoLevelState& initial) {
    const double h = (t1 - t0) / static_cast<double>(steps);
    RunResult out;
    const std::size_t stored = steps / store_every + 2;
    out.times.reserve(stored);
    out.states.reserve(stored);

    Amplitudes y{initial.c1, initial.c2};
    const double norm0 = initial.norm();
    FrameElements start = eval.frame(t0);
    double phase = start.phase;
    auto store = [&](double t) {
        const Complex half = std::polar(1.0, 0.5 * phase);
        out.times.push_back(t);
        out.states.push_back({half * y.a1, std::conj(half) * y.a2});
    };
    store(t0);

    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    for (std::size_t n = 0; n < steps; ++n) {
        const double t = t0 + static_cast<double>(n) * h;
        const double t_next = n + 1 == steps ? t1 : t0 + static_cast<double>(n + 1) * h;
        const FrameElements mid = eval.frame(t + 0.5 * h);
        const FrameElements end = eval.frame(t_next);

        const Amplitudes k1 = rate(start.g, y);
        const Amplitudes k2 = rate(mid.g, advance(y, k1, 0.5 * h));
        const Amplitudes k3 = rate(mid.g, advance(y, k2, 0.5 * h));
        const Amplitudes k4 = rate(end.g, advance(y, k3, h));
        y.a1 += (h / 6.0) * (k1.a1 + 2.0 * k2.a1 + 2.0 * k3.a1 + k4.a1);
        y.a2 += (h / 6.0) * (k1.a2 + 2.0 * k2.a2 + 2.0 * k3.a2 + k4.a2);
        phase = end.phase + kTwoPi * std::round((phase - end.phase) / kTwoPi);
        start = end;

        const double drift = std::abs(std::norm(y.a1) + std::norm(y.a2) - norm0);
        out.norm_drift = std::max(out.norm_drift, drift);
        if ((n + 1) % store_every == 0 || n + 1 == steps) store(t_next);
    }
    return out;
}

}  // namespace

Matrix2 hamiltonian_matrix(HamiltonianModel model, const PulseParams& p, double t) {
    p.validate();
    const Elements e = ModelEvaluator(model, p)(t);
    return {{{Complex(-0.5 * e.detuning), e.coupling}, {std::conj(e.coupling), Complex(0.5 * e.detuning)}}};
}

double max_frequency(HamiltonianModel model, const PulseParams& p, double t_start, double t_end) {
    p.validate();
    const double t_max = std::max(std::abs(t_start), std::abs(t_end));
    const double rabi_max = max_envelope(p, t_start, t_end);
    const double offset = std::abs(p.transition - p.carrier);
    switch (model) {
        case HamiltonianModel::exact_schrodinger:
        case HamiltonianModel::exact_ip:
            return 2.0 * p.carrier + 2.0 * std::abs(p.chirp) * t_max + rabi_max + offset;
        case HamiltonianModel::rwa_quadrature: {
            const double d0 = std::abs(p.transition - p.carrier - 2.0 * p.chirp * t_start);
            const double d1 = std::abs(p.transition - p.carrier - 2.0 * p.chirp * t_end);
            return std::max(d0, d1) + rabi_max;
        }
        case HamiltonianModel::rwa_analytic: {
            // Near-zeros of E_a wind its phase arbitrarily fast while the
            // coupling vanishes; the frame integration carries that winding
            // exactly, so the detuning maximum is taken where the coupling
            // is at least kCouplingFloor of its peak.
            const ModelEvaluator eval(model, p);
            constexpr int kScan = 20000;
            std::vector<Elements> samples(kScan + 1);
            double rabi = 0.0;
            for (int i = 0; i <= kScan; ++i) {
                samples[i] = eval(t_start + (t_end - t_start) * i / kScan);
                rabi = std::max(rabi, 2.0 * std::abs(samples[i].coupling));
            }
            double detuning = 0.0;
            for (const Elements& e : samples) {
                if (2.0 * std::abs(e.coupling) >= kCouplingFloor * rabi) {
                    detuning = std::max(detuning, std::abs(e.detuning));
                }
            }
            return detuning + rabi;
        }
    }
    throw InvalidArgument("unknown Hamiltonian model tag");
}

Trajectory evolve(HamiltonianModel model, const PulseParams& p, const IntegratorConfig& cfg,
                  const TwoLevelState& initial) {
    p.validate();
    cfg.validate();
    if (std::abs(initial.norm() - 1.0) > 1e-12) throw InvalidArgument("initial state must be normalized");

    const double span = cfg.t_end - cfg.t_start;
    const double omega_max = max_frequency(model, p, cfg.t_start, cfg.t_end);
    double h = omega_max > 0.0 ? 2.0 * std::numbers::pi / (kPointsPerPeriod * omega_max) : span;
    if (cfg.max_step > 0.0) h = std::min(h, cfg.max_step);
    auto steps = std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(span / h)));
    std::size_t store_every = cfg.store_every;
    if (cfg.output_intervals > 0) {
        store_every = (steps + cfg.output_intervals - 1) / cfg.output_intervals;
        steps = store_every * cfg.output_intervals;
    }

    const ModelEvaluator eval(model, p, cfg.t_start);
    RunResult coarse = run(eval, cfg.t_start, cfg.t_end, steps, store_every, initial);

    Trajectory traj;
    traj.model = model;
    traj.params = p;
    traj.config = cfg;
    traj.report.omega_max = omega_max;
    traj.report.step = span / static_cast<double>(steps);
    traj.report.steps = steps;
    traj.report.norm_drift = coarse.norm_drift;
    traj.times = std::move(coarse.times);
    traj.states = std::move(coarse.states);
    traj.p2.resize(traj.states.size());
    std::transform(traj.states.begin(), traj.states.end(), traj.p2.begin(),
                   [](const TwoLevelState& s) { return s.p2(); });

    if (traj.report.norm_drift > kMaxNormDrift) {
        std::ostringstream os;
        os << "evolve(" << to_string(model) << "): norm drift " << traj.report.norm_drift << " exceeds "
           << kMaxNormDrift;
        throw AccuracyError("norm_drift", os.str(), traj.report.norm_drift, kMaxNormDrift);
    }

    if (cfg.verify) {
        const RunResult fine = run(eval, cfg.t_start, cfg.t_end, 2 * steps, 2 * store_every, initial);
        double worst = 0.0;
        const std::size_t n = std::min(fine.states.size(), traj.states.size());
        for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(fine.states[i].p2() - traj.p2[i]));
        traj.report.halving_max_dp2 = worst;
        traj.report.verified = true;
        if (worst > cfg.rel_tol) {
            std::ostringstream os;
            os << "evolve(" << to_string(model) << "): step-halving disagreement " << worst << " exceeds rel_tol "
               << cfg.rel_tol;
            throw AccuracyError("accuracy", os.str(), worst, cfg.rel_tol);
        }
    }
    return traj;
}

double max_p2_difference(const Trajectory& a, const Trajectory& b) {
    if (a.times.size() != b.times.size()) throw InvalidArgument("trajectories have different sample counts");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        const double scale = std::max(std::abs(a.times[i]), 1.0);
        if (std::abs(a.times[i] - b.times[i]) > 1e-12 * scale) {
            throw InvalidArgument("trajectories do not share sample times");
        }
        worst = std::max(worst, std::abs(a.p2[i] - b.p2[i]));
    }
    return worst;
}

}  // namespace dynamics
}  // namespace ultrachirp
