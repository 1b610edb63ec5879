#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "ultrachirp/signal.hpp"

namespace ultrachirp {

enum class HamiltonianModel { exact_schrodinger, exact_ip, rwa_quadrature, rwa_analytic };

std::string_view to_string(HamiltonianModel model);
HamiltonianModel hamiltonian_model_from_string(std::string_view name);

struct TwoLevelState {
    Complex c1{1.0, 0.0};
    Complex c2{0.0, 0.0};

    double norm() const { return std::norm(c1) + std::norm(c2); }
    double p2() const { return std::norm(c2); }
};

/// Row-major 2x2 complex matrix.
using Matrix2 = std::array<std::array<Complex, 2>, 2>;

struct IntegratorConfig {
    double t_start = -4.0;
    double t_end = 4.0;
    /// Upper bound on the step; 0 selects the model's resolution limit alone.
    double max_step = 0.0;
    /// Allowed max |P2(h) - P2(h/2)| at the stored samples.
    double rel_tol = 1e-4;
    /// Keep one state every `store_every` steps (the final state is always kept).
    std::size_t store_every = 100;
    /// When non-zero, overrides store_every: the step count is rounded up to a
    /// multiple of this and exactly output_intervals + 1 uniformly spaced
    /// states are stored, so runs of different models share sample times.
    std::size_t output_intervals = 0;
    /// Disable only for diagnostics; accepted runs always carry a halving certificate.
    bool verify = true;

    void validate() const;
};

struct ConvergenceReport {
    double omega_max = 0.0;   ///< fastest frequency resolved by the step rule
    double step = 0.0;        ///< step actually used
    std::size_t steps = 0;
    double halving_max_dp2 = 0.0;  ///< max |P2(h) - P2(h/2)|
    double norm_drift = 0.0;       ///< max_t | |c1|^2 + |c2|^2 - 1 |
    bool verified = false;
};

struct Trajectory {
    HamiltonianModel model = HamiltonianModel::exact_ip;
    PulseParams params;
    IntegratorConfig config;
    std::vector<double> times;
    std::vector<TwoLevelState> states;
    std::vector<double> p2;
    ConvergenceReport report;

    double final_p2() const { return p2.back(); }
    double max_p2() const;
};

namespace dynamics {

/// Norm drift above this raises AccuracyError("norm_drift").
inline constexpr double kMaxNormDrift = 1e-6;
/// Points resolved per period of the fastest frequency.
inline constexpr double kPointsPerPeriod = 50.0;
/// Relative coupling below which analytic-model detuning spikes are not resolved.
inline constexpr double kCouplingFloor = 1e-2;

/// Hamiltonian in the model's picture, hbar = 1:
///   H = [[-D/2, V], [conj V, D/2]].
Matrix2 hamiltonian_matrix(HamiltonianModel model, const PulseParams& p, double t);

/// Fastest frequency present in the model's matrix elements over the window.
double max_frequency(HamiltonianModel model, const PulseParams& p, double t_start, double t_end);

/// Integrates i d/dt psi = H(t) psi with fixed-step classical RK4.
///
/// Step: min(max_step, 2 pi / (50 omega_max)), rounded so the window holds an
/// integer number of steps. The diagonal of H is carried as an exact phase
/// (RK4 runs in the frame co-rotating with it and the state is rotated back),
/// so the returned amplitudes live in the model's own picture. With
/// cfg.verify, the run is repeated at half step; a P2 disagreement above
/// rel_tol raises AccuracyError("accuracy"). Norm drift above kMaxNormDrift
/// raises AccuracyError("norm_drift").
Trajectory evolve(HamiltonianModel model, const PulseParams& p, const IntegratorConfig& cfg,
                  const TwoLevelState& initial = {});

/// max_t |P2_a(t) - P2_b(t)|. Both trajectories must share sample times
/// (set IntegratorConfig::output_intervals); InvalidArgument otherwise.
double max_p2_difference(const Trajectory& a, const Trajectory& b);

}  // namespace dynamics
}  // namespace ultrachirp
