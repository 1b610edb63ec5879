#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "ultrachirp/signal.hpp"

namespace ultrachirp {

/// Which large-|z| term of the analytic signal dominates at a given time.
enum class Dominance { central, outer, transition };

std::string_view to_string(Dominance d);

/// E_a(t) ~ g1(t) + g2(t) for large |z(t)|.
///   g1 = (E0/2) i [A/(sqrt(pi) z) + conj(A)/(sqrt(pi) conj z)],  A = e^{-omega_L^2/(4(1-ib))}
///   g2 = E0 conj(A) e^{-conj(z)^2}  (Im z > 0),  E0 A e^{-z^2}  (Im z <= 0)
struct AsymptoticComponents {
    double t = 0.0;
    Complex z;
    Complex g1;
    Complex g2;
    double log_g1 = 0.0;  ///< ln|g1|, finite even when |g1| underflows
    double log_g2 = 0.0;  ///< ln|g2| = ln E0 - t^2
    Dominance dominant = Dominance::transition;
};

struct PhaseAsymptote {
    double F = 0.0;
    double alpha = 0.0;
    int branch = 0;
    int sign = 1;          ///< -1 for Im z > 0, +1 for Im z <= 0
    double limit = 0.0;    ///< +-pi/2 + 2 pi n, sign of F
    double estimate = 0.0; ///< atan2(F + sign 2e^{-t^2} sin theta_q, 2e^{-t^2} cos theta_q)
};

struct Crossovers {
    double t1 = 0.0;
    double t2 = 0.0;
};

struct AsymptoticRow {
    double t = 0.0;
    double log_field = 0.0;
    double log_g1 = 0.0;
    double log_g2 = 0.0;
    Dominance dominant = Dominance::transition;
};

namespace asymptotics {

/// Relative margin between |g1| and |g2| tagged as transition.
inline constexpr double kTransitionBand = 0.05;
/// asymptotic_phase requires |z(t)| above this.
inline constexpr double kRegimeRadius = 5.0;
inline constexpr double kSearchWindow = 10.0;
inline constexpr double kRootTolerance = 1e-6;

/// Throws SingularPoint when z(t) = 0.
AsymptoticComponents asymptotic_components(const PulseParams& p, double t);

/// F(t) and alpha of the large-|t| phase formula.
double phase_constant(const PulseParams& p);
double phase_amplitude(const PulseParams& p, double t);

/// Throws NotAsymptotic when |z(t)| <= kRegimeRadius.
PhaseAsymptote asymptotic_phase(const PulseParams& p, double t);

/// Roots of ln|g1| - ln|g2| on [-window, 0] and [0, window], by bisection.
/// Throws NoSignChange naming the side without a bracket.
Crossovers crossover_times(const PulseParams& p, double window = kSearchWindow, double tol = kRootTolerance);

/// Time where Im z(t) changes sign; absent for b = 0 (Im z constant).
std::optional<double> imaginary_crossing(const PulseParams& p);

std::vector<AsymptoticRow> component_series(const PulseParams& p, const TimeGrid& grid);

}  // namespace asymptotics
}  // namespace ultrachirp
