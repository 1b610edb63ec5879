#pragma once

#include <optional>
#include <vector>

#include "ultrachirp/signal.hpp"

namespace ultrachirp {

/// Adiabatic-following diagnostics of one RWA model on a grid.
///   Omega_d  = sqrt(Omega_R^2 + Delta^2)
///   Omega_Ad = (Omega_R Delta' - Delta Omega_R') / Omega_d^2
///   ratio    = |Omega_Ad| / (2 Omega_d)
struct AdiabaticityReport {
    SignalModel model = SignalModel::quadrature;
    TimeGrid times;
    std::vector<double> rabi;       ///< Omega_R(t)
    std::vector<double> detuning;   ///< Delta(t)
    std::vector<double> omega_eff;
    std::vector<double> omega_ad;
    std::vector<double> ratio;
    double window = 1.5;            ///< half-width of the checked interval
    double max_ratio = 0.0;         ///< max ratio over |t| <= window
    bool adiabatic = true;          ///< max_ratio < 1
};

struct ResonanceReport {
    double nominal_time = 0.0;
    std::optional<double> nf_time;  ///< -omega_L / b, absent for b = 0
    bool nf_inside_pulse = false;   ///< |nf_time| <= 3 sigma_t
    double margin = 0.0;            ///< 2 omega_L / (3 |b|), +inf for b = 0
    double margin_threshold = 3.0;
    bool single_resonance_ok = false;  ///< margin > margin_threshold
};

/// Pulse in SI units: angular frequencies in rad/s, rates in s^-2.
struct DimensionalPulse {
    double carrier = 0.0;     ///< omega_L
    double rate = 1.0;        ///< a, envelope exp(-a t^2)
    double chirp = 0.0;       ///< b
    double transition = 0.0;  ///< omega_0; 0 means equal to the carrier
};

struct UnitConversion {
    double carrier = 0.0;      ///< omega_L / sqrt(a)
    double chirp = 0.0;        ///< b / a
    double transition = 0.0;   ///< omega_0 / sqrt(a)
    double rate = 1.0;         ///< a
    double sigma_t = 0.0;      ///< seconds
    double sigma_omega = 0.0;  ///< rad/s
};

namespace diagnostics {

inline constexpr double kPulseWindow = 1.5;
inline constexpr double kMarginThreshold = 3.0;
inline constexpr double kLevelCrossing = 1e-12;
/// Central-difference step for the analytic frequency derivative.
inline constexpr double kFrequencyStep = 1e-4;

/// Omega_Ad for one sample.
double adiabatic_frequency(double rabi, double rabi_rate, double detuning, double detuning_rate);

/// Generic report from sampled Omega_R, Delta and their derivatives.
/// Throws LevelCrossing when Omega_d < kLevelCrossing anywhere.
AdiabaticityReport adiabaticity_report(SignalModel model, const TimeGrid& grid,
                                       const std::vector<double>& rabi, const std::vector<double>& rabi_rate,
                                       const std::vector<double>& detuning,
                                       const std::vector<double>& detuning_rate,
                                       double window = kPulseWindow);

/// Quadrature: Delta = omega_0 - omega_L - 2bt, Omega_R = E0 e^{-t^2}, exact derivatives.
/// Analytic: Delta = omega_0 - omega_a, Omega_R = |E_a|, omega_a' by central differences.
AdiabaticityReport adiabaticity_report(SignalModel model, const PulseParams& p, const TimeGrid& grid,
                                       double window = kPulseWindow);

ResonanceReport resonance_report(const PulseParams& p, double margin_threshold = kMarginThreshold);

/// Throws InvalidArgument unless a > 0 and all inputs finite.
UnitConversion convert_units(const DimensionalPulse& pulse);
/// Inverse map for a chosen envelope rate a.
DimensionalPulse to_dimensional(const PulseParams& p, double rate);

}  // namespace diagnostics
}  // namespace ultrachirp
