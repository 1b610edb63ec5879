#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ultrachirp {

using Complex = std::complex<double>;

/// Dimensionless linearly chirped Gaussian pulse
///   E(t) = amplitude * exp(-t^2) * cos(carrier * t + chirp * t^2)
/// acting on a transition of frequency `transition`.
struct PulseParams {
    double amplitude = 0.0;   ///< field amplitude (Rabi units)
    double chirp = 0.0;       ///< linear chirp rate b
    double carrier = 1.0;     ///< carrier frequency omega_L
    double transition = 1.0;  ///< transition frequency omega_0

    /// Pulse resonant with its transition (omega_0 = omega_L).
    static PulseParams resonant(double amplitude, double chirp, double carrier) {
        return {amplitude, chirp, carrier, carrier};
    }

    /// Throws InvalidArgument unless amplitude >= 0, carrier > 0, all finite.
    void validate() const;

    /// sqrt(1 + b^2).
    double quadrature_bandwidth() const;

    friend bool operator==(const PulseParams&, const PulseParams&) = default;
};

/// Uniform sampling of [start, end] with `count` points, both ends included.
struct TimeGrid {
    double start = -4.0;
    double end = 4.0;
    std::size_t count = 2;

    void validate() const;
    double spacing() const { return (end - start) / static_cast<double>(count - 1); }
    double at(std::size_t i) const { return start + static_cast<double>(i) * spacing(); }
    std::vector<double> points() const;

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

enum class SignalModel { quadrature, analytic };

std::string_view to_string(SignalModel model);
SignalModel signal_model_from_string(std::string_view name);

/// Amplitude/phase/instantaneous-frequency split of the field on a grid.
struct Decomposition {
    SignalModel model = SignalModel::quadrature;
    TimeGrid times;
    std::vector<double> amplitude;
    std::vector<double> phase;            ///< principal branch, (-pi, pi]
    std::vector<double> unwrapped_phase;  ///< continuous companion of `phase`
    std::vector<double> inst_frequency;
};

/// Spectrum S(w) = (2 pi)^{-1/2} \int s(t) exp(-i w t) dt sampled on a
/// strictly increasing frequency axis.
struct Spectrum {
    static constexpr std::string_view convention =
        "S(w) = (2*pi)^(-1/2) * integral s(t) exp(-i w t) dt";
    std::vector<double> frequencies;
    std::vector<Complex> values;
};

struct Moments {
    double mean_time = 0.0;
    double sigma_t = 0.0;
    double mean_frequency = 0.0;
    double sigma_omega = 0.0;
};

struct Closeness {
    double sup_deviation_bound = 0.0;  ///< bound on sup_t |E_a - E_q|
    double l2_deviation = 0.0;         ///< \int |E_a - E_q|^2 dt
    double total_energy = 0.0;         ///< \int |E_q|^2 dt
    double closeness_ratio = 0.0;      ///< omega_L / (sqrt 2 sigma_wq)
    bool decompositions_close = false; ///< closeness_ratio >= kCloseRatio
};

/// Value and time derivative of a complex field sample.
struct FieldSample {
    Complex value;
    Complex derivative;
};

namespace signal {

/// Ratio above which the two decompositions count as close.
inline constexpr double kCloseRatio = 3.0;
/// Relative amplitude floor below which the analytic frequency is reported as 0.
inline constexpr double kAmplitudeFloor = 1e-10;
/// Relative endpoint envelope required by the FFT oracle.
inline constexpr double kOracleEndpointEnvelope = 1e-12;

double real_field(const PulseParams& p, double t);
Complex quadrature_signal(const PulseParams& p, double t);
Complex quadrature_spectrum(const PulseParams& p, double omega);

/// Closed-form analytic signal. Construction keeps Re E_a(t) = E(t) and only
/// evaluates w in the upper half-plane, so no intermediate overflows.
class AnalyticField {
public:
    explicit AnalyticField(const PulseParams& p);

    /// Complex argument z(t) = t sqrt(1-ib) - i omega_L / (2 sqrt(1-ib)).
    Complex z(double t) const { return t * root_ + shift_; }
    Complex value(double t) const { return sample(t).value; }
    FieldSample sample(double t) const;
    /// Im[E_a'/E_a], or 0 below the amplitude floor.
    double inst_frequency(const FieldSample& s) const;
    const PulseParams& params() const { return params_; }

private:
    PulseParams params_;
    Complex root_;    // sqrt(1 - ib)
    Complex shift_;   // -i omega_L / (2 sqrt(1 - ib))
    Complex weight_;  // exp(-omega_L^2 / (4 (1 - ib)))
};

Complex analytic_signal(const PulseParams& p, double t);

/// Discrete analytic signal of sampled E(t): forward FFT, drop negative
/// bins, double positive bins (DC and Nyquist kept once), inverse FFT.
/// Requires a power-of-two count and an endpoint envelope below
/// kOracleEndpointEnvelope (GridTooNarrow otherwise).
std::vector<Complex> analytic_signal_fft_oracle(const PulseParams& p, const TimeGrid& grid);

Decomposition quadrature_decomposition(const PulseParams& p, const TimeGrid& grid);
Decomposition analytic_decomposition(const PulseParams& p, const TimeGrid& grid);

/// Samples of the given signal on a grid.
std::vector<double> sample_real_field(const PulseParams& p, const TimeGrid& grid);
std::vector<Complex> sample_quadrature(const PulseParams& p, const TimeGrid& grid);
std::vector<Complex> sample_analytic(const PulseParams& p, const TimeGrid& grid);

/// Discrete approximation of S(w) for samples on `grid` (any count >= 2).
Spectrum spectrum(std::span<const Complex> samples, const TimeGrid& grid);

Moments spectral_moments(std::span<const Complex> samples, const TimeGrid& grid);
Moments spectral_moments(std::span<const double> samples, const TimeGrid& grid);

Closeness closeness_metrics(const PulseParams& p);

/// Adds multiples of 2 pi so consecutive samples differ by at most pi.
std::vector<double> unwrap(std::span<const double> phase);

}  // namespace signal
}  // namespace ultrachirp
