#include "ultrachirp/signal.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ultrachirp/errors.hpp"
#include "ultrachirp/faddeyeva.hpp"

namespace ultrachirp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

bool finite(double v) { return std::isfinite(v); }

// The FFTW planner is not reentrant; execution on distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

enum class Direction { forward, backward };

std::vector<Complex> fft(std::span<const Complex> in, Direction dir) {
    const int n = static_cast<int>(in.size());
    std::vector<Complex> out(in.begin(), in.end());
    auto* data = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(n, data, data, dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

double principal(double phase) {
    double r = std::remainder(phase, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

}  // namespace

void PulseParams::validate() const {
    if (!finite(amplitude) || !finite(chirp) || !finite(carrier) || !finite(transition)) {
        throw InvalidArgument("pulse parameters must be finite");
    }
    if (amplitude < 0.0) throw InvalidArgument("pulse amplitude must be non-negative");
    if (carrier <= 0.0) throw InvalidArgument("carrier frequency must be positive");
}

double PulseParams::quadrature_bandwidth() const { return std::sqrt(1.0 + chirp * chirp); }

void TimeGrid::validate() const {
    if (!finite(start) || !finite(end)) throw InvalidArgument("time grid bounds must be finite");
    if (!(start < end)) throw InvalidArgument("time grid requires start < end");
    if (count < 2) throw InvalidArgument("time grid requires at least two samples");
}

std::vector<double> TimeGrid::points() const {
    std::vector<double> t(count);
    for (std::size_t i = 0; i < count; ++i) t[i] = at(i);
    return t;
}

std::string_view to_string(SignalModel model) {
    return model == SignalModel::quadrature ? "quadrature" : "analytic";
}

SignalModel signal_model_from_string(std::string_view name) {
    if (name == "quadrature") return SignalModel::quadrature;
    if (name == "analytic") return SignalModel::analytic;
    throw InvalidArgument("unknown signal model '" + std::string(name) + "'");
}

namespace signal {

double real_field(const PulseParams& p, double t) {
    return p.amplitude * std::exp(-t * t) * std::cos(p.carrier * t + p.chirp * t * t);
}

Complex quadrature_signal(const PulseParams& p, double t) {
    const double theta = p.carrier * t + p.chirp * t * t;
    const double envelope = p.amplitude * std::exp(-t * t);
    return {envelope * std::cos(theta), envelope * std::sin(theta)};
}

Complex quadrature_spectrum(const PulseParams& p, double omega) {
    const Complex one_minus_ib(1.0, -p.chirp);
    const double d = omega - p.carrier;
    return p.amplitude * std::exp(-d * d / (4.0 * one_minus_ib)) / std::sqrt(2.0 * one_minus_ib);
}

AnalyticField::AnalyticField(const PulseParams& p) : params_(p) {
    p.validate();
    const Complex one_minus_ib(1.0, -p.chirp);
    root_ = std::sqrt(one_minus_ib);
    shift_ = -kI * p.carrier / (2.0 * root_);
    weight_ = std::exp(-p.carrier * p.carrier / (4.0 * one_minus_ib));
}

// With A = exp(-omega_L^2/(4(1-ib))) one has A exp(-z^2) = exp(-t^2 + i theta_q),
// and conj(w(u)) = w(-conj u). Reflecting whichever of w(z), w(z*) lies in the
// lower half-plane turns E_a into
//   Im z <= 0:  E_a = E_q       - i E0 Im[A w(-z)]
//   Im z >  0:  E_a = conj(E_q) + i E0 Im[A w(z)]
FieldSample AnalyticField::sample(double t) const {
    const PulseParams& p = params_;
    const Complex eq = quadrature_signal(p, t);
    const Complex deq = eq * Complex(-2.0 * t, p.carrier + 2.0 * p.chirp * t);
    const Complex zt = z(t);
    const Complex two_i_a = 2.0 * kI * std::numbers::inv_sqrtpi * weight_;
    const double e0 = p.amplitude;
    if (zt.imag() <= 0.0) {
        const Complex x = weight_ * faddeyeva::wofz_upper(-zt);
        const Complex dx = -root_ * (2.0 * zt * x + two_i_a);
        return {eq - kI * (e0 * x.imag()), deq - kI * (e0 * dx.imag())};
    }
    const Complex y = weight_ * faddeyeva::wofz_upper(zt);
    const Complex dy = root_ * (-2.0 * zt * y + two_i_a);
    return {std::conj(eq) + kI * (e0 * y.imag()), std::conj(deq) + kI * (e0 * dy.imag())};
}

double AnalyticField::inst_frequency(const FieldSample& s) const {
    if (std::abs(s.value) <= kAmplitudeFloor * params_.amplitude) return 0.0;
    return (s.derivative / s.value).imag();
}

Complex analytic_signal(const PulseParams& p, double t) { return AnalyticField(p).value(t); }

std::vector<double> sample_real_field(const PulseParams& p, const TimeGrid& grid) {
    grid.validate();
    std::vector<double> out(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) out[i] = real_field(p, grid.at(i));
    return out;
}

std::vector<Complex> sample_quadrature(const PulseParams& p, const TimeGrid& grid) {
    grid.validate();
    std::vector<Complex> out(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) out[i] = quadrature_signal(p, grid.at(i));
    return out;
}

std::vector<Complex> sample_analytic(const PulseParams& p, const TimeGrid& grid) {
    grid.validate();
    const AnalyticField field(p);
    std::vector<Complex> out(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) out[i] = field.value(grid.at(i));
    return out;
}

std::vector<Complex> analytic_signal_fft_oracle(const PulseParams& p, const TimeGrid& grid) {
    p.validate();
    grid.validate();
    if (!is_power_of_two(grid.count)) {
        throw InvalidArgument("FFT oracle requires a power-of-two sample count");
    }
    const double edge = std::max(std::exp(-grid.start * grid.start), std::exp(-grid.end * grid.end));
    if (edge >= kOracleEndpointEnvelope) {
        std::ostringstream os;
        os << "FFT oracle grid [" << grid.start << ", " << grid.end
           << "] too narrow: endpoint envelope " << edge << " >= " << kOracleEndpointEnvelope;
        throw GridTooNarrow(os.str());
    }
    const std::size_t n = grid.count;
    std::vector<Complex> samples(n);
    for (std::size_t i = 0; i < n; ++i) samples[i] = real_field(p, grid.at(i));

    std::vector<Complex> bins = fft(samples, Direction::forward);
    const std::size_t half = n / 2;
    for (std::size_t k = 1; k < half; ++k) bins[k] *= 2.0;
    for (std::size_t k = half + 1; k < n; ++k) bins[k] = 0.0;

    std::vector<Complex> out = fft(bins, Direction::backward);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : out) v *= scale;
    return out;
}

std::vector<double> unwrap(std::span<const double> phase) {
    std::vector<double> out(phase.begin(), phase.end());
    double offset = 0.0;
    for (std::size_t i = 1; i < phase.size(); ++i) {
        const double jump = phase[i] - phase[i - 1];
        offset -= 2.0 * kPi * std::round(jump / (2.0 * kPi));
        out[i] = phase[i] + offset;
    }
    return out;
}

Decomposition quadrature_decomposition(const PulseParams& p, const TimeGrid& grid) {
    p.validate();
    grid.validate();
    Decomposition d;
    d.model = SignalModel::quadrature;
    d.times = grid;
    d.amplitude.resize(grid.count);
    d.phase.resize(grid.count);
    d.unwrapped_phase.resize(grid.count);
    d.inst_frequency.resize(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double t = grid.at(i);
        const double theta = p.carrier * t + p.chirp * t * t;
        d.amplitude[i] = p.amplitude * std::exp(-t * t);
        d.unwrapped_phase[i] = theta;
        d.phase[i] = principal(theta);
        d.inst_frequency[i] = p.carrier + 2.0 * p.chirp * t;
    }
    return d;
}

Decomposition analytic_decomposition(const PulseParams& p, const TimeGrid& grid) {
    grid.validate();
    const AnalyticField field(p);
    Decomposition d;
    d.model = SignalModel::analytic;
    d.times = grid;
    d.amplitude.resize(grid.count);
    d.phase.resize(grid.count);
    d.inst_frequency.resize(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) {
        const FieldSample s = field.sample(grid.at(i));
        d.amplitude[i] = std::abs(s.value);
        d.phase[i] = principal(std::arg(s.value));
        d.inst_frequency[i] = field.inst_frequency(s);
    }
    d.unwrapped_phase = unwrap(d.phase);
    return d;
}

Spectrum spectrum(std::span<const Complex> samples, const TimeGrid& grid) {
    grid.validate();
    if (samples.size() != grid.count) throw InvalidArgument("spectrum: sample count does not match grid");
    const std::size_t n = samples.size();
    const double dt = grid.spacing();
    const std::vector<Complex> bins = fft(samples, Direction::forward);

    Spectrum s;
    s.frequencies.resize(n);
    s.values.resize(n);
    const auto half = static_cast<long long>(n / 2);
    const double dw = 2.0 * kPi / (static_cast<double>(n) * dt);
    const double norm = dt / std::sqrt(2.0 * kPi);
    for (std::size_t j = 0; j < n; ++j) {
        const long long k = static_cast<long long>(j) - half;
        const std::size_t idx = k < 0 ? static_cast<std::size_t>(k + static_cast<long long>(n))
                                      : static_cast<std::size_t>(k);
        const double w = dw * static_cast<double>(k);
        s.frequencies[j] = w;
        s.values[j] = norm * std::polar(1.0, -w * grid.start) * bins[idx];
    }
    return s;
}

namespace {

// Mean and standard deviation of x under non-negative weights.
std::pair<double, double> weighted_moments(std::span<const double> x, std::span<const double> weight) {
    double total = 0.0;
    double first = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        total += weight[i];
        first += weight[i] * x[i];
    }
    if (!(total > 0.0)) throw DegenerateInput("spectral_moments: series has zero energy");
    const double mean = first / total;
    double second = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - mean;
        second += weight[i] * d * d;
    }
    return {mean, std::sqrt(second / total)};
}

}  // namespace

Moments spectral_moments(std::span<const Complex> samples, const TimeGrid& grid) {
    grid.validate();
    if (samples.size() != grid.count) throw InvalidArgument("spectral_moments: sample count does not match grid");
    std::vector<double> times = grid.points();
    std::vector<double> weight(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) weight[i] = std::norm(samples[i]);
    const auto [mt, st] = weighted_moments(times, weight);

    const Spectrum s = spectrum(samples, grid);
    std::vector<double> sw(s.values.size());
    for (std::size_t i = 0; i < sw.size(); ++i) sw[i] = std::norm(s.values[i]);
    const auto [mw, sigw] = weighted_moments(s.frequencies, sw);
    return {mt, st, mw, sigw};
}

Moments spectral_moments(std::span<const double> samples, const TimeGrid& grid) {
    std::vector<Complex> c(samples.begin(), samples.end());
    return spectral_moments(c, grid);
}

namespace {

// Adaptive bisection over 61-point Gauss-Kronrod panels; a panel is accepted
// once its error estimate is below its share of the absolute tolerance and
// below kRelTol of its own magnitude, so far tails stay resolved.
template <class F>
double integrate_abs(F&& f, double a, double b, double tol, int depth = 0) {
    using boost::math::quadrature::gauss_kronrod;
    constexpr double kRelTol = 1e-10;
    double error = 0.0;
    double l1 = 0.0;
    const double value = gauss_kronrod<double, 61>::integrate(f, a, b, 0, 0.0, &error, &l1);
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * l1;
    if (error <= std::max(std::min(tol, kRelTol * l1), roundoff) || depth >= 30) return value;
    const double mid = 0.5 * (a + b);
    return integrate_abs(f, a, mid, 0.5 * tol, depth + 1) + integrate_abs(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace

Closeness closeness_metrics(const PulseParams& p) {
    p.validate();
    const double sigma = p.quadrature_bandwidth();
    const double lower = -20.0 * sigma - std::abs(p.carrier);
    const double tol = 1e-14 * p.amplitude * p.amplitude;

    Closeness c;
    const double sup_integral =
        integrate_abs([&](double w) { return std::abs(quadrature_spectrum(p, w)); }, lower, 0.0, tol);
    const double l2_integral =
        integrate_abs([&](double w) { return std::norm(quadrature_spectrum(p, w)); }, lower, 0.0, tol);
    c.sup_deviation_bound = 2.0 / std::sqrt(2.0 * kPi) * sup_integral;
    c.l2_deviation = 2.0 * l2_integral;
    c.total_energy = p.amplitude * p.amplitude * std::sqrt(kPi / 2.0);
    c.closeness_ratio = p.carrier / (std::numbers::sqrt2 * sigma);
    c.decompositions_close = c.closeness_ratio >= kCloseRatio;
    return c;
}

}  // namespace signal
}  // namespace ultrachirp
