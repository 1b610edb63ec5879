#include "ultrachirp/faddeyeva.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ultrachirp/errors.hpp"

namespace ultrachirp::faddeyeva {

namespace {

constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;

// Region boundaries in units of the scaled radius (x/xlim)^2 + (y/ylim)^2.
constexpr double kXLim = 6.3;
constexpr double kYLim = 4.4;
constexpr double kSeriesRadius2 = 0.085264;

// exp(-z^2) (1 + erf(iz)) with erf summed as a Maclaurin series in z^2.
Complex power_series(double x, double y) {
    const double xquad = x * x - y * y;
    const double yquad = 2.0 * x * y;
    const double r = x * x + y * y;
    const int n = 8 + static_cast<int>(7.0 * r);
    int j = 2 * n + 1;
    double xsum = 1.0 / j;
    double ysum = 0.0;
    for (int i = n; i >= 1; --i) {
        j -= 2;
        const double xaux = (xsum * xquad - ysum * yquad) / i;
        ysum = (xsum * yquad + ysum * xquad) / i;
        xsum = xaux + 1.0 / j;
    }
    const double u1 = -kTwoOverSqrtPi * (xsum * y + ysum * x) + 1.0;
    const double v1 = kTwoOverSqrtPi * (xsum * x - ysum * y);
    const double daux = std::exp(-xquad);
    const double u2 = daux * std::cos(yquad);
    const double v2 = -daux * std::sin(yquad);
    return {u1 * u2 - v1 * v2, u1 * v2 + v1 * u2};
}

// Gautschi recurrence. h = 0 reduces to the Laplace continued fraction.
Complex gautschi(double x, double y, double h, int kappa, int nu) {
    const double h2 = 2.0 * h;
    double lambda = h > 0.0 ? std::pow(h2, kappa) : 0.0;
    double rx = 0.0;
    double ry = 0.0;
    double sx = 0.0;
    double sy = 0.0;
    for (int n = nu; n >= 0; --n) {
        const int np1 = n + 1;
        double tx = y + h + np1 * rx;
        const double ty = x - np1 * ry;
        const double c = 0.5 / (tx * tx + ty * ty);
        rx = c * tx;
        ry = c * ty;
        if (h > 0.0 && n <= kappa) {
            tx = lambda + sx;
            sx = rx * tx - ry * sy;
            sy = ry * tx + rx * sy;
            lambda /= h2;
        }
    }
    if (h > 0.0) return {kTwoOverSqrtPi * sx, kTwoOverSqrtPi * sy};
    return {kTwoOverSqrtPi * rx, kTwoOverSqrtPi * ry};
}

// First quadrant, x >= 0 and y >= 0.
Complex first_quadrant(double x, double y) {
    const double qrho = (x / kXLim) * (x / kXLim) + (y / kYLim) * (y / kYLim);
    Complex w;
    if (qrho < kSeriesRadius2) {
        w = power_series(x, y);
    } else if (qrho < 1.0) {
        const double q = (1.0 - y / kYLim) * std::sqrt(1.0 - qrho);
        const double h = 1.88 * q;
        const int kappa = static_cast<int>(std::lround(9.0 + 34.0 * q));
        const int nu = static_cast<int>(std::lround(20.0 + 26.0 * q));
        w = gautschi(x, y, h, kappa, nu);
    } else {
        const double rho = std::sqrt(qrho);
        const int nu = static_cast<int>(std::lround(6.0 + 1442.0 / (26.0 * rho + 77.0)));
        w = gautschi(x, y, 0.0, 0, nu);
    }
    if (y == 0.0) w.real(std::exp(-x * x));
    return w;
}

void require_finite(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        std::ostringstream os;
        os << "wofz: non-finite argument (" << z.real() << ", " << z.imag() << ")";
        throw InvalidArgument(os.str());
    }
}

}  // namespace

Complex wofz_upper(Complex z) noexcept {
    const double x = z.real();
    const Complex w = first_quadrant(std::abs(x), z.imag());
    // w(-conj z) = conj w(z)
    return x < 0.0 ? std::conj(w) : w;
}

Complex wofz(Complex z) {
    require_finite(z);
    if (z.imag() >= 0.0) return wofz_upper(z);

    const Complex minus_z2 = -z * z;
    if (minus_z2.real() > std::log(std::numeric_limits<double>::max() / 2.0)) {
        std::ostringstream os;
        os << "wofz: exp(-z^2) overflows at z = (" << z.real() << ", " << z.imag() << ")";
        throw OverflowError(os.str(), z.real(), z.imag());
    }
    return 2.0 * std::exp(minus_z2) - wofz_upper(-z);
}

Complex wofz_derivative(Complex z) {
    const Complex w = wofz(z);
    return -2.0 * z * w + Complex(0.0, kTwoOverSqrtPi);
}

}  // namespace ultrachirp::faddeyeva
