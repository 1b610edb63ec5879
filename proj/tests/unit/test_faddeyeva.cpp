#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ultrachirp/errors.hpp"
#include "ultrachirp/faddeyeva.hpp"
#include "wofz_oracle.hpp"

namespace {

using ultrachirp::faddeyeva::Complex;
using ultrachirp::faddeyeva::wofz;
using ultrachirp::faddeyeva::wofz_derivative;

double rel(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

// 40-digit values from an independent arbitrary-precision erfc.
struct Frozen {
    Complex z;
    Complex w;
};
const Frozen kFrozen[] = {
    {{0.0, 1.0}, {0.42758357615580700441, 0.0}},
    {{5.0, 0.0}, {1.3887943864964020595e-11, 0.11524596183093658848}},
    {{1.0, 0.0}, {0.3678794411714423216, 0.60715770584139372912}},
    {{1.0, 1.0}, {0.30474420525691259246, 0.20821893820283162729}},
    {{3.0, -2.0}, {-0.081339079928627360454, 0.12108616246299844894}},
    {{-2.0, 0.5}, {0.10335882374136665895, -0.28478588475009374558}},
    {{0.1, 7.0}, {0.079784545146282251494, 0.001117627391958700134}},
    {{8.0, -9.0}, {42085048.591562719426, -23721206.772211093381}},
};

TEST(Faddeyeva, OriginIsOne) {
    const Complex w = wofz(0.0);
    EXPECT_NEAR(w.real(), 1.0, 1e-16);
    EXPECT_EQ(w.imag(), 0.0);
}

TEST(Faddeyeva, FrozenValues) {
    for (const auto& f : kFrozen) {
        EXPECT_LT(rel(wofz(f.z), f.w), 1e-13) << "z = " << f.z;
    }
}

TEST(Faddeyeva, ImaginaryUnitIsScaledErfc) {
    const Complex w = wofz({0.0, 1.0});
    EXPECT_NEAR(w.real(), std::exp(1.0) * std::erfc(1.0), 1e-13 * w.real());
    EXPECT_NEAR(w.imag(), 0.0, 1e-16);
}

TEST(Faddeyeva, RealAxisLeadingAsymptote) {
    const Complex w = wofz(5.0);
    const double leading = std::numbers::inv_sqrtpi / 5.0;
    // next term of i/(sqrt(pi) z) (1 + 1/(2 z^2) + ...) is 2%
    EXPECT_NEAR(w.imag() / leading, 1.0 + 1.0 / 50.0, 2e-3);
    EXPECT_NEAR(w.real(), std::exp(-25.0), 1e-22);
}

TEST(Faddeyeva, SeriesOracleSelfCheck) {
    for (const auto& f : kFrozen) {
        EXPECT_LT(rel(ultrachirp::testing::wofz_reference(f.z), f.w), 1e-15) << "z = " << f.z;
    }
}

TEST(Faddeyeva, AccuracyGridAgainstSeriesOracle) {
    double worst = 0.0;
    Complex at;
    for (int i = -10; i <= 10; ++i) {
        for (int j = -10; j <= 10; ++j) {
            const Complex z(i, j);
            const double e = rel(wofz(z), ultrachirp::testing::wofz_reference(z));
            if (e > worst) {
                worst = e;
                at = z;
            }
        }
    }
    EXPECT_LE(worst, 1e-10) << "worst at " << at;
}

TEST(Faddeyeva, RandomPointsAgainstSeriesOracle) {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int k = 0; k < 80; ++k) {
        const Complex z(u(rng), u(rng));
        EXPECT_LE(rel(wofz(z), ultrachirp::testing::wofz_reference(z)), 1e-10) << "z = " << z;
    }
}

TEST(Faddeyeva, RegionBoundaries) {
    // Points straddling the internal switch radii.
    for (double r : {0.5, 0.9, 1.2, 1.8, 2.5, 3.9, 4.4, 5.5, 6.3}) {
        for (double angle : {0.0, 0.3, 0.8, 1.2, 1.5707963}) {
            const Complex z = std::polar(r, angle);
            EXPECT_LE(rel(wofz(z), ultrachirp::testing::wofz_reference(z)), 1e-12) << "z = " << z;
        }
    }
}

TEST(Faddeyeva, Reflection) {
    for (int i = -7; i <= 7; ++i) {
        for (int j = -7; j <= 7; ++j) {
            const Complex z(0.7 * i + 0.05, 0.7 * j - 0.03);
            const Complex lhs = wofz(z) + wofz(-z);
            const Complex rhs = 2.0 * std::exp(-z * z);
            EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::max(std::abs(rhs), std::abs(wofz(z))))
                << "z = " << z;
        }
    }
}

TEST(Faddeyeva, Conjugation) {
    for (int i = -7; i <= 7; ++i) {
        for (int j = -7; j <= 7; ++j) {
            const Complex z(0.7 * i + 0.05, 0.7 * j - 0.03);
            EXPECT_LE(rel(wofz(std::conj(-z)), std::conj(wofz(z))), 1e-10) << "z = " << z;
        }
    }
}

TEST(Faddeyeva, RealAxisRealPart) {
    for (double x = -9.5; x <= 9.5; x += 0.25) {
        const double want = std::exp(-x * x);
        EXPECT_LE(std::abs(wofz(x).real() - want), 1e-12 * want) << "x = " << x;
    }
}

TEST(Faddeyeva, DerivativeExamples) {
    const Complex d0 = wofz_derivative(0.0);
    EXPECT_NEAR(d0.real(), 0.0, 1e-16);
    EXPECT_NEAR(d0.imag(), 2.0 * std::numbers::inv_sqrtpi, 1e-15);

    const Complex i(0.0, 1.0);
    const Complex want = -2.0 * i * kFrozen[0].w + 2.0 * i * std::numbers::inv_sqrtpi;
    EXPECT_LT(rel(wofz_derivative(i), want), 1e-13);
    EXPECT_NEAR(wofz_derivative(i).imag(), 0.27321201478389856507, 1e-14);
}

TEST(Faddeyeva, DerivativeMatchesFiniteDifferences) {
    constexpr double h = 1e-5;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const Complex z(-4.5 + i, -4.5 + j);
            const Complex fd = (wofz(z + h) - wofz(z - h)) / (2.0 * h);
            EXPECT_LE(rel(wofz_derivative(z), fd), 1e-7) << "z = " << z;
        }
    }
    const Complex fd1 = (wofz(1.0 + h) - wofz(1.0 - h)) / (2.0 * h);
    EXPECT_LE(rel(wofz_derivative(1.0), fd1), 1e-7);
}

TEST(Faddeyeva, UpperCoreMatchesChecked) {
    for (double x : {-6.0, -1.0, 0.0, 0.3, 2.0, 11.0}) {
        for (double y : {0.0, 0.2, 1.0, 5.0, 30.0}) {
            EXPECT_EQ(ultrachirp::faddeyeva::wofz_upper({x, y}), wofz({x, y}));
        }
    }
}

TEST(Faddeyeva, FarField) {
    const Complex z(1e6, 1e3);
    const Complex asym = Complex(0.0, std::numbers::inv_sqrtpi) / z;
    EXPECT_LT(rel(wofz(z), asym), 1e-11);
    EXPECT_TRUE(std::isfinite(std::abs(wofz({0.0, 1e300}))));
}

TEST(Faddeyeva, NonFiniteInputRejected) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    EXPECT_THROW(wofz({nan, 0.0}), ultrachirp::InvalidArgument);
    EXPECT_THROW(wofz({0.0, inf}), ultrachirp::InvalidArgument);
    EXPECT_THROW(wofz_derivative({inf, 1.0}), ultrachirp::InvalidArgument);
}

TEST(Faddeyeva, LowerHalfPlaneOverflowCarriesArgument) {
    try {
        wofz({0.5, -30.0});
        FAIL() << "expected OverflowError";
    } catch (const ultrachirp::OverflowError& e) {
        EXPECT_EQ(e.re(), 0.5);
        EXPECT_EQ(e.im(), -30.0);
        EXPECT_EQ(e.kind(), "overflow");
    }
}

}  // namespace
