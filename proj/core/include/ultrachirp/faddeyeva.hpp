#pragma once

#include <complex>

namespace ultrachirp::faddeyeva {

using Complex = std::complex<double>;

/// Faddeyeva function w(z) = exp(-z^2) erfc(-iz).
///
/// The upper half-plane is evaluated with a Gautschi-type scheme (power
/// series near the origin, Taylor/continued-fraction hybrid in the central
/// box, Laplace continued fraction outside). The lower half-plane goes
/// through w(z) = 2 exp(-z^2) - w(-z).
///
/// Throws InvalidArgument for non-finite input and OverflowError when
/// exp(-z^2) is not representable.
Complex wofz(Complex z);

/// w'(z) = -2 z w(z) + 2i/sqrt(pi).
Complex wofz_derivative(Complex z);

/// Upper-half-plane core without argument checks; requires Im z >= 0.
/// Used by hot loops that have already arranged for Im z >= 0.
Complex wofz_upper(Complex z) noexcept;

}  // namespace ultrachirp::faddeyeva
