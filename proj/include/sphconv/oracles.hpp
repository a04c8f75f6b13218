#ifndef SPHCONV_ORACLES_HPP
#define SPHCONV_ORACLES_HPP

// Independent reference routes used by the verification suites and tests.
// Nothing here is called by the evaluation paths it checks.

#include <complex>

namespace sphconv::oracles {

using Complex = std::complex<double>;

/// log Gamma(z) by the Lanczos approximation (g = 7, 9 terms), with the
/// reflection formula for Re z < 0.5.
Complex log_gamma(Complex z);

/// Legendre function P_nu(cosh(2t)) of complex degree nu = -1/2 + i*lambda/2,
/// summed as cosh(t)^{2 nu} 2F1(-nu, -nu; 1; tanh^2 t).
Complex conical_legendre(Complex lambda, double t);

/// Closed-form Gindikin-Karpelevich quotient in this normalization:
/// c(lambda) = Gamma(i lambda / 2) / (sqrt(pi) Gamma((1 + i lambda)/2)).
Complex c_closed_form(Complex lambda);

/// Tempered spectral density (1/2)|c(lambda)|^{-2} = (pi lambda / 4) tanh(pi lambda / 2).
double density_closed_form(double lambda);

/// Modified Bessel I0(x) by its power series.
double bessel_i0_series(double x);

}  // namespace sphconv::oracles

#endif
