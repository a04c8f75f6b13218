#include "sphconv/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace sphconv::oracles {

namespace {
constexpr double kPi = 3.14159265358979323846;

const double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,  12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
}  // namespace

Complex log_gamma(Complex z) {
  if (z.real() < 0.5) {
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  Complex x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

Complex conical_legendre(Complex lambda, double t) {
  t = std::abs(t);
  if (t < 1e-300) return 1.0;
  const Complex nu = Complex(-0.5, 0.0) + Complex(0.0, 0.5) * lambda;
  const double th = std::tanh(t);
  const double x = th * th;
  // geometric tail ratio x; beyond t ~ 5.7 the series cannot reach 1e-16
  if (1.0 - x < 2e-5)
    throw std::domain_error("conical_legendre: series impractical for this radius");
  const Complex a = -nu;  // 2F1(a, a; 1; x)
  Complex term(1.0, 0.0);
  Complex sum = term;
  for (int k = 0; k < 4000000; ++k) {
    const Complex ak = a + static_cast<double>(k);
    term *= ak * ak * (x / ((k + 1.0) * (k + 1.0)));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  const Complex prefac = std::exp(2.0 * nu * std::log(std::cosh(t)));
  return prefac * sum;
}

Complex c_closed_form(Complex lambda) {
  const Complex il = Complex(0.0, 1.0) * lambda;
  const Complex lg = log_gamma(0.5 * il) - log_gamma(0.5 * (1.0 + il));
  return std::exp(lg) / std::sqrt(kPi);
}

double density_closed_form(double lambda) {
  return kPi * lambda / 4.0 * std::tanh(kPi * lambda / 2.0);
}

double bessel_i0_series(double x) {
  const double q = x * x / 4.0;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

}  // namespace sphconv::oracles
