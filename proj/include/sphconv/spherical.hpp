#ifndef SPHCONV_SPHERICAL_HPP
#define SPHCONV_SPHERICAL_HPP

#include <vector>

#include "sphconv/group.hpp"
#include "sphconv/quadrature.hpp"

namespace sphconv {

/// Spectral parameter lambda in the complex plane, identified through
/// evaluation on H1 so that rho corresponds to 1. The tempered line is
/// real lambda; the Weyl group acts by lambda -> -lambda.
using SpectralParam = Complex;

/// phi_lambda(g): the K-average of exp((i lambda - 1) * H-coordinate).
/// Below the radius switch the defining circle integral is evaluated on g
/// itself (node count grows like e^{2t} to track the integrand's shrinking
/// analyticity strip); beyond it the same integral is computed after the
/// exact change of variables that moves the K-average onto [0, 2t], which
/// stays well-conditioned for every radius.
Complex phi(SpectralParam lambda, const GroupElement& g, const QuadratureSpec& q,
            Warnings* w = nullptr);

/// phi_lambda(a_t) for t >= 0.
Complex phi_radial(SpectralParam lambda, double t, const QuadratureSpec& q,
                   Warnings* w = nullptr);

/// Xi = phi_0: positive, <= 1, K-bi-invariant.
double xi(const GroupElement& g, const QuadratureSpec& q, Warnings* w = nullptr);

/// Piecewise-Chebyshev interpolant of t -> e^t phi_lambda(a_t) on [0, t_max].
/// Panel width tracks the oscillation rate |Re lambda|; evaluations are a
/// Clenshaw recurrence, so grids of phi values cost quadrature only once.
class PhiTable {
 public:
  PhiTable(SpectralParam lambda, double t_max, const QuadratureSpec& q);

  Complex operator()(double t) const;          // phi_lambda(a_|t|)
  Complex from_element(const GroupElement& g) const { return (*this)(polar_t(g)); }
  SpectralParam lambda() const { return lambda_; }
  double t_max() const { return t_max_; }

 private:
  SpectralParam lambda_;
  double t_max_;
  double width_;
  int degree_;
  std::vector<Complex> coeffs_;  // degree_+1 per panel
};

/// Interpolated Xi with the same contract as xi(); shared by the weight
/// evaluations that would otherwise re-run the K-average millions of times.
class XiTable {
 public:
  explicit XiTable(double t_max, const QuadratureSpec& q) : table_(0.0, t_max, q) {}
  double operator()(double t) const { return table_(t).real(); }
  double from_element(const GroupElement& g) const { return (*this)(polar_t(g)); }

 private:
  PhiTable table_;
};

/// Process-wide Xi table covering at least [0, extent] at this tolerance;
/// extents are bucketed so repeated integrals share one build.
const XiTable& shared_xi_table(const QuadratureSpec& q, double extent);

/// sup over t_grid of |L phi + (lambda^2 + 1) phi| at a_t, where
/// L = d^2/dt^2 + 2 coth(2t) d/dt is the radial part of the Casimir
/// operator. Central differences with one Richardson level, base h = 1e-3.
double radial_casimir_residual(SpectralParam lambda, std::span<const double> t_grid,
                               const QuadratureSpec& q);

/// |int_K phi_lambda(g k h) dk - phi_lambda(g) phi_lambda(h)|
double check_functional_equation(SpectralParam lambda, const GroupElement& g,
                                 const GroupElement& h, const QuadratureSpec& q);

struct CFunctionValue {
  Complex value;
  double fit_residual = 0.0;
};

/// c(lambda) for real lambda != 0, extracted by least squares from
/// phi_lambda(a_t) ~ c(lambda) e^{(i lambda - 1) t} + c(-lambda) e^{(-i lambda - 1) t}
/// over t in [8, 14]. Throws FitError when the residual exceeds 1e-3.
CFunctionValue c_function(SpectralParam lambda, const QuadratureSpec& q);

}  // namespace sphconv

#endif
