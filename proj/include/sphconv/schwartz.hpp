#ifndef SPHCONV_SCHWARTZ_HPP
#define SPHCONV_SCHWARTZ_HPP

#include "sphconv/transform.hpp"

namespace sphconv {

/// Index of a decay seminorm: derivative orders along H1 on each side, the
/// polynomial weight power r, and the p that sets the Xi^{-2/p} weight.
struct SeminormIndex {
  int a_order = 0;
  int b_order = 0;
  int r = 0;
  double p = 2.0;

  void validate() const;
};

struct InequalityVerdict {
  bool holds = false;
  double fitted_constant = 0.0;
  double worst_point = 0.0;  // t coordinate of the binding grid node
  double margin = 0.0;       // holds <=> margin >= -1e-8
};

/// sup over the radial grid of |D_t^{a+b} f| Xi(a_t)^{-2/p} (1+t)^r.
/// Returns +infinity when the windowed envelope of the supremand is still
/// growing at t_max (divergence is data here, not an error).
double seminorm(const RadialProfile& f, const SeminormIndex& idx, const QuadratureSpec& q);

/// Shifted variant: sup over y of |D^{a+b} f| Xi(y^{-1}x)^{-1} (1+sigma(y^{-1}x))^r,
/// realized on the (s, k) polar grid of y. At x = e this is seminorm with p = 2.
double general_seminorm(const RadialProfile& f, const GroupElement& x, const SeminormIndex& idx,
                        const QuadratureSpec& q);

/// d(x) = int_G Xi^2(y^{-1}x) (1 + sigma(y^{-1}x))^{-r} dy, r >= 4, with the
/// same fitted algebraic tail completion as haar_integrate (the integrand
/// decays like t^{2-r}).
double d_integral(const GroupElement& x, int r, const QuadratureSpec& q, Warnings* w = nullptr);

/// Least c_r with |f(y)| <= c_r Xi(y^{-1}x)(1+sigma(y^{-1}x))^{-r} on the grid;
/// holds iff the fitted constant is stable (ratio <= 1.05) when the radial
/// truncation grows by half.
InequalityVerdict strong_inequality_check(const RadialProfile& f, const GroupElement& x, int r,
                                          const QuadratureSpec& q);

/// Checks mu_{a,b;r}(f * phi_lambda) <= d(e) mu_{1,b;r+4}(f) mu_{a,1;r}(phi_lambda)
/// with the convolution taken through its spherical factorization
/// fhat(lambda) phi_lambda. A divergent left side yields holds = false.
InequalityVerdict convolution_seminorm_check(const RadialProfile& f, SpectralParam lambda,
                                             const SeminormIndex& idx, const QuadratureSpec& q);

struct XiGrowthFit {
  double c = 0.0;
  double d = 0.0;
};

/// Verifies 1 <= Xi(a_t) e^t on [0, T] (LowerBoundViolation otherwise) and
/// fits the minimal envelope c (1+t)^d by log-log regression.
XiGrowthFit xi_growth_fit(double T, const QuadratureSpec& q);

}  // namespace sphconv

#endif
