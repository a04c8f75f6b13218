#ifndef SPHCONV_CONVOLUTION_HPP
#define SPHCONV_CONVOLUTION_HPP

#include "sphconv/schwartz.hpp"
#include "sphconv/transform.hpp"

namespace sphconv {

/// Direction in the Lie algebra: X = h H1 + ep E + em F with
/// H1 = diag(1,-1), E strictly upper, F strictly lower.
struct TangentDirection {
  double h = 0.0;
  double e_plus = 0.0;
  double e_minus = 0.0;

  GroupElement exp(double u = 1.0) const { return exp_tangent(u * h, u * e_plus, u * e_minus); }
  double norm() const { return std::sqrt(2 * h * h + e_plus * e_plus + e_minus * e_minus); }
};

enum class ConvStrategy {
  Direct,         // group-level quadrature of int f(y) phi(y^{-1} x) dy
  ProductFormula  // fhat(lambda) * phi_lambda(x)
};

/// Handle for x -> (f * phi_lambda)(x).
struct SphericalConvolution {
  SpectralParam lambda;
  RadialProfile profile;
  ConvStrategy strategy = ConvStrategy::ProductFormula;
};

/// Evaluate the spherical convolution at x. The direct strategy reduces the
/// group integral to its (radius x rotation) polar grid — the inner rotation
/// drops against the left K-invariance of phi — and reads phi off a
/// piecewise-Chebyshev radial table. With a warning sink attached, direct
/// evaluations are cross-checked against the product formula
/// (AccuracyWarning beyond 1e-4).
Complex evaluate(const SphericalConvolution& s, const GroupElement& x, const QuadratureSpec& q,
                 Warnings* w = nullptr);

/// Uncollapsed three-fold (k1, t, k2) quadrature of the same integral; the
/// slow reference used to validate the reduced direct path.
Complex evaluate_direct_3d(const SphericalConvolution& s, const GroupElement& x,
                           const QuadratureSpec& q, int k_nodes, int t_panels);

/// n-th derivative of u -> evaluate(s, x exp(u X)) at u = 0 by central
/// differences (one Richardson level for n <= 4; plain wider step beyond).
/// Point evaluations go through the product formula.
Complex taylor_coefficient(const SphericalConvolution& s, const GroupElement& x,
                           const TangentDirection& X, int n, const QuadratureSpec& q,
                           Warnings* w = nullptr);

/// sum_{n<=N} t^n/n! taylor_coefficient(n)
Complex taylor_partial_sum(const SphericalConvolution& s, const GroupElement& x,
                           const TangentDirection& X, double t, int N, const QuadratureSpec& q,
                           Warnings* w = nullptr);

/// Ratio s_{lambda,f}(exp X) / fhat(lambda) measured per witness profile with
/// the direct strategy. All witnesses must agree within 1e-5
/// (InconsistencyError otherwise); the common value is the normalization that
/// turns the convolution at exp X back into the transform.
Complex kappa(SpectralParam lambda, const TangentDirection& X,
              std::span<const RadialProfile> witnesses, const QuadratureSpec& q);

/// lambda -> s_{lambda,f}(x) / phi_lambda(x) on a real grid shifted by a
/// common imaginary offset. At x = e this is the transform itself, same code
/// path; elsewhere the numerator is the direct-strategy quadrature.
SpectralSamples convolution_transform(const RadialProfile& f, const GroupElement& x,
                                      std::span<const double> re_grid, double im_offset,
                                      const QuadratureSpec& q, Warnings* w = nullptr);

/// d(x) mu_{1,1,r}(f) - |s_{lambda,f}(x)|, nonnegative up to noise.
double bound_margin_thm37(const RadialProfile& f, const GroupElement& x, SpectralParam lambda,
                          int r, const QuadratureSpec& q);

/// (f * g) as a sampled bi-invariant profile on a uniform radial grid.
RadialProfile convolve_profiles(const RadialProfile& f, const RadialProfile& g,
                                const QuadratureSpec& q);

}  // namespace sphconv

#endif
