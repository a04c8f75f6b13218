#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sphconv/convolution.hpp"

using namespace sphconv;

namespace {
const QuadratureSpec q = QuadratureSpec::defaults();
const RadialProfile g1 = RadialProfile::gaussian(1.0);
}  // namespace

TEST_CASE("evaluate: identity point recovers the transform for both strategies") {
  const GroupElement e = GroupElement::identity();
  for (double lam : {0.0, 1.0, 2.5}) {
    const Complex fh = hc_transform(g1, SpectralParam(lam, 0), q);
    const SphericalConvolution direct{SpectralParam(lam, 0), g1, ConvStrategy::Direct};
    const SphericalConvolution product{SpectralParam(lam, 0), g1, ConvStrategy::ProductFormula};
    CHECK(std::abs(evaluate(direct, e, q) - fh) < 1e-6 * (1.0 + std::abs(fh)));
    CHECK(std::abs(evaluate(product, e, q) - fh) < 1e-12);
  }
}

TEST_CASE("evaluate: zero profile") {
  const SphericalConvolution s{SpectralParam(1, 0), g1.scaled(0.0), ConvStrategy::Direct};
  CHECK(std::abs(evaluate(s, GroupElement::diag_exp(1.0), q)) < 1e-14);
}

TEST_CASE("evaluate: three-fold quadrature oracle at x = a_2") {
  const SpectralParam lam(1.0, 0);
  const SphericalConvolution s{lam, g1, ConvStrategy::Direct};
  const GroupElement x = GroupElement::diag_exp(2.0);
  const Complex product = hc_transform(g1, lam, q) * phi(lam, x, q);
  const Complex reduced = evaluate(s, x, q);
  const Complex full3d = evaluate_direct_3d(s, x, q, 1536, 24);
  CHECK(std::abs(reduced - product) < 1e-5 * (1.0 + std::abs(product)));
  CHECK(std::abs(full3d - product) < 1e-5 * (1.0 + std::abs(product)));
  CHECK(std::abs(full3d - reduced) < 1e-5 * (1.0 + std::abs(reduced)));
}

TEST_CASE("strategy agreement across a (lambda, f, x) battery") {
  const std::vector<SpectralParam> lams = {{0.0, 0.0}, {1.0, 0.0}, {2.5, 0.0},
                                           {0.5, 0.5},  {0.0, -1.0}};
  const std::vector<RadialProfile> fs = {RadialProfile::gaussian(1.0),
                                         RadialProfile::gaussian(0.5),
                                         RadialProfile::compact_bump(2.0)};
  const std::vector<GroupElement> xs = {
      GroupElement::identity(), GroupElement::diag_exp(0.7), GroupElement::diag_exp(2.2),
      GroupElement::rotation(0.7) * GroupElement::diag_exp(1.5) * GroupElement::rotation(-0.4)};
  double worst = 0.0;
  for (const auto& lam : lams)
    for (const auto& f : fs)
      for (const auto& x : xs) {
        const SphericalConvolution s{lam, f, ConvStrategy::Direct};
        const Complex direct = evaluate(s, x, q);
        const Complex product = hc_transform(f, lam, q) * phi(lam, x, q);
        worst = std::max(worst,
                         std::abs(direct - product) / (1.0 + std::abs(product)));
      }
  CHECK(worst < 1e-5);
}

TEST_CASE("taylor: zeroth coefficient and the constant term") {
  const SpectralParam lam(1.3, 0);
  const SphericalConvolution s{lam, g1, ConvStrategy::ProductFormula};
  const TangentDirection X{1.0, 0.0, 0.0};
  const GroupElement e = GroupElement::identity();
  const Complex fh = hc_transform(g1, lam, q);
  // same code path at the identity
  CHECK(taylor_coefficient(s, e, X, 0, q) == fh);
  // cross-path: direct quadrature agrees with the constant term
  const SphericalConvolution sd{lam, g1, ConvStrategy::Direct};
  CHECK(std::abs(evaluate(sd, e, q) - fh) < 1e-6 * (1.0 + std::abs(fh)));

  const GroupElement x = GroupElement::diag_exp(0.8);
  const SphericalConvolution sp{lam, g1, ConvStrategy::ProductFormula};
  CHECK(std::abs(taylor_coefficient(sp, x, X, 0, q) - evaluate(sp, x, q)) < 1e-12);
}

TEST_CASE("taylor: second derivative against the factorized oracle") {
  const SpectralParam lam(1.0, 0);
  const SphericalConvolution s{lam, g1, ConvStrategy::ProductFormula};
  const TangentDirection X{1.0, 0.0, 0.0};
  const Complex fh = hc_transform(g1, lam, q);
  const Complex c2 = taylor_coefficient(s, GroupElement::identity(), X, 2, q);
  // differentiate phi along the ray instead of s
  const double h = 1e-3;
  auto ph = [&](double u) { return phi_radial(lam, u, q); };
  const Complex d2h = (ph(h) - 2.0 * ph(0.0) + ph(-h)) / (h * h);
  const Complex d2h2 = (ph(2 * h) - 2.0 * ph(0.0) + ph(-2 * h)) / (4.0 * h * h);
  const Complex oracle = fh * (4.0 * d2h - d2h2) / 3.0;
  CHECK(std::abs(c2 - oracle) < 1e-4 * (1.0 + std::abs(oracle)));
}

TEST_CASE("taylor: partial sums converge to the direct evaluation") {
  const SpectralParam lam(1.0, 0);
  const TangentDirection X{1.0, 0.0, 0.0};
  const GroupElement e = GroupElement::identity();
  const SphericalConvolution sp{lam, g1, ConvStrategy::ProductFormula};
  const SphericalConvolution sd{lam, g1, ConvStrategy::Direct};

  // t = 0 returns the point value for any order
  CHECK(taylor_partial_sum(sp, e, X, 0.0, 5, q) == evaluate(sp, e, q));

  const double t = 0.1;
  const Complex target = evaluate(sd, e * X.exp(t), q);
  const Complex s8 = taylor_partial_sum(sp, e, X, t, 8, q);
  CHECK(std::abs(s8 - target) < 1e-6 * (1.0 + std::abs(target)));

  // monotone error decay in the truncation order at t = 0.2
  const double t2 = 0.2;
  const Complex ref = evaluate(sp, e * X.exp(t2), q);
  double prev = 1e300;
  for (int N = 0; N <= 6; ++N) {
    const double err = std::abs(taylor_partial_sum(sp, e, X, t2, N, q) - ref);
    CHECK(err < prev + 1e-12);
    prev = err;
  }
}

TEST_CASE("taylor: mixed directions stay within tolerance of direct evaluation") {
  const SpectralParam lam(0.8, 0);
  const TangentDirection X{0.4, 0.3, -0.2};
  const GroupElement x = GroupElement::diag_exp(0.5);
  const SphericalConvolution sp{lam, g1, ConvStrategy::ProductFormula};
  const SphericalConvolution sd{lam, g1, ConvStrategy::Direct};
  const double t = 0.25;
  const Complex target = evaluate(sd, x * X.exp(t), q);
  const Complex s8 = taylor_partial_sum(sp, x, X, t, 8, q);
  CHECK(std::abs(s8 - target) < 1e-5 * (1.0 + std::abs(target)));
}

TEST_CASE("kappa: identity cases and the spherical-function value") {
  const std::vector<RadialProfile> witnesses = {RadialProfile::gaussian(1.0),
                                                RadialProfile::gaussian(2.0),
                                                RadialProfile::compact_bump(2.0)};
  // X = 0: kappa = 1
  const Complex k0 = kappa(SpectralParam(1.0, 0), TangentDirection{}, witnesses, q);
  CHECK(std::abs(k0 - 1.0) < 1e-6);
  // lambda = -i rho: phi == 1, kappa = 1 for any X
  const Complex km = kappa(SpectralParam(0, -1), TangentDirection{0.4, 0.1, -0.2}, witnesses, q);
  CHECK(std::abs(km - 1.0) < 1e-6);
  // generic: kappa = phi_lambda(exp X)
  const TangentDirection X{0.3, 0.0, 0.0};
  const Complex k1 = kappa(SpectralParam(1.0, 0), X, witnesses, q);
  CHECK(std::abs(k1 - phi(SpectralParam(1.0, 0), X.exp(), q)) < 1e-5);

  CHECK_THROWS_AS(kappa(SpectralParam(1.0, 0), X, std::span<const RadialProfile>(
                            witnesses.data(), 1), q),
                  DomainError);
}

TEST_CASE("convolution transform: identity point is the transform, elsewhere it matches") {
  std::vector<double> grid;
  for (double l = -5.0; l <= 5.0 + 1e-9; l += 1.0) grid.push_back(l);

  const SpectralSamples at_e =
      convolution_transform(g1, GroupElement::identity(), grid, 0.0, q);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex fh = hc_transform(g1, SpectralParam(grid[i], 0), q);
    CHECK(std::abs(at_e.values[i] - fh) < 1e-12);
  }

  const GroupElement x = TangentDirection{0.2, 0, 0}.exp();
  const SpectralSamples at_x = convolution_transform(g1, x, grid, 0.0, q);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex fh = hc_transform(g1, SpectralParam(grid[i], 0), q);
    CHECK(std::abs(at_x.values[i] - fh) < 1e-5 * (1.0 + std::abs(fh)));
  }
}

TEST_CASE("convolution transform: linearity and the algebra property") {
  std::vector<double> grid;
  for (double l = -5.0; l <= 5.0 + 1e-9; l += 2.5) grid.push_back(l);
  const GroupElement x = TangentDirection{0.2, 0, 0}.exp();
  const auto f = RadialProfile::gaussian(1.0);
  const auto g = RadialProfile::gaussian(0.7);

  const SpectralSamples tf = convolution_transform(f, x, grid, 0.0, q);
  const SpectralSamples tg = convolution_transform(g, x, grid, 0.0, q);
  const SpectralSamples tsum = convolution_transform(f.plus(g), x, grid, 0.0, q);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(std::abs(tsum.values[i] - (tf.values[i] + tg.values[i])) < 1e-8);

  const SpectralSamples tfg = convolution_transform(convolve_profiles(f, g, q), x, grid, 0.0, q);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(std::abs(tfg.values[i] - tf.values[i] * tg.values[i]) <
          1e-5 * (1.0 + std::abs(tf.values[i] * tg.values[i])));
}

TEST_CASE("theorem bound margin stays nonnegative") {
  CHECK(bound_margin_thm37(g1.scaled(0.0), GroupElement::identity(), SpectralParam(0, 0), 4, q) ==
        doctest::Approx(0.0));
  CHECK(bound_margin_thm37(g1, GroupElement::identity(), SpectralParam(0, 0), 4, q) >= -1e-8);
  for (double t : {0.5, 1.5, 3.0})
    for (double lam : {-4.0, 0.5, 5.0})
      CHECK(bound_margin_thm37(g1, GroupElement::diag_exp(t), SpectralParam(lam, 0), 4, q) >=
            -1e-8);
}

TEST_CASE("continuity of the spectral map under grid refinement") {
  // discrete modulus of continuity of lambda -> s_{lambda,f}(x) halves at
  // least geometrically under grid halving
  const GroupElement x = GroupElement::diag_exp(0.9);
  auto modulus = [&](double h) {
    double m = 0.0;
    Complex prev;
    bool first = true;
    for (double l = 0.0; l <= 4.0 + 1e-9; l += h) {
      const Complex v = hc_transform(g1, SpectralParam(l, 0), q) * phi(SpectralParam(l, 0), x, q);
      if (!first) m = std::max(m, std::abs(v - prev));
      prev = v;
      first = false;
    }
    return m;
  };
  const double m1 = modulus(0.5), m2 = modulus(0.25);
  CHECK(m2 / m1 < 0.6);
}
