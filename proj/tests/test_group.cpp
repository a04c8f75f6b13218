#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sphconv/group.hpp"

using namespace sphconv;

namespace {

std::mt19937 rng(20240811);

GroupElement random_element(double scale = 1.0) {
  std::uniform_real_distribution<double> ang(-3.14159265358979323846, 3.14159265358979323846);
  std::uniform_real_distribution<double> rad(0.0, scale);
  return GroupElement::rotation(ang(rng)) * GroupElement::diag_exp(rad(rng)) *
         GroupElement::rotation(ang(rng));
}

double entry_dist(const GroupElement& a, const GroupElement& b) {
  return std::max({std::abs(a.m11 - b.m11), std::abs(a.m12 - b.m12),
                   std::abs(a.m21 - b.m21), std::abs(a.m22 - b.m22)});
}

}  // namespace

TEST_CASE("make_element accepts unimodular input and rejects the rest") {
  const GroupElement e = make_element(1, 0, 0, 1);
  CHECK(entry_dist(e, GroupElement::identity()) == 0.0);
  const double ee = std::exp(1.0);
  const GroupElement a1 = make_element(ee, 0, 0, 1.0 / ee);
  CHECK(a1.m11 == doctest::Approx(std::exp(1.0)));
  CHECK_THROWS_AS(make_element(1, 0, 0, 2), UnimodularityError);
  CHECK_THROWS_AS(make_element(1, 0, 0, std::nan("")), DomainError);
}

TEST_CASE("iwasawa: special cases") {
  const auto c0 = iwasawa(GroupElement::identity());
  CHECK(std::abs(c0.theta) < 1e-14);
  CHECK(std::abs(c0.t) < 1e-14);
  CHECK(std::abs(c0.u) < 1e-14);
  const auto c1 = iwasawa(GroupElement::diag_exp(1.7));
  CHECK(std::abs(c1.theta) < 1e-14);
  CHECK(c1.t == doctest::Approx(1.7).epsilon(1e-14));
  CHECK(std::abs(c1.u) < 1e-14);
}

TEST_CASE("iwasawa/polar: recomposition round trip on 1000 random elements") {
  double worst_iw = 0.0, worst_po = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const GroupElement g = random_element(3.0);
    worst_iw = std::max(worst_iw, entry_dist(iwasawa(g).recompose(), g));
    const auto pc = polar(g);
    CHECK(pc.t >= 0.0);
    worst_po = std::max(worst_po, entry_dist(pc.recompose(), g));
  }
  CHECK(worst_iw < 1e-10);
  CHECK(worst_po < 1e-10);
}

TEST_CASE("polar: singular values match the eigenvalues of g^T g") {
  for (int i = 0; i < 200; ++i) {
    const GroupElement g = random_element(2.5);
    const auto pc = polar(g);
    // 2x2 symmetric eigenvalues of g^T g
    const double p = g.m11 * g.m11 + g.m21 * g.m21;
    const double r = g.m12 * g.m12 + g.m22 * g.m22;
    const double s = g.m11 * g.m12 + g.m21 * g.m22;
    const double mean = 0.5 * (p + r);
    const double disc = std::sqrt(std::max(0.0, 0.25 * (p - r) * (p - r) + s * s));
    CHECK(std::abs(std::exp(2 * pc.t) - (mean + disc)) < 1e-10 * (mean + disc));
  }
}

TEST_CASE("polar: identity and pure rotations use the theta2 = 0 convention") {
  const auto pc = polar(GroupElement::identity());
  CHECK(pc.t == 0.0);
  CHECK(pc.theta2 == 0.0);
  const auto pr = polar(GroupElement::rotation(0.8));
  CHECK(pr.t < 1e-12);
  CHECK(pr.theta2 == 0.0);
  CHECK(pr.theta1 == doctest::Approx(0.8).epsilon(1e-12));
  const auto pd = polar(GroupElement::diag_exp(2.0));
  CHECK(pd.t == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("sigma: normalization, symmetry, bi-invariance, subadditivity") {
  CHECK(sigma(GroupElement::identity()) == 0.0);
  for (double t : {0.3, 1.0, 4.0, 19.0})
    CHECK(sigma(GroupElement::diag_exp(t)) == doctest::Approx(t).epsilon(1e-13));
  for (int i = 0; i < 200; ++i) {
    const GroupElement g = random_element(3.0);
    CHECK(std::abs(sigma(g.inverse()) - sigma(g)) < 1e-12);
    const GroupElement k1 = GroupElement::rotation(1.1 * i);
    const GroupElement k2 = GroupElement::rotation(-0.37 * i);
    CHECK(std::abs(sigma(k1 * g * k2) - sigma(g)) < 1e-12);
  }
  for (int i = 0; i < 100; ++i) {
    const GroupElement g = random_element(2.0), h = random_element(2.0);
    CHECK(sigma(g * h) <= sigma(g) + sigma(h) + 1e-12);
  }
}

TEST_CASE("exp_tangent: one-parameter subgroups") {
  const GroupElement a = exp_tangent(1.3, 0, 0);
  CHECK(a.m11 == doctest::Approx(std::exp(1.3)).epsilon(1e-14));
  CHECK(a.m22 == doctest::Approx(std::exp(-1.3)).epsilon(1e-14));
  const GroupElement n = exp_tangent(0, 0.7, 0);
  CHECK(n.m12 == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(n.m11 == doctest::Approx(1.0));
  // rotation generator: F - E
  const GroupElement k = exp_tangent(0, -0.5, 0.5);
  CHECK(entry_dist(k, GroupElement::rotation(0.5)) < 1e-13);
  // group law along a ray
  const GroupElement x1 = exp_tangent(0.3, 0.2, 0.1);
  const GroupElement x2 = exp_tangent(0.6, 0.4, 0.2);
  CHECK(entry_dist(x1 * x1, x2) < 1e-12);
  CHECK(std::abs(exp_tangent(0.9, -0.4, 1.2).det() - 1.0) < 1e-12);
}

TEST_CASE("haar_integrate: zero function") {
  QuadratureSpec q;
  q.k_nodes = 16;
  q.t_max = 8.0;
  q.t_panels = 8;
  const double v = haar_integrate([](const GroupElement&) { return 0.0; }, q);
  CHECK(v == 0.0);
}

TEST_CASE("haar_integrate: bi-invariant Gaussian against tensor oracle") {
  QuadratureSpec q;
  q.k_nodes = 16;
  q.t_max = 10.0;
  q.t_panels = 20;
  const double v = haar_integrate(
      [](const GroupElement& x) {
        const double s = sigma(x);
        return std::exp(-s * s);
      },
      q);
  // doubled-resolution radial oracle (K factors are exact for this integrand)
  const double oracle =
      radial_integrate([](double t) { return std::exp(-t * t) * std::sinh(2 * t); }, 10.0, 80, 16);
  CHECK(std::abs(v - oracle) < 1e-8);
  // polar reduction agrees
  const double vr = haar_integrate_radial([](double t) { return std::exp(-t * t); }, q);
  CHECK(std::abs(v - vr) < 1e-10);
}

TEST_CASE("haar_integrate: left translation invariance") {
  // the shifted integrand carries K-harmonics up to ~4*sigma(g0)*t_max
  QuadratureSpec q;
  q.k_nodes = 96;
  q.t_max = 12.0;
  q.t_panels = 24;
  q.tol = 1e-8;
  auto f = [](const GroupElement& x) {
    const double s = sigma(x);
    return std::exp(-0.8 * s * s);
  };
  const GroupElement g0 = GroupElement::rotation(0.4) * GroupElement::diag_exp(0.9) *
                          GroupElement::rotation(-1.1);
  const double base = haar_integrate(f, q);
  const double shifted = haar_integrate([&](const GroupElement& x) { return f(g0 * x); }, q);
  CHECK(std::abs(base - shifted) < 1e-7 * std::abs(base) + 1e-10);
}

TEST_CASE("haar_integrate: truncation warning on slow decay") {
  QuadratureSpec q;
  q.k_nodes = 8;
  q.t_max = 10.0;
  q.t_panels = 10;
  Warnings w;
  haar_integrate(
      [](const GroupElement& x) {
        const double s = sigma(x);
        return std::exp(-2.0 * s);  // sinh(2t) e^{-2t} stalls near 1/2
      },
      q, &w);
  CHECK(w.has(WarningKind::Truncation));
}
