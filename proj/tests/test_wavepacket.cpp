#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sphconv/oracles.hpp"
#include "sphconv/wavepacket.hpp"

using namespace sphconv;

namespace {
const QuadratureSpec q = QuadratureSpec::defaults();
}

TEST_CASE("plancherel density: evenness, vanishing origin, linear growth") {
  const double d2 = plancherel_density(2.0, q);
  CHECK(std::abs(d2 - plancherel_density(-2.0, q)) < 1e-12);  // |lambda| evaluation
  CHECK(d2 > 0.0);
  // decreasing toward the origin, through the extrapolated zone
  CHECK(plancherel_density(0.05, q) < plancherel_density(0.1, q));
  CHECK(plancherel_density(0.1, q) < plancherel_density(0.2, q));
  // closed-form cross-check on and off the extrapolated zone
  for (double lam : {0.05, 0.2, 0.5, 1.0, 4.0, 17.0})
    CHECK(std::abs(plancherel_density(lam, q) - oracles::density_closed_form(lam)) <
          2e-4 * (1.0 + oracles::density_closed_form(lam)));
  // large-lambda slope settles to a constant
  const double s20 = plancherel_density(20.0, q) / 20.0;
  const double s30 = plancherel_density(30.0, q) / 30.0;
  const double s40 = plancherel_density(40.0, q) / 40.0;
  CHECK(std::abs(s30 - s20) < 1e-3 * s20);
  CHECK(std::abs(s40 - s30) < 1e-3 * s30);
}

TEST_CASE("symbol construction flags") {
  const auto good = WavePacketSymbol::x_independent(
      [](SpectralParam lam) { return Complex(std::exp(-std::norm(lam)), 0.0); });
  CHECK(good.weyl_invariant());
  const auto odd = WavePacketSymbol::x_independent(
      [](SpectralParam lam) { return Complex(lam.real(), 0.0); });
  CHECK(!odd.weyl_invariant());
  const auto sph = WavePacketSymbol::x_dependent([](SpectralParam lam, const GroupElement& x) {
    return Complex(std::exp(-std::norm(lam)) * std::exp(-polar_t(x)), 0.0);
  });
  CHECK(sph.weyl_invariant());
  const auto notsph = WavePacketSymbol::x_dependent([](SpectralParam lam, const GroupElement& x) {
    return Complex(std::exp(-std::norm(lam)) * x.m11, 0.0);
  });
  CHECK(!notsph.weyl_invariant());
}

TEST_CASE("zero symbol synthesizes to zero") {
  PlancherelCalibration unit{1.0, "unit", 0.0};
  const auto zero = WavePacketSymbol::x_independent([](SpectralParam) { return Complex{}; });
  CHECK(std::abs(synthesize(zero, GroupElement::diag_exp(1.0), unit, q)) == 0.0);
}

TEST_CASE("calibration: round trip, positivity, cross-profile stability") {
  const auto cal = calibrate(RadialProfile::gaussian(1.0), q);
  CHECK(cal.constant > 0.0);
  CHECK(cal.residual < 1e-4);
  // the normalization gauge of this Haar convention
  CHECK(cal.constant == doctest::Approx(1.0 / 3.14159265358979323846).epsilon(2e-5));

  const auto cal2 = calibrate(RadialProfile::gaussian(2.0), q);
  CHECK(std::abs(cal2.constant - cal.constant) < 1e-4 * cal.constant);
  const auto cal05 = calibrate(RadialProfile::gaussian(0.5), q);
  CHECK(std::abs(cal05.constant - cal.constant) < 1e-4 * cal.constant);
}

TEST_CASE("round trip through the sampled-transform exchange format") {
  const auto cal = calibrate(RadialProfile::gaussian(1.0), q);
  const auto f = RadialProfile::gaussian(1.0);
  std::vector<double> re;
  for (double l = 0.0; l <= q.lambda_max + 1e-9; l += 0.05) re.push_back(l);
  const SpectralSamples samples = transform_grid(f, re, {0.0}, q);
  std::vector<double> ts;
  for (double t = 0.0; t <= 3.0 + 1e-9; t += 0.25) ts.push_back(t);
  const GridFunction rec = invert(samples, ts, cal, q);
  double worst = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i)
    worst = std::max(worst, std::abs(rec.values[i].real() - f(ts[i])));
  CHECK(worst < 1e-4);
}

TEST_CASE("round trip for the Gaussian battery (direct transform path)") {
  const auto cal = calibrate(RadialProfile::gaussian(1.0), q);
  std::vector<double> ts;
  for (double t = 0.0; t <= 3.0 + 1e-9; t += 0.1) ts.push_back(t);
  for (double w : {0.5, 1.0, 2.0}) {
    const auto f = RadialProfile::gaussian(w);
    const GridFunction rec = invert_profile(f, ts, cal, q);
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i)
      worst = std::max(worst, std::abs(rec.values[i].real() - f(ts[i])));
    CHECK(worst < 1e-4);
  }
}

TEST_CASE("round trip for the compact bump needs the wider spectral window") {
  QuadratureSpec qb = q;
  qb.lambda_max = 80.0;
  qb.lambda_nodes = 1600;
  const auto cal = calibrate(RadialProfile::gaussian(1.0), qb);
  const auto f = RadialProfile::compact_bump(2.0);
  std::vector<double> ts;
  for (double t = 0.0; t <= 1.5 + 1e-9; t += 0.1) ts.push_back(t);
  const GridFunction rec = invert_profile(f, ts, cal, qb);
  double worst = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i)
    worst = std::max(worst, std::abs(rec.values[i].real() - f(ts[i])));
  CHECK(worst < 1e-3);
}

TEST_CASE("norm identity between the group side and the spectral side") {
  const auto cal = calibrate(RadialProfile::gaussian(1.0), q);
  for (double w : {0.5, 1.0, 2.0}) {
    const auto f = RadialProfile::gaussian(w);
    const double group_side =
        haar_integrate_radial([&](double t) { return f(t) * f(t); }, q);
    const double spectral_side = spectral_norm_squared(f, cal, q);
    CHECK(std::abs(group_side - spectral_side) < 1e-4 * group_side);
  }
}

TEST_CASE("synthesis is insensitive to the reflection of the symbol argument") {
  const auto cal = calibrate(RadialProfile::gaussian(1.0), q);
  auto base = [](SpectralParam lam) { return Complex(std::exp(-0.1 * std::norm(lam)), 0.0); };
  const auto sym = WavePacketSymbol::x_independent(base);
  const auto flipped =
      WavePacketSymbol::x_independent([&](SpectralParam lam) { return base(-lam); });
  const GroupElement x = GroupElement::diag_exp(0.8);
  CHECK(std::abs(synthesize(sym, x, cal, q) - synthesize(flipped, x, cal, q)) < 1e-10);
}

TEST_CASE("restriction of an x-dependent symbol near the identity") {
  const auto cal = calibrate(RadialProfile::gaussian(1.0), q);
  const auto f = RadialProfile::gaussian(1.0);
  // transform values pinned on the synthesis grid via a closure
  auto Phi = [&](SpectralParam lam) { return hc_transform(f, lam, q); };
  // bi-invariant cutoff, identically 1 on sigma <= 0.5
  auto cut = [](const GroupElement& x) {
    const double s = polar_t(x);
    return s <= 0.5 ? 1.0 : std::exp(-(s - 0.5) * (s - 0.5));
  };
  const auto psi = WavePacketSymbol::x_dependent(
      [&](SpectralParam lam, const GroupElement& x) { return Phi(lam) * cut(x); });
  const auto phi_sym = WavePacketSymbol::x_independent(Phi);
  CHECK(psi.weyl_invariant());
  for (double t : {0.05, 0.2}) {
    const GroupElement x = GroupElement::diag_exp(t);
    CHECK(std::abs(synthesize(psi, x, cal, q) - synthesize(phi_sym, x, cal, q)) < 1e-6);
  }
}
