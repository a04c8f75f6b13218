#include "sphconv/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace sphconv {

namespace {

// Half-line spectral quadrature with the tempered density attached to each
// node. Built once per (lambda_max, lambda_nodes, tol) and shared.
struct SpectralQuad {
  std::vector<double> nodes;
  std::vector<double> weights;  // plain quadrature weights on [0, lambda_max]
  std::vector<double> density;
};

SpectralQuad build_spectral_quad(const QuadratureSpec& q) {
  const int order = 12;
  const int panels = std::max(2, q.lambda_nodes / (2 * order));
  const GaussRule& rule = gauss_legendre(order);
  const double dl = q.lambda_max / panels;
  SpectralQuad sq;
  for (int p = 0; p < panels; ++p)
    for (int j = 0; j < order; ++j) {
      sq.nodes.push_back(p * dl + 0.5 * dl * (rule.nodes[j] + 1.0));
      sq.weights.push_back(0.5 * dl * rule.weights[j]);
    }
  sq.density.assign(sq.nodes.size(), 0.0);
  parallel_for(sq.nodes.size(), [&](std::size_t i) {
    sq.density[i] = plancherel_density(sq.nodes[i], q);
  });
  return sq;
}

const SpectralQuad& spectral_quad(const QuadratureSpec& q) {
  static std::mutex mu;
  static std::map<std::tuple<double, int, double>, std::unique_ptr<SpectralQuad>> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_tuple(q.lambda_max, q.lambda_nodes, q.tol);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<SpectralQuad>(build_spectral_quad(q))).first;
  return *it->second;
}

constexpr double kWeylProbes[] = {0.45, 1.3, 2.6, 3.7};

}  // namespace

double plancherel_density(double lambda, const QuadratureSpec& q) {
  lambda = std::abs(lambda);
  if (lambda >= 0.35) {
    const CFunctionValue c = c_function(SpectralParam(lambda, 0.0), q);
    return 0.5 / std::norm(c.value);
  }
  // even quadratic a + b lambda^2 through the fits at 0.1, 0.2, 0.3
  static std::mutex mu;
  static std::map<std::pair<double, double>, std::pair<double, double>> cache;
  double a, b;
  {
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_pair(q.t_max, q.tol);
    auto it = cache.find(key);
    if (it == cache.end()) {
      double xs[3] = {0.1, 0.2, 0.3}, ys[3];
      for (int i = 0; i < 3; ++i)
        ys[i] = 0.5 / std::norm(c_function(SpectralParam(xs[i], 0.0), q).value);
      // least squares for a + b x^2 on three points
      double s0 = 3, s2 = 0, s4 = 0, sy = 0, s2y = 0;
      for (int i = 0; i < 3; ++i) {
        const double x2 = xs[i] * xs[i];
        s2 += x2;
        s4 += x2 * x2;
        sy += ys[i];
        s2y += x2 * ys[i];
      }
      const double det = s0 * s4 - s2 * s2;
      it = cache.emplace(key, std::make_pair((s4 * sy - s2 * s2y) / det,
                                             (s0 * s2y - s2 * sy) / det)).first;
    }
    a = it->second.first;
    b = it->second.second;
  }
  return std::max(0.0, a + b * lambda * lambda);
}

WavePacketSymbol WavePacketSymbol::x_independent(std::function<Complex(SpectralParam)> Phi) {
  WavePacketSymbol s;
  s.x_dependent_ = false;
  s.weyl_invariant_ = true;
  for (double p : kWeylProbes)
    if (std::abs(Phi(SpectralParam(p, 0)) - Phi(SpectralParam(-p, 0))) > 1e-8)
      s.weyl_invariant_ = false;
  s.eval_ = [Phi = std::move(Phi)](SpectralParam lam, const GroupElement&) { return Phi(lam); };
  return s;
}

WavePacketSymbol WavePacketSymbol::x_dependent(
    std::function<Complex(SpectralParam, const GroupElement&)> Psi) {
  WavePacketSymbol s;
  s.x_dependent_ = true;
  s.weyl_invariant_ = true;
  const GroupElement probe_x = GroupElement::diag_exp(0.4);
  for (double p : kWeylProbes)
    if (std::abs(Psi(SpectralParam(p, 0), probe_x) - Psi(SpectralParam(-p, 0), probe_x)) > 1e-8)
      s.weyl_invariant_ = false;
  // spherical in x: probe bi-invariance
  const GroupElement k1 = GroupElement::rotation(0.9), k2 = GroupElement::rotation(-1.7);
  for (double p : {0.8, 2.1})
    if (std::abs(Psi(SpectralParam(p, 0), probe_x) -
                 Psi(SpectralParam(p, 0), k1 * probe_x * k2)) > 1e-8)
      s.weyl_invariant_ = false;
  s.eval_ = std::move(Psi);
  return s;
}

WavePacketSymbol WavePacketSymbol::from_samples(const SpectralSamples& samples) {
  samples.validate();
  if (samples.im_nodes.size() != 1 || samples.im_nodes[0] != 0.0)
    throw GridError("WavePacketSymbol::from_samples: real-line samples required");
  auto nodes = std::make_shared<std::vector<double>>(samples.re_nodes);
  auto vals = std::make_shared<std::vector<Complex>>(samples.values);
  auto Phi = [nodes, vals](SpectralParam lam) -> Complex {
    const double x = std::abs(lam.real());
    const auto& ns = *nodes;
    if (x <= ns.front()) return (*vals).front();
    if (x >= ns.back()) return (*vals).back();
    // local cubic (4-point Lagrange) interpolation
    std::size_t hi = std::lower_bound(ns.begin(), ns.end(), x) - ns.begin();
    std::size_t i0 = hi >= 2 ? hi - 2 : 0;
    if (i0 + 4 > ns.size()) i0 = ns.size() - 4;
    Complex acc{};
    for (std::size_t a = i0; a < i0 + 4; ++a) {
      double w = 1.0;
      for (std::size_t b = i0; b < i0 + 4; ++b)
        if (b != a) w *= (x - ns[b]) / (ns[a] - ns[b]);
      acc += w * (*vals)[a];
    }
    return acc;
  };
  return x_independent(Phi);
}

Complex WavePacketSymbol::operator()(SpectralParam lambda, const GroupElement& x) const {
  return eval_(lambda, x);
}

Complex synthesize(const WavePacketSymbol& a, const GroupElement& x,
                   const PlancherelCalibration& cal, const QuadratureSpec& q, Warnings* w) {
  const SpectralQuad& sq = spectral_quad(q);
  const double t = polar_t(x);
  std::vector<Complex> buf(sq.nodes.size());
  parallel_for(buf.size(), [&](std::size_t i) {
    const SpectralParam lam(sq.nodes[i], 0.0);
    buf[i] = a(-lam, x) * phi_radial(-lam, t, q) * sq.density[i] * sq.weights[i];
  });
  const Complex half = pairwise_sum(std::span<const Complex>(buf));
  if (w) {
    const double edge = std::abs(a(SpectralParam(-q.lambda_max, 0), x)) *
                        sq.density.back();
    double scale = 0.0;
    for (std::size_t i = 0; i < buf.size(); ++i)
      scale = std::max(scale, std::abs(buf[i]) / sq.weights[i]);
    if (edge > q.tol * std::max(scale, 1e-300))
      warn(w, WarningKind::Truncation, "synthesize: symbol not negligible at lambda_max");
  }
  return cal.constant * 2.0 * half;
}

PlancherelCalibration calibrate(const RadialProfile& reference, const QuadratureSpec& q) {
  const SpectralQuad& sq = spectral_quad(q);
  // transform once on the quadrature nodes
  auto fhat = std::make_shared<std::vector<Complex>>(sq.nodes.size());
  parallel_for(sq.nodes.size(), [&](std::size_t i) {
    (*fhat)[i] = hc_transform(reference, SpectralParam(sq.nodes[i], 0.0), q);
  });
  auto nodes = std::make_shared<std::vector<double>>(sq.nodes);
  auto symbol = WavePacketSymbol::x_independent([fhat, nodes](SpectralParam lam) -> Complex {
    const double x = std::abs(lam.real());
    // nodes are exactly the synthesis grid; nearest lookup suffices
    const auto& ns = *nodes;
    std::size_t lo = std::lower_bound(ns.begin(), ns.end(), x - 1e-12) - ns.begin();
    if (lo >= ns.size()) lo = ns.size() - 1;
    return (*fhat)[lo];
  });

  PlancherelCalibration cal{1.0, reference.describe(), 0.0};
  const Complex raw = synthesize(symbol, GroupElement::identity(), cal, q);
  if (!(std::abs(raw) > 0.0)) throw CalibrationError("calibrate: degenerate synthesis");
  cal.constant = reference(0.0) / raw.real();

  double worst = 0.0;
  for (double t : {0.5, 1.0, 2.0, 3.0}) {
    const Complex rec = synthesize(symbol, GroupElement::diag_exp(t), cal, q);
    worst = std::max(worst, std::abs(rec.real() - reference(t)));
  }
  cal.residual = worst;
  if (cal.residual > 1e-3)
    throw CalibrationError("calibrate: round-trip residual above 1e-3");
  return cal;
}

GridFunction invert(const SpectralSamples& samples, std::span<const double> t_grid,
                    const PlancherelCalibration& cal, const QuadratureSpec& q, Warnings* w) {
  const WavePacketSymbol symbol = WavePacketSymbol::from_samples(samples);
  std::vector<double> ts(t_grid.begin(), t_grid.end());
  std::vector<Complex> vals(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    vals[i] = synthesize(symbol, GroupElement::diag_exp(ts[i]), cal, q, i == 0 ? w : nullptr);
  return GridFunction(std::move(ts), std::move(vals), GridFunction::Domain::Radial);
}

GridFunction invert_profile(const RadialProfile& f, std::span<const double> t_grid,
                            const PlancherelCalibration& cal, const QuadratureSpec& q,
                            Warnings* w) {
  const SpectralQuad& sq = spectral_quad(q);
  auto fhat = std::make_shared<std::vector<Complex>>(sq.nodes.size());
  parallel_for(sq.nodes.size(), [&](std::size_t i) {
    (*fhat)[i] = hc_transform(f, SpectralParam(sq.nodes[i], 0.0), q);
  });

  std::vector<double> ts(t_grid.begin(), t_grid.end());
  std::vector<Complex> vals(ts.size());
  for (std::size_t j = 0; j < ts.size(); ++j) {
    std::vector<Complex> buf(sq.nodes.size());
    const double t = ts[j];
    parallel_for(buf.size(), [&](std::size_t i) {
      buf[i] = (*fhat)[i] * phi_radial(SpectralParam(-sq.nodes[i], 0.0), t, q) *
               sq.density[i] * sq.weights[i];
    });
    vals[j] = cal.constant * 2.0 * pairwise_sum(std::span<const Complex>(buf));
  }
  if (w) {
    const double edge = std::abs((*fhat).back()) * sq.density.back();
    if (edge > q.tol) warn(w, WarningKind::Truncation, "invert: transform tail above tol");
  }
  return GridFunction(std::move(ts), std::move(vals), GridFunction::Domain::Radial);
}

double spectral_norm_squared(const RadialProfile& f, const PlancherelCalibration& cal,
                             const QuadratureSpec& q) {
  const SpectralQuad& sq = spectral_quad(q);
  std::vector<double> buf(sq.nodes.size());
  parallel_for(buf.size(), [&](std::size_t i) {
    const Complex fh = hc_transform(f, SpectralParam(sq.nodes[i], 0.0), q);
    buf[i] = std::norm(fh) * sq.density[i] * sq.weights[i];
  });
  return cal.constant * 2.0 * pairwise_sum(std::span<const double>(buf));
}

}  // namespace sphconv
