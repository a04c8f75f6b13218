#include "sphconv/convolution.hpp"

#include <cmath>

namespace sphconv {

namespace {

constexpr double kPi = 3.14159265358979323846;

// K-average of a radial function over the double coset at radii (s, t):
//   (1/2pi) int_0^{2pi} h(radius(a_{-s} k(theta) a_t)) dtheta
//     = (2/pi) int_{|t-s|}^{t+s} h(u) sinh(2u) du
//                 / sqrt((cosh 2u - cosh 2|t-s|)(cosh 2(t+s) - cosh 2u)).
// The rotation integrand concentrates in layers of width ~ e^{-2 min(s,t)},
// so the average is taken in the radius variable, where the sqrt endpoints
// are flattened by u = a + w^2 / u = b - w^2 on the two halves. Kernel mass
// is exactly 1 (substitute c = cosh 2u).
template <class H>
auto k_average_product(H&& h, double s, double t, int panels_per_side) {
  using R = decltype(h(0.0));
  const double a = std::abs(t - s), b = t + s;
  if (b - a < 1e-9) return h(0.5 * (a + b));
  const int order = 12;
  const GaussRule& rule = gauss_legendre(order);
  const double mid = 0.5 * (a + b);
  std::vector<R> buf(static_cast<std::size_t>(2 * panels_per_side) * order);
  std::size_t m = 0;
  for (int side = 0; side < 2; ++side) {
    const double wmax = std::sqrt(mid - a);  // same half-width both sides
    const double dw = wmax / panels_per_side;
    for (int p = 0; p < panels_per_side; ++p)
      for (int j = 0; j < order; ++j, ++m) {
        const double w = p * dw + 0.5 * dw * (rule.nodes[j] + 1.0);
        const double w2 = w * w;
        const double u = side == 0 ? a + w2 : b - w2;
        // near endpoint: sinh(u -+ a|b) = sinh(w^2), keep w^2 factored out
        const double sinhc_w2 = w2 > 1e-8 ? std::sinh(w2) / w2 : 1.0 + w2 * w2 / 6.0;
        const double near = 2.0 * (side == 0 ? std::sinh(u + a) : std::sinh(b + u)) * sinhc_w2;
        const double far = side == 0 ? 2.0 * std::sinh(b + u) * std::sinh(b - u)
                                     : 2.0 * std::sinh(u + a) * std::sinh(u - a);
        buf[m] = h(u) * (std::sinh(2.0 * u) * 2.0 / std::sqrt(near * far) * (0.5 * dw * rule.weights[j]));
      }
  }
  return pairwise_sum(std::span<const R>(buf)) * (2.0 / kPi);
}

int kernel_panels_for(SpectralParam lambda, double interval) {
  const double cycles = std::abs(lambda.real()) * interval / (2.0 * kPi);
  return std::max(6, static_cast<int>(std::ceil(cycles / 1.2)) + 2);
}

// int_0^T f(s) [K-average of phi_lambda](s, t_x) sinh(2s) ds via a radial
// phi table; deterministic row-wise pairwise reduction.
Complex direct_reduced(SpectralParam lambda, const RadialProfile& f, const GroupElement& x,
                       const QuadratureSpec& q) {
  const double cutoff = std::min(q.t_max, f.transform_cutoff(std::abs(lambda.imag())));
  const int order = 12;
  const double width =
      std::min(q.t_max / q.t_panels, 12.0 / std::max(1.0, std::abs(lambda.real())));
  const int panels = std::max(4, static_cast<int>(std::ceil(cutoff / width)));
  const GaussRule& rule = gauss_legendre(order);
  const double ds = cutoff / panels;
  const double tx = polar_t(x);

  PhiTable table(lambda, cutoff + tx + 1.0, q);

  const std::size_t nt = static_cast<std::size_t>(panels) * order;
  std::vector<Complex> rows(nt);
  parallel_for(nt, [&](std::size_t i) {
    const int p = static_cast<int>(i) / order;
    const int j = static_cast<int>(i) % order;
    const double s = p * ds + 0.5 * ds * (rule.nodes[j] + 1.0);
    const double fs = f(s);
    if (fs == 0.0) {
      rows[i] = Complex{};
      return;
    }
    const Complex kavg = k_average_product([&](double u) { return table(u); }, s, tx,
                                           kernel_panels_for(lambda, 2.0 * std::min(s, tx)));
    rows[i] = kavg * (fs * std::sinh(2.0 * s) * 0.5 * ds * rule.weights[j]);
  });
  return pairwise_sum(std::span<const Complex>(rows));
}

}  // namespace

Complex evaluate(const SphericalConvolution& s, const GroupElement& x, const QuadratureSpec& q,
                 Warnings* w) {
  if (std::abs(s.lambda.imag()) > 1.0 + 1e-12)
    warn(w, WarningKind::Accuracy, "evaluate: |Im lambda| > 1 is outside the certified band");
  if (s.strategy == ConvStrategy::ProductFormula)
    return hc_transform(s.profile, s.lambda, q, w) * phi(s.lambda, x, q, w);
  const Complex direct = direct_reduced(s.lambda, s.profile, x, q);
  if (w) {
    const Complex product = hc_transform(s.profile, s.lambda, q) * phi(s.lambda, x, q);
    if (std::abs(direct - product) > 1e-4 * (1.0 + std::abs(product)))
      warn(w, WarningKind::Accuracy, "evaluate: strategies disagree beyond 1e-4");
  }
  return direct;
}

Complex evaluate_direct_3d(const SphericalConvolution& s, const GroupElement& x,
                           const QuadratureSpec& q, int k_nodes, int t_panels) {
  const double cutoff = std::min(q.t_max, s.profile.transform_cutoff(std::abs(s.lambda.imag())));
  QuadratureSpec inner = q;
  PhiTable table(s.lambda, cutoff + sigma(x) + 1.0, inner);
  const int order = 12;
  const GaussRule& rule = gauss_legendre(order);
  const double ds = cutoff / t_panels;

  const std::size_t n_outer = static_cast<std::size_t>(k_nodes) * t_panels * order;
  std::vector<Complex> rows(n_outer);
  parallel_for(n_outer, [&](std::size_t idx) {
    const int k2 = static_cast<int>(idx % k_nodes);
    const std::size_t rest = idx / k_nodes;
    const int j = static_cast<int>(rest % order);
    const int p = static_cast<int>(rest / order);
    const double s_rad = p * ds + 0.5 * ds * (rule.nodes[j] + 1.0);
    const double fs = s.profile(s_rad);
    if (fs == 0.0) {
      rows[idx] = Complex{};
      return;
    }
    const double th2 = 2.0 * kPi * k2 / k_nodes;
    // y^{-1} = k(th2)^{-1} a_{-s} k(th1)^{-1}; average over th1
    const GroupElement right = GroupElement::diag_exp(-s_rad);
    const GroupElement left = GroupElement::rotation(-th2) * right;
    std::vector<Complex> buf(static_cast<std::size_t>(k_nodes));
    for (int k1 = 0; k1 < k_nodes; ++k1) {
      const double th1 = 2.0 * kPi * k1 / k_nodes;
      const GroupElement z = left * GroupElement::rotation(-th1) * x;
      buf[k1] = table.from_element(z);
    }
    const Complex avg = pairwise_sum(std::span<const Complex>(buf)) / static_cast<double>(k_nodes);
    rows[idx] = avg * (fs * std::sinh(2.0 * s_rad) * 0.5 * ds * rule.weights[j] /
                       static_cast<double>(k_nodes));
  });
  return pairwise_sum(std::span<const Complex>(rows));
}

namespace {

Complex taylor_coefficient_with(Complex fh, const PhiTable& table, const GroupElement& x,
                                const TangentDirection& X, int n, Warnings* w) {
  auto point = [&](double u) {
    const double tz = polar_t(x * X.exp(u));
    return tz < 1e-14 ? fh : fh * table(tz);  // phi(e) = 1 exactly
  };
  if (n == 0) return point(0.0);

  auto stencil = [&](double step) {
    Complex acc{};
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
      acc += ((k % 2) ? -binom : binom) * point((0.5 * n - k) * step);
      binom = binom * (n - k) / (k + 1);
    }
    return acc / std::pow(step, n);
  };

  if (n <= 4) {
    const double h = 1e-2;
    const Complex d1 = stencil(h), d2 = stencil(2.0 * h);
    const Complex value = (4.0 * d1 - d2) / 3.0;
    if (std::abs(d1 - d2) / 3.0 > 1e-4 * std::abs(value))
      warn(w, WarningKind::NumericalNoise, "taylor_coefficient: step sensitivity above 1e-4");
    return value;
  }
  const double h = 5e-2;
  const Complex d1 = stencil(h), d2 = stencil(1.5 * h);
  if (std::abs(d1 - d2) > 1e-4 * std::abs(d1))
    warn(w, WarningKind::NumericalNoise, "taylor_coefficient: step sensitivity above 1e-4");
  return d1;
}

}  // namespace

Complex taylor_coefficient(const SphericalConvolution& s, const GroupElement& x,
                           const TangentDirection& X, int n, const QuadratureSpec& q,
                           Warnings* w) {
  if (n < 0 || n > 8) throw DomainError("taylor_coefficient: order must lie in [0, 8]");
  if (X.norm() > 2.0)
    warn(w, WarningKind::Accuracy, "taylor_coefficient: |X| > 2 is outside the certified ball");
  const Complex fh = hc_transform(s.profile, s.lambda, q);
  const PhiTable table(s.lambda, polar_t(x) + 1.2 * X.norm() + 1.0, q);
  return taylor_coefficient_with(fh, table, x, X, n, w);
}

Complex taylor_partial_sum(const SphericalConvolution& s, const GroupElement& x,
                           const TangentDirection& X, double t, int N, const QuadratureSpec& q,
                           Warnings* w) {
  if (std::abs(t) > 1.0) throw DomainError("taylor_partial_sum: |t| <= 1 required");
  if (N < 0 || N > 8) throw DomainError("taylor_partial_sum: N <= 8 required");
  const Complex fh = hc_transform(s.profile, s.lambda, q);
  const PhiTable table(s.lambda, polar_t(x) + 1.2 * std::max(1.0, std::abs(t)) * X.norm() + 1.0, q);
  Complex sum{};
  double factorial = 1.0;
  for (int n = 0; n <= N; ++n) {
    if (n > 0) factorial *= n;
    sum += std::pow(t, n) / factorial * taylor_coefficient_with(fh, table, x, X, n, w);
  }
  return sum;
}

Complex kappa(SpectralParam lambda, const TangentDirection& X,
              std::span<const RadialProfile> witnesses, const QuadratureSpec& q) {
  if (witnesses.size() < 2) throw DomainError("kappa: at least 2 witness profiles required");
  const GroupElement expX = X.exp();
  std::vector<Complex> ratios;
  for (const RadialProfile& f : witnesses) {
    const Complex fh = hc_transform(f, lambda, q);
    if (std::abs(fh) <= 1e-8)
      throw DomainError("kappa: witness transform too small at this lambda: " + f.describe());
    const Complex s = direct_reduced(lambda, f, expX, q);
    ratios.push_back(s / fh);
  }
  Complex mean{};
  for (const Complex& r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  for (const Complex& r : ratios)
    if (std::abs(r - mean) > 1e-5 * (1.0 + std::abs(mean)))
      throw InconsistencyError("kappa: witness ratios disagree beyond 1e-5");
  return mean;
}

SpectralSamples convolution_transform(const RadialProfile& f, const GroupElement& x,
                                      std::span<const double> re_grid, double im_offset,
                                      const QuadratureSpec& q, Warnings* w) {
  SpectralSamples out;
  out.re_nodes.assign(re_grid.begin(), re_grid.end());
  out.im_nodes = {im_offset};
  out.source = f.describe();
  out.values.assign(out.re_nodes.size(), Complex{});

  if (sigma(x) < 1e-14) {
    // the identity point: the transform itself, same code path
    parallel_for(out.values.size(), [&](std::size_t i) {
      out.values[i] = hc_transform(f, SpectralParam(out.re_nodes[i], im_offset), q, nullptr);
    });
    return out;
  }

  std::vector<char> small(out.values.size(), 0);
  parallel_for(out.values.size(), [&](std::size_t i) {
    const SpectralParam lam(out.re_nodes[i], im_offset);
    const Complex denom = phi(lam, x, q);
    const Complex num = direct_reduced(lam, f, x, q);
    if (std::abs(denom) <= 1e-6) small[i] = 1;
    out.values[i] = num / denom;
  });
  for (std::size_t i = 0; i < small.size(); ++i)
    if (small[i])
      warn(w, WarningKind::SmallDivisor,
           "convolution_transform: |phi_lambda(x)| <= 1e-6 at re_lambda = " +
               std::to_string(out.re_nodes[i]));
  return out;
}

double bound_margin_thm37(const RadialProfile& f, const GroupElement& x, SpectralParam lambda,
                          int r, const QuadratureSpec& q) {
  if (r < 4) throw DomainError("bound_margin_thm37: r >= 4 required");
  if (lambda.imag() != 0.0) throw DomainError("bound_margin_thm37: lambda must be real");
  const double d = d_integral(x, r, q);
  const double mu = seminorm(f, SeminormIndex{0, 0, r, 2.0}, q);
  const SphericalConvolution s{lambda, f, ConvStrategy::ProductFormula};
  return d * mu - std::abs(evaluate(s, x, q));
}

RadialProfile convolve_profiles(const RadialProfile& f, const RadialProfile& g,
                                const QuadratureSpec& q) {
  const double reach =
      std::min(q.t_max, f.transform_cutoff(0.0) + g.support_radius() + 1.0);
  const double grid_step = 0.02;
  const int grid_n = static_cast<int>(std::ceil(reach / grid_step)) + 1;

  const double cutoff = std::min(q.t_max, f.transform_cutoff(0.0));
  const int order = 12;
  const int panels = std::max(6, static_cast<int>(std::ceil(cutoff / 0.4)));
  const GaussRule& rule = gauss_legendre(order);
  const double ds = cutoff / panels;

  std::vector<double> nodes(static_cast<std::size_t>(grid_n));
  std::vector<Complex> vals(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) {
    const double t = grid_step * static_cast<double>(i);
    nodes[i] = t;
    std::vector<double> rows(static_cast<std::size_t>(panels) * order);
    for (int p = 0; p < panels; ++p)
      for (int j = 0; j < order; ++j) {
        const double s = p * ds + 0.5 * ds * (rule.nodes[j] + 1.0);
        const double fs = f(s);
        if (fs == 0.0) {
          rows[static_cast<std::size_t>(p) * order + j] = 0.0;
          continue;
        }
        const double kavg = k_average_product([&](double u) { return g(u); }, s, t, 8);
        rows[static_cast<std::size_t>(p) * order + j] =
            fs * kavg * std::sinh(2.0 * s) * 0.5 * ds * rule.weights[j];
      }
    vals[i] = Complex(pairwise_sum(std::span<const double>(rows)), 0.0);
  });

  return RadialProfile::sampled(GridFunction(std::move(nodes), std::move(vals),
                                             GridFunction::Domain::Radial));
}

}  // namespace sphconv
