#ifndef SPHCONV_QUADRATURE_HPP
#define SPHCONV_QUADRATURE_HPP

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "sphconv/errors.hpp"
#include "sphconv/parallel.hpp"

namespace sphconv {

using Complex = std::complex<double>;

/// Grid resolutions shared by every integration domain: the circle K, the
/// radial half-line [0, t_max], and the spectral line [-lambda_max, lambda_max].
struct QuadratureSpec {
  int k_nodes = 256;       // equispaced nodes on K
  double t_max = 30.0;     // radial truncation
  int t_panels = 60;       // composite panels on [0, t_max]
  double lambda_max = 40.0;
  int lambda_nodes = 800;  // total nodes on the spectral line
  double tol = 1e-8;

  void validate() const;
  static QuadratureSpec defaults() { return {}; }
};

/// One-dimensional sampled data. Nodes strictly increasing, one value each.
struct GridFunction {
  enum class Domain { Circle, Radial, Spectral };
  std::vector<double> nodes;
  std::vector<Complex> values;
  Domain domain_tag = Domain::Radial;

  GridFunction() = default;
  GridFunction(std::vector<double> n, std::vector<Complex> v, Domain d);
};

// Gauss-Legendre rule of the given order on [-1, 1]; cached, thread-safe.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

namespace detail {

template <class F>
auto eval_buffer(const std::vector<double>& xs, F&& f) {
  using R = decltype(f(0.0));
  std::vector<R> buf(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) buf[i] = f(xs[i]);
  return buf;
}

}  // namespace detail

/// Mean of F over the unit circle (vol(K) = 1) with n equispaced nodes.
/// Spectrally accurate for analytic periodic integrands.
template <class F>
auto circle_integrate(F&& f, int n) {
  if (n < 4) throw DomainError("circle_integrate: need at least 4 nodes");
  std::vector<double> xs(n);
  const double h = 2.0 * 3.14159265358979323846 / n;
  for (int j = 0; j < n; ++j) xs[j] = j * h;
  auto buf = detail::eval_buffer(xs, f);
  auto s = pairwise_sum(std::span<const typename decltype(buf)::value_type>(buf));
  return s * (1.0 / n);
}

/// Composite Gauss quadrature of F over [0, t_max] with `panels` equal panels.
template <class F>
auto radial_integrate(F&& f, double t_max, int panels, int nodes_per_panel,
                      Warnings* w = nullptr) {
  if (t_max <= 0 || panels < 1) throw DomainError("radial_integrate: bad panelization");
  const GaussRule& rule = gauss_legendre(nodes_per_panel);
  const double dt = t_max / panels;
  std::vector<double> xs;
  std::vector<double> ws;
  xs.reserve(static_cast<std::size_t>(panels) * nodes_per_panel);
  ws.reserve(xs.capacity());
  for (int p = 0; p < panels; ++p) {
    const double a = p * dt;
    for (int j = 0; j < nodes_per_panel; ++j) {
      xs.push_back(a + 0.5 * dt * (rule.nodes[j] + 1.0));
      ws.push_back(0.5 * dt * rule.weights[j]);
    }
  }
  auto buf = detail::eval_buffer(xs, f);
  double max_abs = 0.0;
  for (const auto& v : buf) max_abs = std::max(max_abs, std::abs(v));
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= ws[i];
  if (std::abs(f(t_max)) > 1e-12 * max_abs)
    warn(w, WarningKind::Truncation,
         "radial_integrate: integrand not negligible at t_max=" + std::to_string(t_max));
  return pairwise_sum(std::span<const typename decltype(buf)::value_type>(buf));
}

/// Symmetric composite Gauss quadrature over [-lambda_max, lambda_max].
/// With even = true only [0, lambda_max] is evaluated and doubled.
template <class F>
auto line_integrate(F&& f, double lambda_max, int nodes, bool even = false,
                    Warnings* w = nullptr) {
  if (lambda_max <= 0 || nodes < 4) throw DomainError("line_integrate: bad grid");
  const int order = 12;
  if (even) {
    const int panels = std::max(1, nodes / (2 * order));
    auto half = radial_integrate(f, lambda_max, panels, order, nullptr);
    if (std::abs(f(lambda_max)) > 1e-12 * (std::abs(half) / lambda_max + 1e-300))
      warn(w, WarningKind::Truncation, "line_integrate: integrand not negligible at lambda_max");
    return 2.0 * half;
  }
  const int panels = std::max(2, nodes / order);
  const GaussRule& rule = gauss_legendre(order);
  const double width = 2.0 * lambda_max / panels;
  std::vector<double> xs, ws;
  xs.reserve(static_cast<std::size_t>(panels) * order);
  ws.reserve(xs.capacity());
  for (int p = 0; p < panels; ++p) {
    const double a = -lambda_max + p * width;
    for (int j = 0; j < order; ++j) {
      xs.push_back(a + 0.5 * width * (rule.nodes[j] + 1.0));
      ws.push_back(0.5 * width * rule.weights[j]);
    }
  }
  auto buf = detail::eval_buffer(xs, f);
  double max_abs = 0.0;
  for (const auto& v : buf) max_abs = std::max(max_abs, std::abs(v));
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= ws[i];
  if (std::max(std::abs(f(lambda_max)), std::abs(f(-lambda_max))) > 1e-12 * max_abs)
    warn(w, WarningKind::Truncation, "line_integrate: integrand not negligible at +-lambda_max");
  return pairwise_sum(std::span<const typename decltype(buf)::value_type>(buf));
}

}  // namespace sphconv

#endif
