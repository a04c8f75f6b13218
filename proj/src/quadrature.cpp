#include "sphconv/quadrature.hpp"

#include <array>
#include <cmath>
#include <mutex>

namespace sphconv {

void QuadratureSpec::validate() const {
  if (k_nodes < 4 || t_panels < 4 || lambda_nodes < 4)
    throw DomainError("QuadratureSpec: node/panel counts must be >= 4");
  if (!(t_max > 0) || !(lambda_max > 0))
    throw DomainError("QuadratureSpec: truncations must be positive");
  if (!(tol > 0) || tol > 1e-2)
    throw DomainError("QuadratureSpec: tol must lie in (0, 1e-2]");
}

GridFunction::GridFunction(std::vector<double> n, std::vector<Complex> v, Domain d)
    : nodes(std::move(n)), values(std::move(v)), domain_tag(d) {
  if (nodes.size() != values.size())
    throw GridError("GridFunction: nodes/values length mismatch");
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i] > nodes[i - 1]))
      throw GridError("GridFunction: nodes must be strictly increasing");
}

namespace {

constexpr int kMaxGaussOrder = 64;

GaussRule compute_gauss(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton from the Chebyshev-based initial guess
    double z = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    r.nodes[i] = -z;
    r.nodes[n - 1 - i] = z;
    r.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    r.weights[n - 1 - i] = r.weights[i];
  }
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1 || order > kMaxGaussOrder)
    throw DomainError("gauss_legendre: order out of range");
  static std::array<GaussRule, kMaxGaussOrder + 1> cache;
  static std::array<std::once_flag, kMaxGaussOrder + 1> flags;
  std::call_once(flags[order], [order] { cache[order] = compute_gauss(order); });
  return cache[order];
}

const char* warning_name(WarningKind kind) {
  switch (kind) {
    case WarningKind::Truncation: return "TruncationWarning";
    case WarningKind::Accuracy: return "AccuracyWarning";
    case WarningKind::NumericalNoise: return "NumericalNoiseWarning";
    case WarningKind::SmallDivisor: return "SmallDivisorWarning";
  }
  return "UnknownWarning";
}

}  // namespace sphconv
