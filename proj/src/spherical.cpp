#include "sphconv/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace sphconv {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRadiusSwitch = 2.0;  // circle path below, transformed path above

int circle_nodes_for(double t, double abs_re_lambda, int base) {
  // resolve both the e^{-2t}-wide analyticity strip and the oscillation
  const double strip = 50.0 * std::exp(2.0 * t);
  const double osc = 8.0 * (std::abs(abs_re_lambda) * t + 1.0);
  double n = std::max({static_cast<double>(base), strip, osc});
  return static_cast<int>(std::min(n, 2.0e5)) | 1;  // odd avoids exact theta = pi/2
}

Complex circle_phi(SpectralParam lambda, const GroupElement& g, int n) {
  const Complex expo = Complex(0, 1) * lambda - 1.0;
  std::vector<Complex> buf(static_cast<std::size_t>(n));
  const bool real_lam = lambda.imag() == 0.0;
  for (int j = 0; j < n; ++j) {
    const double th = 2.0 * kPi * j / n;
    const double c = std::cos(th), s = std::sin(th);
    const double x = g.m11 * c + g.m12 * s;
    const double y = g.m21 * c + g.m22 * s;
    const double tIw = 0.5 * std::log(x * x + y * y);
    if (real_lam) {
      const double r = std::exp(-tIw), ph = lambda.real() * tIw;
      buf[j] = Complex(r * std::cos(ph), r * std::sin(ph));
    } else {
      buf[j] = std::exp(expo * tIw);
    }
  }
  // divide rather than scale: keeps the mean of an exactly constant
  // integrand exact (the vanishing-exponent line lambda = -i rho)
  return pairwise_sum(std::span<const Complex>(buf)) / static_cast<double>(n);
}

// K-average after the substitution u = 2t - w^2:
//   phi_lambda(a_t) = (sqrt2/pi) int_0^{2t} cosh((i lambda/2) u) / sqrt(cosh 2t - cosh u) du
Complex transformed_phi(SpectralParam lambda, double t, int panels, int order) {
  const double alpha = 2.0 * t;
  const double wmax = std::sqrt(alpha);
  const GaussRule& rule = gauss_legendre(order);
  const double dw = wmax / panels;
  const Complex half_il = Complex(0, 0.5) * lambda;
  const bool real_lam = lambda.imag() == 0.0;
  std::vector<Complex> buf(static_cast<std::size_t>(panels) * order);
  std::size_t m = 0;
  for (int p = 0; p < panels; ++p) {
    const double a = p * dw;
    for (int j = 0; j < order; ++j, ++m) {
      const double w = a + 0.5 * dw * (rule.nodes[j] + 1.0);
      const double u = alpha - w * w;
      const double den = std::sqrt(2.0 * std::sinh(alpha - 0.5 * w * w) * std::sinh(0.5 * w * w));
      const Complex num = real_lam ? Complex(std::cos(0.5 * lambda.real() * u), 0.0)
                                   : std::cosh(half_il * u);
      buf[m] = num * (2.0 * w / den) * (0.5 * dw * rule.weights[j]);
    }
  }
  return pairwise_sum(std::span<const Complex>(buf)) * (std::sqrt(2.0) / kPi);
}

int transformed_panels_for(SpectralParam lambda, double t) {
  const double cycles = std::abs(lambda.real()) * t / (2.0 * kPi);
  return std::max(12, static_cast<int>(std::ceil(cycles / 1.2)) + 4);
}

}  // namespace

Complex phi_radial(SpectralParam lambda, double t, const QuadratureSpec& q, Warnings* w) {
  t = std::abs(t);
  if (std::abs(lambda.imag()) > 1.5)
    warn(w, WarningKind::Accuracy, "phi: |Im lambda| beyond the guaranteed band");
  if (t < 1e-14) return Complex(1.0, 0.0);
  if (t <= kRadiusSwitch) {
    const int n = circle_nodes_for(t, lambda.real(), q.k_nodes);
    const Complex v = circle_phi(lambda, GroupElement::diag_exp(t), n);
    if (w) {
      const Complex v2 = circle_phi(lambda, GroupElement::diag_exp(t), (2 * n) | 1);
      if (std::abs(v - v2) > q.tol * (1.0 + std::abs(v2)))
        warn(w, WarningKind::Accuracy, "phi: circle refinement check above tol");
      return v2;
    }
    return v;
  }
  const int panels = transformed_panels_for(lambda, t);
  const Complex v = transformed_phi(lambda, t, panels, 12);
  if (w) {
    const Complex v2 = transformed_phi(lambda, t, panels + panels / 2 + 2, 12);
    if (std::abs(v - v2) > q.tol * (1.0 + std::abs(v2)))
      warn(w, WarningKind::Accuracy, "phi: panel refinement check above tol");
    return v2;
  }
  return v;
}

Complex phi(SpectralParam lambda, const GroupElement& g, const QuadratureSpec& q, Warnings* w) {
  const double t = polar_t(g);
  if (std::abs(lambda.imag()) > 1.5)
    warn(w, WarningKind::Accuracy, "phi: |Im lambda| beyond the guaranteed band");
  if (t < 1e-14) return Complex(1.0, 0.0);
  if (t <= kRadiusSwitch) {
    const int n = circle_nodes_for(t, lambda.real(), q.k_nodes);
    const Complex v = circle_phi(lambda, g, n);
    if (w) {
      const Complex v2 = circle_phi(lambda, g, (2 * n) | 1);
      if (std::abs(v - v2) > q.tol * (1.0 + std::abs(v2)))
        warn(w, WarningKind::Accuracy, "phi: circle refinement check above tol");
      return v2;
    }
    return v;
  }
  return phi_radial(lambda, t, q, w);
}

double xi(const GroupElement& g, const QuadratureSpec& q, Warnings* w) {
  return phi(SpectralParam(0.0, 0.0), g, q, w).real();
}

PhiTable::PhiTable(SpectralParam lambda, double t_max, const QuadratureSpec& q)
    : lambda_(lambda), t_max_(t_max) {
  degree_ = 16;
  width_ = std::min(0.5, 4.0 / (1.0 + std::abs(lambda.real())));
  const int panels = std::max(2, static_cast<int>(std::ceil(t_max / width_)));
  width_ = t_max / panels;
  const int m = degree_ + 1;
  coeffs_.assign(static_cast<std::size_t>(panels) * m, Complex{});

  std::vector<double> chebx(m);
  for (int j = 0; j < m; ++j) chebx[j] = std::cos(kPi * j / degree_);  // second kind

  std::vector<Complex> values(static_cast<std::size_t>(panels) * m);
  parallel_for(values.size(), [&](std::size_t idx) {
    const int p = static_cast<int>(idx) / m;
    const int j = static_cast<int>(idx) % m;
    const double t = (p + 0.5 * (chebx[j] + 1.0)) * width_;
    values[idx] = std::exp(t) * phi_radial(lambda_, t, q, nullptr);
  });

  // Chebyshev coefficients by the discrete cosine sum on extrema nodes
  for (int p = 0; p < panels; ++p) {
    const Complex* v = &values[static_cast<std::size_t>(p) * m];
    Complex* c = &coeffs_[static_cast<std::size_t>(p) * m];
    for (int k = 0; k <= degree_; ++k) {
      Complex s{};
      for (int j = 0; j <= degree_; ++j) {
        const double wj = (j == 0 || j == degree_) ? 0.5 : 1.0;
        s += wj * v[j] * std::cos(kPi * k * j / degree_);
      }
      const double wk = (k == 0 || k == degree_) ? 1.0 : 2.0;
      c[k] = s * (wk / degree_);
    }
  }
}

Complex PhiTable::operator()(double t) const {
  t = std::abs(t);
  if (t >= t_max_) t = t_max_ - 1e-13;
  const int m = degree_ + 1;
  const int p = std::min(static_cast<int>(t / width_),
                         static_cast<int>(coeffs_.size()) / m - 1);
  const double x = 2.0 * (t / width_ - p) - 1.0;  // panel-local in [-1, 1]
  const Complex* c = &coeffs_[static_cast<std::size_t>(p) * m];
  Complex b1{}, b2{};
  for (int k = degree_; k >= 1; --k) {
    const Complex b0 = 2.0 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  const Complex val = x * b1 - b2 + c[0];
  return val * std::exp(-t);
}

const XiTable& shared_xi_table(const QuadratureSpec& q, double extent) {
  static std::mutex mu;
  static std::map<std::pair<double, double>, std::unique_ptr<XiTable>> cache;
  const double bucket = 8.0 * std::ceil(extent / 8.0);
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(bucket, q.tol);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<XiTable>(bucket, q)).first;
  return *it->second;
}

double radial_casimir_residual(SpectralParam lambda, std::span<const double> t_grid,
                               const QuadratureSpec& q) {
  const double h = 1e-3;
  const Complex eig = lambda * lambda + 1.0;
  double worst = 0.0;
  std::vector<double> res(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) {
    const double t = t_grid[i];
    const Complex fm2 = phi_radial(lambda, t - 2 * h, q);
    const Complex fm1 = phi_radial(lambda, t - h, q);
    const Complex f0 = phi_radial(lambda, t, q);
    const Complex fp1 = phi_radial(lambda, t + h, q);
    const Complex fp2 = phi_radial(lambda, t + 2 * h, q);
    const Complex d2_h = (fp1 - 2.0 * f0 + fm1) / (h * h);
    const Complex d2_2h = (fp2 - 2.0 * f0 + fm2) / (4.0 * h * h);
    const Complex d1_h = (fp1 - fm1) / (2.0 * h);
    const Complex d1_2h = (fp2 - fm2) / (4.0 * h);
    const Complex d2 = (4.0 * d2_h - d2_2h) / 3.0;
    const Complex d1 = (4.0 * d1_h - d1_2h) / 3.0;
    res[i] = std::abs(d2 + 2.0 / std::tanh(2.0 * t) * d1 + eig * f0);
  });
  for (double r : res) worst = std::max(worst, r);
  return worst;
}

double check_functional_equation(SpectralParam lambda, const GroupElement& g,
                                 const GroupElement& h, const QuadratureSpec& q) {
  const Complex lhs = circle_integrate(
      [&](double th) { return phi(lambda, g * GroupElement::rotation(th) * h, q); },
      q.k_nodes);
  const Complex rhs = phi(lambda, g, q) * phi(lambda, h, q);
  return std::abs(lhs - rhs);
}

CFunctionValue c_function(SpectralParam lambda, const QuadratureSpec& q) {
  if (lambda.imag() != 0.0) throw DomainError("c_function: lambda must be real");
  const double lam = lambda.real();
  if (std::abs(lam) < 0.1) throw DomainError("c_function: |lambda| >= 0.1 required");

  const int n = 25;
  const double t0 = 8.0, t1 = 14.0;
  std::vector<double> ts(n), y(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    ts[i] = t0 + (t1 - t0) * static_cast<double>(i) / (n - 1);
    y[i] = phi_radial(lambda, ts[i], q).real() * std::exp(ts[i]);
  });

  // y(t) = 2 Re c * cos(lam t) - 2 Im c * sin(lam t), normal equations
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
  for (int i = 0; i < n; ++i) {
    const double c = 2.0 * std::cos(lam * ts[i]);
    const double s = -2.0 * std::sin(lam * ts[i]);
    a11 += c * c;
    a12 += c * s;
    a22 += s * s;
    b1 += c * y[i];
    b2 += s * y[i];
  }
  const double det = a11 * a22 - a12 * a12;
  if (std::abs(det) < 1e-14) throw FitError("c_function: degenerate fit basis");
  const double re = (a22 * b1 - a12 * b2) / det;
  const double im = (a11 * b2 - a12 * b1) / det;

  double scale = 0.0, worst = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(y[i]));
  for (int i = 0; i < n; ++i) {
    const double model = 2.0 * re * std::cos(lam * ts[i]) - 2.0 * im * std::sin(lam * ts[i]);
    worst = std::max(worst, std::abs(model - y[i]));
  }
  CFunctionValue out{Complex(re, im), worst / std::max(scale, 1e-300)};
  if (out.fit_residual > 1e-3) throw FitError("c_function: asymptotic fit residual above 1e-3");
  return out;
}

}  // namespace sphconv
