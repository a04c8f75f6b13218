#ifndef SPHCONV_GROUP_HPP
#define SPHCONV_GROUP_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "sphconv/quadrature.hpp"

namespace sphconv {

/// A 2x2 real matrix of determinant one. Entries are stored as given;
/// construction rejects anything further than 1e-10 from the unimodular
/// surface instead of renormalizing.
struct GroupElement {
  double m11 = 1.0, m12 = 0.0, m21 = 0.0, m22 = 1.0;

  double det() const { return m11 * m22 - m12 * m21; }
  GroupElement inverse() const { return {m22, -m12, -m21, m11}; }
  double frobenius2() const { return m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22; }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
  }

  static GroupElement identity() { return {}; }
  /// diag(e^t, e^-t)
  static GroupElement diag_exp(double t) { return {std::exp(t), 0.0, 0.0, std::exp(-t)}; }
  /// rotation by theta
  static GroupElement rotation(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c, -s, s, c};
  }
  /// unit upper triangular with entry u
  static GroupElement shear(double u) { return {1.0, u, 0.0, 1.0}; }
};

GroupElement make_element(double m11, double m12, double m21, double m22);

/// g = rotation(theta) * diag(e^t, e^-t) * shear(u)
struct IwasawaCoords {
  double theta = 0.0;
  double t = 0.0;
  double u = 0.0;
  GroupElement recompose() const;
};

/// g = rotation(theta1) * diag(e^t, e^-t) * rotation(theta2), t >= 0
struct PolarCoords {
  double theta1 = 0.0;
  double t = 0.0;
  double theta2 = 0.0;
  GroupElement recompose() const;
};

IwasawaCoords iwasawa(const GroupElement& g);
PolarCoords polar(const GroupElement& g);

/// Radial gauge: the polar coordinate t, so sigma(diag_exp(t)) = |t|.
double sigma(const GroupElement& g);

/// Iwasawa A-coordinate of g (the t in g = k a_t n), closed form.
inline double iwasawa_t(const GroupElement& g) {
  return 0.5 * std::log(g.m11 * g.m11 + g.m21 * g.m21);
}

/// Polar radial coordinate, closed form via cosh(2t) = |g|_F^2 / 2.
inline double polar_t(const GroupElement& g) {
  const double c = 0.5 * g.frobenius2();
  return c <= 1.0 ? 0.0 : 0.5 * std::acosh(c);
}

/// exp(h H1 + ep E + em F) in the basis H1 = diag(1,-1), E upper, F lower.
GroupElement exp_tangent(double h, double ep, double em);

/// Tail completion shared with d_integral: fits t^{-p}(b0+b1/t+b2/t^2) to the
/// last stretch of the radial profile and integrates the model beyond t_max.
/// Returns 0 when the window is not positive and decreasing.
double haar_tail_completion(std::span<const double> tnode, std::span<const double> radial,
                            double t_max);

/// Haar integral in polar coordinates with radial density sinh(2t) and
/// vol(K) = 1:
///   int_K int_0^{t_max} int_K F(k1 a_t k2) sinh(2t) dt dk1 dk2.
/// A fitted algebraic tail is appended when the K-averaged radial integrand
/// is still positive, decreasing and above tol at t_max (otherwise a
/// TruncationWarning alone would mark the loss).
template <class F>
auto haar_integrate(F&& f, const QuadratureSpec& q, Warnings* w = nullptr) {
  using R = decltype(f(GroupElement{}));
  q.validate();
  const int n1 = q.k_nodes, n2 = q.k_nodes;
  const int order = 12;
  const GaussRule& rule = gauss_legendre(order);
  const int nt = q.t_panels * order;
  const double dt = q.t_max / q.t_panels;

  std::vector<double> ct(static_cast<std::size_t>(n1)), st(static_cast<std::size_t>(n1));
  for (int i = 0; i < n1; ++i) {
    const double th = 2.0 * 3.14159265358979323846 * i / n1;
    ct[i] = std::cos(th);
    st[i] = std::sin(th);
  }
  std::vector<double> tnode(static_cast<std::size_t>(nt)), tweight(tnode.size());
  for (int p = 0; p < q.t_panels; ++p)
    for (int j = 0; j < order; ++j) {
      tnode[static_cast<std::size_t>(p) * order + j] = p * dt + 0.5 * dt * (rule.nodes[j] + 1.0);
      tweight[static_cast<std::size_t>(p) * order + j] = 0.5 * dt * rule.weights[j];
    }

  // per-(k1,t) row sums over k2; deterministic pairwise within each row
  std::vector<R> rows(static_cast<std::size_t>(n1) * nt);
  parallel_for(rows.size(), [&](std::size_t idx) {
    const int i = static_cast<int>(idx / nt);
    const int jt = static_cast<int>(idx % nt);
    const double et = std::exp(tnode[jt]), emt = 1.0 / et;
    // k1 * a_t
    const GroupElement left{ct[i] * et, -st[i] * emt, st[i] * et, ct[i] * emt};
    std::vector<R> buf(static_cast<std::size_t>(n2));
    for (int k = 0; k < n2; ++k) {
      const GroupElement x{left.m11 * ct[k] + left.m12 * st[k],
                           -left.m11 * st[k] + left.m12 * ct[k],
                           left.m21 * ct[k] + left.m22 * st[k],
                           -left.m21 * st[k] + left.m22 * ct[k]};
      buf[k] = f(x);
    }
    rows[idx] = pairwise_sum(std::span<const R>(buf)) * (1.0 / n2);
  });

  // radial profile (K-averaged integrand incl. density) for tail handling
  std::vector<double> radial(static_cast<std::size_t>(nt), 0.0);
  for (int jt = 0; jt < nt; ++jt) {
    R s{};
    for (int i = 0; i < n1; ++i) s += rows[static_cast<std::size_t>(i) * nt + jt];
    radial[jt] = std::abs(s) * (1.0 / n1) * std::sinh(2.0 * tnode[jt]);
  }

  std::vector<R> weighted(rows.size());
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    const int jt = static_cast<int>(idx % nt);
    weighted[idx] = rows[idx] * (tweight[jt] * std::sinh(2.0 * tnode[jt]) / n1);
  }
  R total = pairwise_sum(std::span<const R>(weighted));

  const double scale = *std::max_element(radial.begin(), radial.end());
  if (radial[static_cast<std::size_t>(nt) - 1] > q.tol * std::max(scale, 1e-300)) {
    warn(w, WarningKind::Truncation,
         "haar_integrate: radial integrand above tol at t_max");
    total += static_cast<R>(haar_tail_completion(tnode, radial, q.t_max));
  }
  return total;
}

/// Polar reduction of haar_integrate for K-bi-invariant integrands:
/// int_0^{t_max} F(t) sinh(2t) dt on the same radial grid.
template <class F>
auto haar_integrate_radial(F&& f, const QuadratureSpec& q, Warnings* w = nullptr) {
  q.validate();
  return radial_integrate([&](double t) { return f(t) * std::sinh(2.0 * t); }, q.t_max,
                          q.t_panels, 12, w);
}

}  // namespace sphconv

#endif
