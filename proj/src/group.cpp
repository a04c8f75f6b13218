#include "sphconv/group.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace sphconv {

namespace {
constexpr double kPi = 3.14159265358979323846;

double wrap_angle(double a) {
  // into (-pi, pi]
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}
}  // namespace

GroupElement make_element(double m11, double m12, double m21, double m22) {
  if (!std::isfinite(m11) || !std::isfinite(m12) || !std::isfinite(m21) || !std::isfinite(m22))
    throw DomainError("make_element: entries must be finite");
  GroupElement g{m11, m12, m21, m22};
  if (std::abs(g.det() - 1.0) > 1e-10)
    throw UnimodularityError("make_element: |det - 1| exceeds 1e-10");
  return g;
}

GroupElement IwasawaCoords::recompose() const {
  return GroupElement::rotation(theta) * GroupElement::diag_exp(t) * GroupElement::shear(u);
}

GroupElement PolarCoords::recompose() const {
  return GroupElement::rotation(theta1) * GroupElement::diag_exp(t) *
         GroupElement::rotation(theta2);
}

IwasawaCoords iwasawa(const GroupElement& g) {
  // orthogonal-triangular split of the columns; first column fixes k and e^t
  const double r = std::hypot(g.m11, g.m21);
  IwasawaCoords c;
  c.theta = std::atan2(g.m21, g.m11);
  c.t = std::log(r);
  const double cth = g.m11 / r, sth = g.m21 / r;
  c.u = (cth * g.m12 + sth * g.m22) / r;
  return c;
}

PolarCoords polar(const GroupElement& g) {
  // closed-form 2x2 singular value split with both rotation factors in SO(2)
  const double E = 0.5 * (g.m11 + g.m22);
  const double F = 0.5 * (g.m11 - g.m22);
  const double G = 0.5 * (g.m21 + g.m12);
  const double H = 0.5 * (g.m21 - g.m12);
  const double Q = std::hypot(E, H);
  const double R = std::hypot(F, G);

  PolarCoords c;
  c.t = std::log(Q + R);
  const double a2 = std::atan2(H, E);
  if (c.t < 1e-12) {
    // rotation: theta2 = 0 by convention
    c.theta1 = a2;
    c.t = std::max(c.t, 0.0);
    c.theta2 = 0.0;
    return c;
  }
  const double a1 = std::atan2(G, F);
  c.theta1 = 0.5 * (a2 + a1);
  c.theta2 = 0.5 * (a2 - a1);
  // (theta1, theta2) ~ (theta1 - pi, theta2 + pi); normalize theta1 to [0, pi)
  while (c.theta1 < 0.0) {
    c.theta1 += kPi;
    c.theta2 -= kPi;
  }
  while (c.theta1 >= kPi) {
    c.theta1 -= kPi;
    c.theta2 += kPi;
  }
  c.theta2 = wrap_angle(c.theta2);
  return c;
}

double sigma(const GroupElement& g) {
  const double E = 0.5 * (g.m11 + g.m22);
  const double F = 0.5 * (g.m11 - g.m22);
  const double G = 0.5 * (g.m21 + g.m12);
  const double H = 0.5 * (g.m21 - g.m12);
  const double s = std::log(std::hypot(E, H) + std::hypot(F, G));
  return std::max(s, 0.0);
}

GroupElement exp_tangent(double h, double ep, double em) {
  // X^2 = (h^2 + ep*em) I, so exp(X) = cosh(sqrt(D)) I + sinhc(sqrt(D)) X
  const double D = h * h + ep * em;
  double ch, sh;  // cosh(sqrt(D)), sinh(sqrt(D))/sqrt(D)
  if (D > 1e-12) {
    const double s = std::sqrt(D);
    ch = std::cosh(s);
    sh = std::sinh(s) / s;
  } else if (D < -1e-12) {
    const double s = std::sqrt(-D);
    ch = std::cos(s);
    sh = std::sin(s) / s;
  } else {
    ch = 1.0 + D / 2.0;
    sh = 1.0 + D / 6.0;
  }
  return {ch + sh * h, sh * ep, sh * em, ch - sh * h};
}

double haar_tail_completion(std::span<const double> tnode, std::span<const double> radial,
                            double t_max) {
  // window: nodes in [0.5 t_max, t_max], thinned to ~48 samples
  std::vector<double> ts, vs;
  const double lo = 0.5 * t_max;
  for (std::size_t i = 0; i < tnode.size(); ++i)
    if (tnode[i] >= lo) {
      ts.push_back(tnode[i]);
      vs.push_back(radial[i]);
    }
  if (ts.size() > 48) {
    const std::size_t stride = ts.size() / 48;
    std::vector<double> ts2, vs2;
    for (std::size_t i = 0; i < ts.size(); i += stride) {
      ts2.push_back(ts[i]);
      vs2.push_back(vs[i]);
    }
    ts.swap(ts2);
    vs.swap(vs2);
  }
  if (ts.size() < 10) return 0.0;
  for (std::size_t i = 1; i < vs.size(); ++i)
    if (!(vs[i] > 0.0) || vs[i] > vs[i - 1] * 1.0000001) return 0.0;

  // golden-section over the decay power; inner linear LS via the shared fit
  auto residual_for = [&](double p) {
    // LS fit of v * t^p ~ b0 + b1/t + b2/t^2, return rms misfit
    double A[3][3] = {}, rhs[3] = {};
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double y = vs[i] * std::pow(ts[i], p);
      const double u = 1.0 / ts[i];
      const double base[3] = {1.0, u, u * u};
      for (int a = 0; a < 3; ++a) {
        rhs[a] += base[a] * y;
        for (int b = 0; b < 3; ++b) A[a][b] += base[a] * base[b];
      }
    }
    double M[3][4];
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) M[a][b] = A[a][b];
      M[a][3] = rhs[a];
    }
    for (int c = 0; c < 3; ++c) {
      int piv = c;
      for (int r = c + 1; r < 3; ++r)
        if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
      std::swap(M[c], M[piv]);
      if (std::abs(M[c][c]) < 1e-300) return 1e300;
      for (int r = c + 1; r < 3; ++r) {
        const double f = M[r][c] / M[c][c];
        for (int cc = c; cc < 4; ++cc) M[r][cc] -= f * M[c][cc];
      }
    }
    double beta[3];
    for (int c = 2; c >= 0; --c) {
      double s = M[c][3];
      for (int cc = c + 1; cc < 3; ++cc) s -= M[c][cc] * beta[cc];
      beta[c] = s / M[c][c];
    }
    double rms = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double u = 1.0 / ts[i];
      const double model = (beta[0] + beta[1] * u + beta[2] * u * u) * std::pow(ts[i], -p);
      const double d = (model - vs[i]) / vs[i];
      rms += d * d;
    }
    return std::sqrt(rms / ts.size());
  };

  double a = 1.2, b = 12.0;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = residual_for(x1), f2 = residual_for(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = residual_for(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = residual_for(x2);
    }
  }
  double p = 0.5 * (a + b);
  if (residual_for(p) > 1e-3) return 0.0;  // model does not describe this tail
  // integrands built from Xi^2 (1+t)^{-r} have integer decay power; snap when
  // the coarse fit lands near one, then the refined polynomial model below is
  // structurally exact modulo e^{-4t} terms
  const double snapped = std::round(p);
  if (snapped > 1.0 && std::abs(p - snapped) < 0.2 &&
      residual_for(snapped) < 10.0 * residual_for(p))
    p = snapped;

  // degree-6 Chebyshev fit of value * t^p against v = t_max / t on [1, 2]
  const int deg = 6;
  std::vector<std::array<double, deg + 1>> basis(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double xi = 2.0 * (t_max / ts[i]) - 3.0;  // v in [1, 2] -> xi in [-1, 1]
    basis[i][0] = 1.0;
    basis[i][1] = xi;
    for (int k = 2; k <= deg; ++k) basis[i][k] = 2.0 * xi * basis[i][k - 1] - basis[i][k - 2];
  }
  double N[deg + 1][deg + 2] = {};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double y = vs[i] * std::pow(ts[i], p);
    for (int r = 0; r <= deg; ++r) {
      for (int c = 0; c <= deg; ++c) N[r][c] += basis[i][r] * basis[i][c];
      N[r][deg + 1] += basis[i][r] * y;
    }
  }
  for (int c = 0; c <= deg; ++c) {
    int piv = c;
    for (int r = c + 1; r <= deg; ++r)
      if (std::abs(N[r][c]) > std::abs(N[piv][c])) piv = r;
    for (int cc = 0; cc <= deg + 1; ++cc) std::swap(N[c][cc], N[piv][cc]);
    if (std::abs(N[c][c]) < 1e-300) return 0.0;
    for (int r = c + 1; r <= deg; ++r) {
      const double f = N[r][c] / N[c][c];
      for (int cc = c; cc <= deg + 1; ++cc) N[r][cc] -= f * N[c][cc];
    }
  }
  double coef[deg + 1];
  for (int c = deg; c >= 0; --c) {
    double s = N[c][deg + 1];
    for (int cc = c + 1; cc <= deg; ++cc) s -= N[c][cc] * coef[cc];
    coef[c] = s / N[c][c];
  }

  // tail = t_max^{1-p} int_0^1 v^{p-2} P(v) dv with P in the same basis
  const GaussRule& rule = gauss_legendre(32);
  double integral = 0.0;
  for (int j = 0; j < 32; ++j) {
    const double v = 0.5 * (rule.nodes[j] + 1.0);
    const double xi = 2.0 * v - 3.0;
    double b0 = 1.0, b1 = xi, acc = coef[0] + coef[1] * xi;
    for (int k = 2; k <= deg; ++k) {
      const double bk = 2.0 * xi * b1 - b0;
      acc += coef[k] * bk;
      b0 = b1;
      b1 = bk;
    }
    integral += 0.5 * rule.weights[j] * std::pow(v, p - 2.0) * acc;
  }
  const double tail = std::pow(t_max, 1.0 - p) * integral;
  return std::max(tail, 0.0);
}

}  // namespace sphconv
