#include "sphconv/profile.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace sphconv {

namespace {

// clamped-left natural-right cubic spline on an increasing grid
struct Spline {
  std::vector<double> x, y, m;  // m: second derivatives

  double operator()(double t) const {
    if (t <= x.front()) return y.front();
    if (t >= x.back()) return 0.0;
    std::size_t lo = 0, hi = x.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (x[mid] <= t ? lo : hi) = mid;
    }
    const double h = x[hi] - x[lo];
    const double a = (x[hi] - t) / h, b = (t - x[lo]) / h;
    return a * y[lo] + b * y[hi] +
           ((a * a * a - a) * m[lo] + (b * b * b - b) * m[hi]) * h * h / 6.0;
  }
};

Spline build_spline(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  Spline s{x, y, std::vector<double>(n, 0.0)};
  if (n < 3) return s;
  std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
  // clamped at the left end with derivative 0 (even extension)
  b[0] = 2.0 * (x[1] - x[0]);
  c[0] = x[1] - x[0];
  d[0] = 6.0 * ((y[1] - y[0]) / (x[1] - x[0]) - 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    a[i] = x[i] - x[i - 1];
    b[i] = 2.0 * (x[i + 1] - x[i - 1]);
    c[i] = x[i + 1] - x[i];
    d[i] = 6.0 * ((y[i + 1] - y[i]) / (x[i + 1] - x[i]) - (y[i] - y[i - 1]) / (x[i] - x[i - 1]));
  }
  b[n - 1] = 1.0;  // natural right end
  d[n - 1] = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    d[i] -= w * d[i - 1];
  }
  s.m[n - 1] = d[n - 1] / b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) s.m[i] = (d[i] - c[i] * s.m[i + 1]) / b[i];
  return s;
}

}  // namespace

RadialProfile RadialProfile::gaussian(double width) {
  if (!(width > 0)) throw DomainError("gaussian profile: width must be positive");
  RadialProfile p;
  p.family_ = Family::Gaussian;
  p.param_ = width;
  p.decay_margin_ = 1e9;
  p.support_radius_ = width * 9.5;  // exp(-9.5^2/2) ~ 2.6e-20
  p.eval_ = [width](double t) { return std::exp(-t * t / (2.0 * width * width)); };
  return p;
}

RadialProfile RadialProfile::cauchy_decay(double k) {
  if (!(k > 1)) throw DomainError("cauchy_decay profile: need k > 1");
  RadialProfile p;
  p.family_ = Family::CauchyDecay;
  p.param_ = k;
  p.decay_margin_ = k - 1.0;
  p.support_radius_ = 45.0 / k;
  p.eval_ = [k](double t) { return std::pow(std::cosh(t), -k); };
  return p;
}

RadialProfile RadialProfile::compact_bump(double radius) {
  if (!(radius > 0)) throw DomainError("compact_bump profile: radius must be positive");
  RadialProfile p;
  p.family_ = Family::CompactBump;
  p.param_ = radius;
  p.decay_margin_ = 1e9;
  p.support_radius_ = radius;
  p.eval_ = [radius](double t) {
    const double x = (t / radius) * (t / radius);
    return x < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - x)) : 0.0;
  };
  return p;
}

RadialProfile RadialProfile::sampled(const GridFunction& samples) {
  if (samples.nodes.size() < 4) throw GridError("sampled profile: need at least 4 nodes");
  if (samples.nodes.front() < 0) throw DomainError("sampled profile: radial nodes only");
  std::vector<double> ys(samples.values.size());
  for (std::size_t i = 0; i < ys.size(); ++i) ys[i] = samples.values[i].real();
  auto spline = std::make_shared<Spline>(build_spline(samples.nodes, ys));
  RadialProfile p;
  p.family_ = Family::Sampled;
  p.param_ = samples.nodes.back();
  p.decay_margin_ = 1e9;  // compactly supported after the grid
  p.support_radius_ = samples.nodes.back();
  p.eval_ = [spline](double t) { return (*spline)(t); };
  return p;
}

RadialProfile RadialProfile::custom(std::function<double(double)> f, double decay_margin,
                                    double support_radius, std::string label) {
  RadialProfile p;
  p.family_ = Family::Sampled;
  p.param_ = support_radius;
  p.decay_margin_ = decay_margin;
  p.support_radius_ = support_radius;
  p.label_ = std::move(label);
  p.eval_ = std::move(f);
  return p;
}

std::string RadialProfile::describe() const {
  if (!label_.empty()) return label_;
  std::ostringstream os;
  switch (family_) {
    case Family::Gaussian: os << "gaussian:" << param_; break;
    case Family::CauchyDecay: os << "cauchy_decay:" << param_; break;
    case Family::CompactBump: os << "compact_bump:" << param_; break;
    case Family::Sampled: os << "sampled:" << param_; break;
  }
  return os.str();
}

double RadialProfile::transform_cutoff(double im_abs) const {
  const double a = 1.0 + im_abs;
  switch (family_) {
    case Family::Gaussian: {
      const double w2 = param_ * param_;
      return w2 * a + std::sqrt(w2 * w2 * a * a + 84.0 * w2);
    }
    case Family::CauchyDecay: {
      if (decay_margin_ <= im_abs + 1e-9)
        throw DomainError("transform_cutoff: profile decays too slowly for this Im lambda");
      return 42.0 / (param_ - a) + 4.0;
    }
    case Family::CompactBump:
    case Family::Sampled:
      return support_radius_ + 0.5;
  }
  return support_radius_;
}

RadialProfile RadialProfile::scaled(double factor) const {
  RadialProfile p = *this;
  auto base = eval_;
  p.eval_ = [base, factor](double t) { return factor * base(t); };
  return p;
}

RadialProfile RadialProfile::plus(const RadialProfile& other) const {
  RadialProfile p = *this;
  auto f = eval_, g = other.eval_;
  p.decay_margin_ = std::min(decay_margin_, other.decay_margin_);
  p.support_radius_ = std::max(support_radius_, other.support_radius_);
  p.family_ = Family::Sampled;
  p.eval_ = [f, g](double t) { return f(t) + g(t); };
  return p;
}

}  // namespace sphconv
