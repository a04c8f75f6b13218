#ifndef SPHCONV_PROFILE_HPP
#define SPHCONV_PROFILE_HPP

#include <functional>
#include <memory>
#include <string>

#include "sphconv/quadrature.hpp"

namespace sphconv {

/// An even, smooth scalar profile f(t) standing for the K-bi-invariant
/// function f(k1 a_t k2) = profile(|t|).
///
/// decay_margin() bounds the strip |Im lambda| on which the spherical
/// transform of the profile converges; support_radius() is where the profile
/// (not the transform integrand) becomes negligible.
class RadialProfile {
 public:
  enum class Family { Gaussian, CauchyDecay, CompactBump, Sampled };

  static RadialProfile gaussian(double width);
  /// (cosh t)^{-k}; transform strip |Im lambda| < k - 1
  static RadialProfile cauchy_decay(double k);
  static RadialProfile compact_bump(double radius);
  /// cubic-spline interpolant of samples on [0, R], zero beyond, f'(0) = 0
  static RadialProfile sampled(const GridFunction& samples);
  /// arbitrary even closure; caller declares the decay strip and support
  static RadialProfile custom(std::function<double(double)> f, double decay_margin,
                              double support_radius, std::string label);

  double operator()(double t) const { return eval_(std::abs(t)); }
  Family family() const { return family_; }
  double parameter() const { return param_; }
  double decay_margin() const { return decay_margin_; }
  double support_radius() const { return support_radius_; }
  std::string describe() const;

  /// radius beyond which |f(t)| e^{(1+im_abs) t} < 1e-18 * scale
  double transform_cutoff(double im_abs) const;

  RadialProfile scaled(double factor) const;          // factor * f
  RadialProfile plus(const RadialProfile& other) const;

 private:
  RadialProfile() = default;
  Family family_ = Family::Gaussian;
  double param_ = 1.0;
  double decay_margin_ = 0.0;
  double support_radius_ = 0.0;
  std::string label_;
  std::function<double(double)> eval_;
};

}  // namespace sphconv

#endif
