#ifndef SPHCONV_TRANSFORM_HPP
#define SPHCONV_TRANSFORM_HPP

#include <string>
#include <vector>

#include "sphconv/profile.hpp"
#include "sphconv/spherical.hpp"

namespace sphconv {

/// The strip |Im lambda| <= epsilon (rho = 1), epsilon = 2/p - 1.
struct TubeDomain {
  double epsilon = 0.0;
};

TubeDomain tube_for_p(double p);
bool in_tube(SpectralParam lambda, const TubeDomain& d);

/// Spherical transform of a bi-invariant profile:
///   int_0^inf f(t) phi_{-lambda}(a_t) sinh(2t) dt.
/// The radial truncation is the smaller of t_max and the profile's own
/// cutoff for this |Im lambda|; panel width tracks the oscillation.
Complex hc_transform(const RadialProfile& f, SpectralParam lambda, const QuadratureSpec& q,
                     Warnings* w = nullptr);

/// Rectangular grid of transform samples (or of any sampled map on the
/// spectral plane). Values are stored row-major: index = i_im * n_re + i_re.
struct SpectralSamples {
  std::vector<double> re_nodes;
  std::vector<double> im_nodes;
  std::vector<Complex> values;
  std::string source;  // provenance label, e.g. the profile description

  std::size_t index(std::size_t i_re, std::size_t i_im) const {
    return i_im * re_nodes.size() + i_re;
  }
  Complex at(std::size_t i_re, std::size_t i_im) const { return values[index(i_re, i_im)]; }
  void validate() const;

  void write_csv(const std::string& path) const;
  static SpectralSamples read_csv(const std::string& path);
};

/// Transform sampled over re_nodes x im_nodes (parallel over grid points).
SpectralSamples transform_grid(const RadialProfile& f, std::vector<double> re_nodes,
                               std::vector<double> im_nodes, const QuadratureSpec& q,
                               Warnings* w = nullptr);

/// Sup over interior nodes of the discrete Cauchy-Riemann defect. Uses
/// fourth-order central differences when the grid allows, second-order
/// otherwise; requires at least 3 nodes per axis and uniform spacing.
double holomorphy_residual(const SpectralSamples& s);

/// Estimate of sup over the grid of |lambda^m d^n Phi|, derivatives taken
/// along the real axis (n <= 4).
double z_seminorm(const SpectralSamples& s, int poly_degree, int deriv_order);

}  // namespace sphconv

#endif
