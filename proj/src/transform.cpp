#include "sphconv/transform.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sphconv/csv.hpp"

namespace sphconv {

TubeDomain tube_for_p(double p) {
  if (!(p > 0.0) || p > 2.0) throw DomainError("tube_for_p: p must lie in (0, 2]");
  return TubeDomain{2.0 / p - 1.0};
}

bool in_tube(SpectralParam lambda, const TubeDomain& d) {
  return std::abs(lambda.imag()) <= d.epsilon;
}

Complex hc_transform(const RadialProfile& f, SpectralParam lambda, const QuadratureSpec& q,
                     Warnings* w) {
  const double im = std::abs(lambda.imag());
  if (im > f.decay_margin() + 1e-12)
    throw DomainError("hc_transform: |Im lambda| outside the profile's decay margin");
  const double cutoff = std::min(q.t_max, f.transform_cutoff(im));
  const double width =
      std::min(q.t_max / q.t_panels, 12.0 / std::max(1.0, std::abs(lambda.real())));
  const int panels = std::max(4, static_cast<int>(std::ceil(cutoff / width)));
  const SpectralParam mlam = -lambda;
  return radial_integrate(
      [&](double t) { return f(t) * phi_radial(mlam, t, q) * std::sinh(2.0 * t); }, cutoff,
      panels, 12, w);
}

void SpectralSamples::validate() const {
  if (re_nodes.empty() || im_nodes.empty())
    throw GridError("SpectralSamples: empty grid");
  if (values.size() != re_nodes.size() * im_nodes.size())
    throw GridError("SpectralSamples: value count does not match the grid");
  for (std::size_t i = 1; i < re_nodes.size(); ++i)
    if (!(re_nodes[i] > re_nodes[i - 1])) throw GridError("SpectralSamples: re grid not sorted");
  for (std::size_t i = 1; i < im_nodes.size(); ++i)
    if (!(im_nodes[i] > im_nodes[i - 1])) throw GridError("SpectralSamples: im grid not sorted");
  for (const Complex& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw GridError("SpectralSamples: non-finite value");
}

void SpectralSamples::write_csv(const std::string& path) const {
  CsvWriter csv(path, {"re_lambda", "im_lambda", "re_value", "im_value"});
  for (std::size_t j = 0; j < im_nodes.size(); ++j)
    for (std::size_t i = 0; i < re_nodes.size(); ++i) {
      const Complex v = at(i, j);
      csv.row({format_double(re_nodes[i]), format_double(im_nodes[j]),
               format_double(v.real()), format_double(v.imag())});
    }
}

SpectralSamples read_csv_impl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty csv: " + path);
  SpectralSamples s;
  std::vector<double> res, ims;
  std::vector<Complex> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    double re, im, vr, vi;
    char comma;
    ls >> re >> comma >> im >> comma >> vr >> comma >> vi;
    if (!ls) throw IoError("malformed csv row in " + path);
    res.push_back(re);
    ims.push_back(im);
    vals.push_back(Complex(vr, vi));
  }
  // reconstruct the rectangular grid (rows were written im-major)
  for (double r : res)
    if (s.re_nodes.empty() || r > s.re_nodes.back())
      s.re_nodes.push_back(r);
    else
      break;
  const std::size_t nre = s.re_nodes.size();
  if (nre == 0 || vals.size() % nre != 0) throw IoError("csv grid not rectangular: " + path);
  for (std::size_t j = 0; j < vals.size() / nre; ++j) s.im_nodes.push_back(ims[j * nre]);
  s.values = std::move(vals);
  s.validate();
  return s;
}

SpectralSamples SpectralSamples::read_csv(const std::string& path) {
  return read_csv_impl(path);
}

SpectralSamples transform_grid(const RadialProfile& f, std::vector<double> re_nodes,
                               std::vector<double> im_nodes, const QuadratureSpec& q,
                               Warnings* w) {
  SpectralSamples s;
  s.re_nodes = std::move(re_nodes);
  s.im_nodes = std::move(im_nodes);
  s.source = f.describe();
  s.values.assign(s.re_nodes.size() * s.im_nodes.size(), Complex{});
  parallel_for(s.values.size(), [&](std::size_t idx) {
    const std::size_t i = idx % s.re_nodes.size();
    const std::size_t j = idx / s.re_nodes.size();
    s.values[idx] = hc_transform(f, SpectralParam(s.re_nodes[i], s.im_nodes[j]), q, nullptr);
  });
  s.validate();
  if (w) {
    Warnings probe;
    hc_transform(f, SpectralParam(s.re_nodes.back(), s.im_nodes.back()), q, &probe);
    for (const auto& item : probe.items()) w->add(item.kind, item.message);
  }
  return s;
}

namespace {

double grid_spacing(const std::vector<double>& nodes, const char* axis) {
  if (nodes.size() < 2) return 0.0;
  const double h = nodes[1] - nodes[0];
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i)
    if (std::abs(nodes[i + 1] - nodes[i] - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw GridError(std::string("derivatives need a uniform ") + axis + " grid");
  return h;
}

}  // namespace

double holomorphy_residual(const SpectralSamples& s) {
  s.validate();
  const std::size_t nre = s.re_nodes.size(), nim = s.im_nodes.size();
  if (nre < 3 || nim < 3) throw GridError("holomorphy_residual: need >= 3 nodes per axis");
  const double hx = grid_spacing(s.re_nodes, "re");
  const double hy = grid_spacing(s.im_nodes, "im");
  const bool high_order = nre >= 5 && nim >= 5;
  const std::size_t margin = high_order ? 2 : 1;

  double worst = 0.0;
  for (std::size_t j = margin; j + margin < nim; ++j)
    for (std::size_t i = margin; i + margin < nre; ++i) {
      Complex dx, dy;
      if (high_order) {
        dx = (-s.at(i + 2, j) + 8.0 * s.at(i + 1, j) - 8.0 * s.at(i - 1, j) + s.at(i - 2, j)) /
             (12.0 * hx);
        dy = (-s.at(i, j + 2) + 8.0 * s.at(i, j + 1) - 8.0 * s.at(i, j - 1) + s.at(i, j - 2)) /
             (12.0 * hy);
      } else {
        dx = (s.at(i + 1, j) - s.at(i - 1, j)) / (2.0 * hx);
        dy = (s.at(i, j + 1) - s.at(i, j - 1)) / (2.0 * hy);
      }
      const double cr1 = std::abs(dx.real() - dy.imag());
      const double cr2 = std::abs(dx.imag() + dy.real());
      worst = std::max({worst, cr1, cr2});
    }
  return worst;
}

double z_seminorm(const SpectralSamples& s, int poly_degree, int deriv_order) {
  s.validate();
  if (deriv_order < 0 || deriv_order > 4)
    throw DomainError("z_seminorm: derivative order must lie in [0, 4]");
  if (poly_degree < 0) throw DomainError("z_seminorm: polynomial degree must be >= 0");
  const std::size_t nre = s.re_nodes.size();
  const std::size_t need = deriv_order <= 2 ? 3 : 5;
  if (deriv_order > 0 && nre < need)
    throw GridError("z_seminorm: re grid too small for this derivative order");
  const double h = deriv_order > 0 ? grid_spacing(s.re_nodes, "re") : 1.0;
  const std::size_t margin = deriv_order == 0 ? 0 : (deriv_order <= 2 ? 1 : 2);

  double worst = 0.0;
  for (std::size_t j = 0; j < s.im_nodes.size(); ++j)
    for (std::size_t i = margin; i + margin < nre; ++i) {
      Complex d;
      switch (deriv_order) {
        case 0: d = s.at(i, j); break;
        case 1: d = (s.at(i + 1, j) - s.at(i - 1, j)) / (2.0 * h); break;
        case 2:
          d = (s.at(i + 1, j) - 2.0 * s.at(i, j) + s.at(i - 1, j)) / (h * h);
          break;
        case 3:
          d = (s.at(i + 2, j) - 2.0 * s.at(i + 1, j) + 2.0 * s.at(i - 1, j) - s.at(i - 2, j)) /
              (2.0 * h * h * h);
          break;
        default:
          d = (s.at(i + 2, j) - 4.0 * s.at(i + 1, j) + 6.0 * s.at(i, j) - 4.0 * s.at(i - 1, j) +
               s.at(i - 2, j)) /
              (h * h * h * h);
      }
      const Complex lam(s.re_nodes[i], s.im_nodes[j]);
      worst = std::max(worst, std::pow(std::abs(lam), poly_degree) * std::abs(d));
    }
  return worst;
}

}  // namespace sphconv
