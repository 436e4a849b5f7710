#include "kdvlab/regions.hpp"

#include <algorithm>
#include <cmath>

#include "kdvlab/error.hpp"
#include "kdvlab/linalg.hpp"

namespace kdvlab::regions {

std::vector<Complex> sbdf_roots(const schemes::SbdfScheme& scheme, const ImexTestPoint& pt) {
  const int s = scheme.steps;
  std::vector<Complex> coef(static_cast<size_t>(s + 1));
  for (int i = 0; i < s; ++i) {
    coef[static_cast<size_t>(i)] = scheme.a[static_cast<size_t>(i)] - pt.z_ex * scheme.beta[static_cast<size_t>(i)];
  }
  coef[static_cast<size_t>(s)] = scheme.a[static_cast<size_t>(s)] - pt.z_im;
  const double scale = std::abs(coef[static_cast<size_t>(s)]);
  double size = 0.0;
  for (const auto& c : coef) size = std::max(size, std::abs(c));
  require(scale > 1e-14 * std::max(size, 1.0), ErrorKind::Numerical,
          "degenerate test point: leading coefficient a_s - z_im vanishes");

  linalg::Matrix companion = linalg::Matrix::Zero(s, s);
  for (int i = 0; i + 1 < s; ++i) companion(i + 1, i) = 1.0;
  for (int i = 0; i < s; ++i) companion(i, s - 1) = -coef[static_cast<size_t>(i)] / coef[static_cast<size_t>(s)];
  return linalg::eigenvalues(std::move(companion));
}

double sbdf_amplification(const schemes::SbdfScheme& scheme, const ImexTestPoint& pt) {
  double best = 0.0;
  for (const auto& r : sbdf_roots(scheme, pt)) best = std::max(best, std::abs(r));
  return best;
}

double rk_amplification(const schemes::RkScheme& scheme, const ImexTestPoint& pt) {
  return std::abs(schemes::rk_update_factor(scheme, pt.z_im, pt.z_ex));
}

double amplification(const schemes::Scheme& scheme, const ImexTestPoint& pt) {
  if (const auto* s = std::get_if<schemes::SbdfScheme>(&scheme)) return sbdf_amplification(*s, pt);
  return rk_amplification(std::get<schemes::RkScheme>(scheme), pt);
}

ImexTestPoint kdv_test_point(double k, double alpha, double u0, double dt) {
  return {Complex(0.0, dt * alpha * k * k * k), Complex(0.0, -u0 * k * dt)};
}

Raster region_scan(const schemes::Scheme& scheme, const std::vector<double>& im_zim,
                   const std::vector<double>& im_zex) {
  Raster r;
  r.im_zim = im_zim;
  r.im_zex = im_zex;
  r.max_sigma.reserve(im_zim.size() * im_zex.size());
  for (double ex : im_zex) {
    for (double im : im_zim) {
      try {
        r.max_sigma.emplace_back(amplification(scheme, {Complex(0.0, im), Complex(0.0, ex)}));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Numerical) throw;
        r.max_sigma.emplace_back(std::nullopt);
      }
    }
  }
  return r;
}

std::vector<double> linspace(double lo, double hi, int count) {
  require(count >= 1, ErrorKind::InvalidArgument, "linspace: count must be positive");
  std::vector<double> v(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) v[static_cast<size_t>(i)] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  return v;
}

}  // namespace kdvlab::regions
