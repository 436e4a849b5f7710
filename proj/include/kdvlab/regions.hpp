#pragma once

// Frozen-coefficient IMEX stability: du/dt = (a_im + a_ex) u with a_im treated
// implicitly and a_ex explicitly, z = a dt.

#include <optional>
#include <vector>

#include "kdvlab/schemes.hpp"

namespace kdvlab::regions {

using schemes::Complex;

struct ImexTestPoint {
  Complex z_im;
  Complex z_ex;
};

/// Roots of sum_i (a_i - z_ex beta_i) sigma^i - z_im sigma^s (beta_s = 0).
std::vector<Complex> sbdf_roots(const schemes::SbdfScheme& scheme, const ImexTestPoint& pt);
double sbdf_amplification(const schemes::SbdfScheme& scheme, const ImexTestPoint& pt);
double rk_amplification(const schemes::RkScheme& scheme, const ImexTestPoint& pt);
double amplification(const schemes::Scheme& scheme, const ImexTestPoint& pt);

/// KdV frozen mode k (physical wavenumber) about background u0:
/// z_im = i dt alpha k^3, z_ex = -i u0 k dt.
ImexTestPoint kdv_test_point(double k, double alpha, double u0, double dt);

struct Raster {
  std::vector<double> im_zim;  // columns
  std::vector<double> im_zex;  // rows
  std::vector<std::optional<double>> max_sigma;  // row-major, absent at degenerate points

  std::optional<double> at(size_t row, size_t col) const { return max_sigma[row * im_zim.size() + col]; }
};

/// Dense raster over purely imaginary test points.
Raster region_scan(const schemes::Scheme& scheme, const std::vector<double>& im_zim,
                   const std::vector<double>& im_zex);

std::vector<double> linspace(double lo, double hi, int count);

}  // namespace kdvlab::regions
