#pragma once

// Reference spectra and the exact truncated convolution for small grids.

#include <random>

#include "kdvlab/spectral.hpp"

namespace kdvlab::spectral_oracle {

using spectral::Complex;
using spectral::Grid;
using spectral::SpectralField;

inline SpectralField random_spectrum(const Grid& g, std::mt19937_64& rng, bool zero_nyquist = true) {
  std::normal_distribution<double> d;
  SpectralField f(g);
  for (auto& c : f.coeffs) c = {d(rng), d(rng)};
  f.coeffs[0] = {f.coeffs[0].real(), 0.0};
  f.coeffs.back() = zero_nyquist ? Complex{} : Complex{f.coeffs.back().real(), 0.0};
  return f;
}

// Full convolution over |k| < N/2 followed by truncation to |k| < N/2.
inline SpectralField brute_force_product(const SpectralField& a, const SpectralField& b) {
  const Grid& g = a.grid;
  const int half = g.size() / 2;
  SpectralField out(g);
  for (int k = 0; k < half; ++k) {
    Complex sum{};
    for (int p = -half + 1; p < half; ++p) {
      const int q = k - p;
      if (q <= -half || q >= half) continue;
      sum += a.mode(p) * b.mode(q);
    }
    out.coeffs[static_cast<size_t>(k)] = sum;
  }
  return out;
}

}  // namespace kdvlab::spectral_oracle
