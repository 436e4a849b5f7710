#pragma once

// Real periodic fields on a uniform grid and their Fourier representation.
//
// Coefficient convention: a real field f on x_j = -L/2 + j L/N is written as
//
//   f(x) = sum_{k=-N/2+1}^{N/2} c_k exp(i 2 pi k x / L),
//
// so a unit-amplitude cosine has c_{+1} = c_{-1} = 1/2 and a constant has only
// c_0. Real fields store the half spectrum k = 0..N/2; the negative modes follow
// from c_{-k} = conj(c_k).

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace kdvlab::spectral {

using Complex = std::complex<double>;

class Grid {
 public:
  Grid(double length, int n);

  double length() const noexcept { return length_; }
  int size() const noexcept { return n_; }
  /// Number of stored half-spectrum modes, N/2 + 1.
  int modes() const noexcept { return n_ / 2 + 1; }
  double spacing() const noexcept { return length_ / n_; }
  double point(int j) const noexcept { return -0.5 * length_ + j * spacing(); }
  /// Physical wavenumber 2 pi k / L.
  double wavenumber(int k) const noexcept;

  bool operator==(const Grid&) const = default;

 private:
  double length_;
  int n_;
};

struct RealField {
  Grid grid;
  std::vector<double> values;

  RealField(Grid g, std::vector<double> v);
  explicit RealField(Grid g) : grid(g), values(static_cast<size_t>(g.size()), 0.0) {}

  template <class F>
  static RealField sample(const Grid& g, F&& f) {
    RealField out(g);
    for (int j = 0; j < g.size(); ++j) out.values[static_cast<size_t>(j)] = f(g.point(j));
    return out;
  }
};

struct SpectralField {
  Grid grid;
  std::vector<Complex> coeffs;  // k = 0..N/2

  explicit SpectralField(Grid g) : grid(g), coeffs(static_cast<size_t>(g.modes())) {}
  SpectralField(Grid g, std::vector<Complex> c);

  Complex mode(int k) const;  // any k in -N/2+1..N/2
};

/// Reusable forward/inverse real transforms for one grid size.
/// Not safe for concurrent use; give each thread its own instance.
class Transformer {
 public:
  explicit Transformer(const Grid& grid);
  ~Transformer();
  Transformer(Transformer&&) noexcept;
  Transformer& operator=(Transformer&&) noexcept;

  const Grid& grid() const noexcept;
  void forward(std::span<const double> values, std::span<Complex> coeffs);
  void inverse(std::span<const Complex> coeffs, std::span<double> values);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// 3/2-rule product of two half spectra. Inputs are zero padded to 3N/2 points,
/// multiplied on the fine grid and truncated back to |k| < N/2. The Nyquist
/// coefficient of the result is zero.
class Dealiaser {
 public:
  explicit Dealiaser(const Grid& grid);
  ~Dealiaser();
  Dealiaser(Dealiaser&&) noexcept;
  Dealiaser& operator=(Dealiaser&&) noexcept;

  const Grid& grid() const noexcept;
  int fine_size() const noexcept;
  void product(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out);
  /// max |a| over the fine grid from the most recent product() call.
  double fine_max_abs_first() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// In-place multiplication of half-spectrum coefficients by (i k)^order.
/// The Nyquist mode is zeroed for odd orders.
void apply_derivative(const Grid& grid, int order, std::span<Complex> coeffs);

SpectralField forward_transform(const RealField& f);
RealField inverse_transform(const SpectralField& f);
SpectralField differentiate(const SpectralField& f, int order);
SpectralField dealias_product(const SpectralField& a, const SpectralField& b);

double l2_norm(const RealField& f);
double l2_norm(const SpectralField& f);

}  // namespace kdvlab::spectral
