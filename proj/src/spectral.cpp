#include "kdvlab/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <numbers>

#include "kdvlab/error.hpp"

namespace kdvlab::spectral {

namespace {

// The FFTW planner is not thread safe; plan execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwDeleter {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwDeleter>;

template <class T>
FftwBuffer<T> fftw_buffer(int n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * static_cast<size_t>(n)));
  if (p == nullptr) throw std::bad_alloc();
  std::memset(static_cast<void*>(p), 0, sizeof(T) * static_cast<size_t>(n));
  return FftwBuffer<T>(p);
}

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  FftwBuffer<double> real;
  FftwBuffer<fftw_complex> spec;

  explicit PlanPair(int n) : real(fftw_buffer<double>(n)), spec(fftw_buffer<fftw_complex>(n / 2 + 1)) {
    std::lock_guard lock(planner_mutex());
    r2c = fftw_plan_dft_r2c_1d(n, real.get(), spec.get(), FFTW_ESTIMATE);
    c2r = fftw_plan_dft_c2r_1d(n, spec.get(), real.get(), FFTW_ESTIMATE);
    if (r2c == nullptr || c2r == nullptr) throw Error(ErrorKind::Numerical, "FFTW planning failed");
  }
  ~PlanPair() {
    std::lock_guard lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
  PlanPair(const PlanPair&) = delete;
  PlanPair& operator=(const PlanPair&) = delete;

  Complex* spec_ptr() noexcept { return reinterpret_cast<Complex*>(spec.get()); }
};

double sign_of_mode(int k) noexcept { return (k % 2 == 0) ? 1.0 : -1.0; }

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

Grid::Grid(double length, int n) : length_(length), n_(n) {
  require(std::isfinite(length) && length > 0.0, ErrorKind::InvalidArgument, "grid length must be positive");
  require(n >= 8 && n % 2 == 0, ErrorKind::InvalidArgument, "grid size must be even and at least 8");
}

double Grid::wavenumber(int k) const noexcept { return 2.0 * std::numbers::pi * k / length_; }

RealField::RealField(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
  require(static_cast<int>(values.size()) == grid.size(), ErrorKind::GridMismatch,
          "field length does not match grid size");
}

SpectralField::SpectralField(Grid g, std::vector<Complex> c) : grid(g), coeffs(std::move(c)) {
  require(static_cast<int>(coeffs.size()) == grid.modes(), ErrorKind::GridMismatch,
          "coefficient count does not match grid");
}

Complex SpectralField::mode(int k) const {
  const int half = grid.size() / 2;
  require(k > -half && k <= half, ErrorKind::InvalidArgument, "wavenumber outside retained range");
  return k >= 0 ? coeffs[static_cast<size_t>(k)] : std::conj(coeffs[static_cast<size_t>(-k)]);
}

// ---------------------------------------------------------------------------

struct Transformer::Impl {
  Grid grid;
  PlanPair plans;
  explicit Impl(const Grid& g) : grid(g), plans(g.size()) {}
};

Transformer::Transformer(const Grid& grid) : impl_(std::make_unique<Impl>(grid)) {}
Transformer::~Transformer() = default;
Transformer::Transformer(Transformer&&) noexcept = default;
Transformer& Transformer::operator=(Transformer&&) noexcept = default;

const Grid& Transformer::grid() const noexcept { return impl_->grid; }

void Transformer::forward(std::span<const double> values, std::span<Complex> coeffs) {
  const int n = impl_->grid.size();
  auto& p = impl_->plans;
  std::copy(values.begin(), values.end(), p.real.get());
  fftw_execute(p.r2c);
  const Complex* s = p.spec_ptr();
  const double inv_n = 1.0 / n;
  for (int k = 0; k <= n / 2; ++k) coeffs[static_cast<size_t>(k)] = sign_of_mode(k) * inv_n * s[k];
}

void Transformer::inverse(std::span<const Complex> coeffs, std::span<double> values) {
  const int n = impl_->grid.size();
  auto& p = impl_->plans;
  Complex* s = p.spec_ptr();
  for (int k = 0; k <= n / 2; ++k) s[k] = sign_of_mode(k) * coeffs[static_cast<size_t>(k)];
  fftw_execute(p.c2r);
  std::copy(p.real.get(), p.real.get() + n, values.begin());
}

// ---------------------------------------------------------------------------

struct Dealiaser::Impl {
  Grid grid;
  int fine;
  PlanPair a_plans;
  FftwBuffer<double> a_values;
  double max_abs_a = 0.0;

  explicit Impl(const Grid& g)
      : grid(g), fine(3 * g.size() / 2), a_plans(3 * g.size() / 2), a_values(fftw_buffer<double>(fine)) {}
};

Dealiaser::Dealiaser(const Grid& grid) : impl_(std::make_unique<Impl>(grid)) {}
Dealiaser::~Dealiaser() = default;
Dealiaser::Dealiaser(Dealiaser&&) noexcept = default;
Dealiaser& Dealiaser::operator=(Dealiaser&&) noexcept = default;

const Grid& Dealiaser::grid() const noexcept { return impl_->grid; }
int Dealiaser::fine_size() const noexcept { return impl_->fine; }
double Dealiaser::fine_max_abs_first() const noexcept { return impl_->max_abs_a; }

void Dealiaser::product(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out) {
  auto& d = *impl_;
  const int half = d.grid.size() / 2;
  const int fine_modes = d.fine / 2 + 1;
  auto& p = d.a_plans;
  Complex* s = p.spec_ptr();

  auto load = [&](std::span<const Complex> c) {
    for (int k = 0; k < half; ++k) s[k] = sign_of_mode(k) * c[static_cast<size_t>(k)];
    for (int k = half; k < fine_modes; ++k) s[k] = 0.0;
    fftw_execute(p.c2r);
  };

  load(a);
  double* av = d.a_values.get();
  std::copy(p.real.get(), p.real.get() + d.fine, av);
  double max_abs = 0.0;
  for (int j = 0; j < d.fine; ++j) max_abs = std::max(max_abs, std::abs(av[j]));
  d.max_abs_a = max_abs;

  load(b);
  double* bv = p.real.get();
  for (int j = 0; j < d.fine; ++j) bv[j] *= av[j];
  fftw_execute(p.r2c);

  const double inv = 1.0 / d.fine;
  for (int k = 0; k < half; ++k) out[static_cast<size_t>(k)] = sign_of_mode(k) * inv * s[k];
  out[static_cast<size_t>(half)] = 0.0;
}

// ---------------------------------------------------------------------------

void apply_derivative(const Grid& grid, int order, std::span<Complex> coeffs) {
  const int half = grid.size() / 2;
  const Complex i_unit(0.0, 1.0);
  for (int k = 0; k <= half; ++k) {
    const Complex symbol = std::pow(i_unit * grid.wavenumber(k), order);
    coeffs[static_cast<size_t>(k)] *= symbol;
  }
  if (order % 2 == 1) coeffs[static_cast<size_t>(half)] = 0.0;
}

namespace {

Transformer& cached_transformer(const Grid& grid) {
  thread_local std::map<std::pair<double, int>, Transformer> cache;
  auto key = std::make_pair(grid.length(), grid.size());
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, Transformer(grid)).first;
  return it->second;
}

Dealiaser& cached_dealiaser(const Grid& grid) {
  thread_local std::map<std::pair<double, int>, Dealiaser> cache;
  auto key = std::make_pair(grid.length(), grid.size());
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, Dealiaser(grid)).first;
  return it->second;
}

}  // namespace

SpectralField forward_transform(const RealField& f) {
  require(all_finite(f.values), ErrorKind::NonFiniteData, "forward_transform: non-finite input data");
  SpectralField out(f.grid);
  cached_transformer(f.grid).forward(f.values, out.coeffs);
  return out;
}

RealField inverse_transform(const SpectralField& f) {
  RealField out(f.grid);
  cached_transformer(f.grid).inverse(f.coeffs, out.values);
  return out;
}

SpectralField differentiate(const SpectralField& f, int order) {
  require(order >= 1 && order <= 3, ErrorKind::InvalidArgument, "derivative order must be 1, 2 or 3");
  SpectralField out = f;
  apply_derivative(out.grid, order, out.coeffs);
  return out;
}

SpectralField dealias_product(const SpectralField& a, const SpectralField& b) {
  require(a.grid == b.grid, ErrorKind::GridMismatch, "dealias_product: operands live on different grids");
  SpectralField out(a.grid);
  cached_dealiaser(a.grid).product(a.coeffs, b.coeffs, out.coeffs);
  return out;
}

double l2_norm(const RealField& f) {
  double sum = 0.0;
  for (double v : f.values) sum += v * v;
  return std::sqrt(sum * f.grid.spacing());
}

double l2_norm(const SpectralField& f) {
  const int half = f.grid.size() / 2;
  double sum = std::norm(f.coeffs[0]) + std::norm(f.coeffs[static_cast<size_t>(half)]);
  for (int k = 1; k < half; ++k) sum += 2.0 * std::norm(f.coeffs[static_cast<size_t>(k)]);
  return std::sqrt(sum * f.grid.length());
}

}  // namespace kdvlab::spectral
