#include "kdvlab/vn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kdvlab/error.hpp"

namespace kdvlab::vn {

int retained_modes(const Grid& grid) { return grid.size() - 1; }

int mode_of_row(const Grid& grid, int r) { return r - (grid.size() / 2 - 1); }

std::vector<Complex> background_modes(const Grid& grid, const kdv::SolitonParams& p, double t) {
  const int n = grid.size();
  const Grid fine(grid.length(), 4 * n);
  const auto coeffs = forward_transform(kdv::soliton_field(fine, p, t));
  const int half = n / 2;
  std::vector<Complex> out(static_cast<size_t>(n - 1));
  for (int k = -half + 1; k < half; ++k) out[static_cast<size_t>(k + half - 1)] = coeffs.mode(k);
  return out;
}

Matrix BackgroundOperator::advection(const Grid& grid) const {
  Matrix k = mult_ux;
  for (int c = 0; c < k.cols(); ++c) {
    const Complex d(0.0, grid.wavenumber(mode_of_row(grid, c)));
    k.col(c) += mult_u.col(c) * d;
  }
  return k;
}

BackgroundOperator background_operator(const Grid& grid, const kdv::SolitonParams& p, double t, double cutoff) {
  require(cutoff >= 0.0, ErrorKind::InvalidArgument, "cutoff must be nonnegative");
  const int n = retained_modes(grid);
  const int half = grid.size() / 2;
  const auto u = background_modes(grid, p, t);
  BackgroundOperator op;
  op.cutoff = cutoff;
  op.mult_u = Matrix::Zero(n, n);
  op.mult_ux = Matrix::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int m = mode_of_row(grid, r) - mode_of_row(grid, c);
      // Products are dealiased, so background modes beyond the retained band never contribute.
      if (m <= -half || m >= half) continue;
      const Complex value = u[static_cast<size_t>(m + half - 1)];
      if (std::abs(value) < cutoff) continue;
      op.mult_u(r, c) = value;
      op.mult_ux(r, c) = Complex(0.0, grid.wavenumber(m)) * value;
    }
  }
  return op;
}

std::vector<Complex> ShiftOperator::apply(const std::vector<Complex>& v) const {
  require(v.size() == phases.size(), ErrorKind::GridMismatch, "shift: length mismatch");
  std::vector<Complex> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = phases[i] * v[i];
  return out;
}

ShiftOperator shift_operator(const Grid& grid, double distance) {
  ShiftOperator s;
  const int n = retained_modes(grid);
  s.phases.resize(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) s.phases[static_cast<size_t>(r)] = std::polar(1.0, -grid.wavenumber(mode_of_row(grid, r)) * distance);
  return s;
}

namespace {

Matrix advection_at(const Grid& grid, const kdv::SolitonParams& p, double t, const AssemblyOptions& opts) {
  const int n = retained_modes(grid);
  if (opts.zero_background) return Matrix::Zero(n, n);
  return background_operator(grid, p, t, opts.cutoff).advection(grid);
}

// alpha (ik)^3 per retained mode.
std::vector<Complex> dispersion(const Grid& grid, double alpha) {
  const int n = retained_modes(grid);
  std::vector<Complex> d(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) {
    const double k = grid.wavenumber(mode_of_row(grid, r));
    d[static_cast<size_t>(r)] = Complex(0.0, -alpha * k * k * k);
  }
  return d;
}

void check_inputs(double dt, const kdv::SolitonParams& p) {
  require(std::isfinite(dt) && dt > 0.0, ErrorKind::InvalidArgument, "dt must be positive");
  p.validate();
}

}  // namespace

EigenProblem assemble_sbdf_evp(const schemes::SbdfScheme& scheme, double dt, const kdv::SolitonParams& p,
                               const Grid& grid, const AssemblyOptions& opts) {
  check_inputs(dt, p);
  require(scheme.a.size() == static_cast<size_t>(scheme.steps + 1) &&
              scheme.beta.size() == static_cast<size_t>(scheme.steps),
          ErrorKind::GridMismatch, "SBDF coefficient arrays do not match the step count");
  require(scheme.gamma.back() == 1.0, ErrorKind::InvalidArgument, "SBDF eigenproblem needs gamma_s = 1");
  const int s = scheme.steps;
  const int n = retained_modes(grid);
  const auto disp = dispersion(grid, p.alpha);
  const double t0 = opts.reference_time;

  EigenProblem ep;
  ep.scheme = "sbdf" + std::to_string(s);
  ep.alpha = p.alpha;
  ep.dt = dt;
  ep.grid_size = grid.size();
  ep.block_size = s * n;
  ep.standard = Matrix::Zero(s * n, s * n);
  for (int i = 0; i + 1 < s; ++i) ep.standard.block(i * n, (i + 1) * n, n, n).setIdentity();

  // Closure row: sigma (C_s T_s) y_{s-1} = -sum_i C_i T_i y_i.
  const auto shift_s = shift_operator(grid, p.c * (t0 + s * dt));
  std::vector<Complex> left(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) {
    const size_t rr = static_cast<size_t>(r);
    left[rr] = (scheme.a[static_cast<size_t>(s)] + dt * disp[rr]) * shift_s.phases[rr];
    require(std::abs(left[rr]) > 0.0, ErrorKind::Numerical, "singular SBDF left operator");
  }
  for (int i = 0; i < s; ++i) {
    const double ti = t0 + i * dt;
    Matrix block = dt * scheme.beta[static_cast<size_t>(i)] * advection_at(grid, p, ti, opts);
    block.diagonal().array() += scheme.a[static_cast<size_t>(i)];
    const auto shift_i = shift_operator(grid, p.c * ti);
    for (int c = 0; c < n; ++c) block.col(c) *= shift_i.phases[static_cast<size_t>(c)];
    for (int r = 0; r < n; ++r) block.row(r) *= -1.0 / left[static_cast<size_t>(r)];
    ep.standard.block((s - 1) * n, i * n, n, n) = block;
  }
  return ep;
}

EigenProblem assemble_rk_evp(const schemes::RkScheme& scheme, double dt, const kdv::SolitonParams& p,
                             const Grid& grid, const AssemblyOptions& opts) {
  check_inputs(dt, p);
  const int q = scheme.stages;
  require(scheme.explicit_tab.size() == static_cast<size_t>(q + 1) &&
              scheme.implicit_tab.size() == static_cast<size_t>(q + 1),
          ErrorKind::GridMismatch, "RK tableau size does not match the stage count");
  const int n = retained_modes(grid);
  const auto disp = dispersion(grid, p.alpha);
  const double t0 = opts.reference_time;

  // The stage-coupled left operator has a zero block in the sigma-free stage rows,
  // so the stages are eliminated recursively into the one-step map R.
  std::vector<Matrix> stage(static_cast<size_t>(q + 1));
  std::vector<Matrix> advection(static_cast<size_t>(q));
  stage[0] = Matrix::Identity(n, n);
  for (int i = 1; i <= q; ++i) {
    const size_t im1 = static_cast<size_t>(i - 1);
    advection[im1] = advection_at(grid, p, t0 + scheme.abscissae[im1] * dt, opts);
    Matrix rhs = Matrix::Identity(n, n);
    for (int j = 0; j < i; ++j) {
      const double ae = scheme.explicit_tab[i][j];
      const double ai = scheme.implicit_tab[i][j];
      const auto& rj = stage[static_cast<size_t>(j)];
      if (ae != 0.0) rhs -= (dt * ae) * (advection[static_cast<size_t>(j)] * rj);
      if (ai != 0.0) {
        for (int r = 0; r < n; ++r) rhs.row(r) -= (dt * ai * disp[static_cast<size_t>(r)]) * rj.row(r);
      }
    }
    for (int r = 0; r < n; ++r) {
      const Complex diag = 1.0 + dt * scheme.implicit_tab[i][i] * disp[static_cast<size_t>(r)];
      require(std::abs(diag) > 0.0, ErrorKind::Numerical, "singular implicit stage factor");
      rhs.row(r) /= diag;
    }
    stage[static_cast<size_t>(i)] = std::move(rhs);
  }

  EigenProblem ep;
  std::string name = scheme.name;
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::tolower(ch); });
  ep.scheme = name;
  ep.alpha = p.alpha;
  ep.dt = dt;
  ep.grid_size = grid.size();
  ep.block_size = q * n;
  ep.standard = std::move(stage[static_cast<size_t>(q)]);
  const auto before = shift_operator(grid, p.c * t0);
  const auto after = shift_operator(grid, p.c * (t0 + dt));
  for (int c = 0; c < n; ++c) ep.standard.col(c) *= before.phases[static_cast<size_t>(c)];
  for (int r = 0; r < n; ++r) ep.standard.row(r) /= after.phases[static_cast<size_t>(r)];
  return ep;
}

EigenProblem assemble_evp(const schemes::Scheme& scheme, double dt, const kdv::SolitonParams& p, const Grid& grid,
                          const AssemblyOptions& opts) {
  if (const auto* s = std::get_if<schemes::SbdfScheme>(&scheme)) return assemble_sbdf_evp(*s, dt, p, grid, opts);
  return assemble_rk_evp(std::get<schemes::RkScheme>(scheme), dt, p, grid, opts);
}

std::pair<Complex, Complex> EigenReport::fastest() const {
  require(!sigmas.empty(), ErrorKind::InvalidArgument, "empty spectrum");
  size_t best = sigmas.size();
  for (size_t i = 0; i < sigmas.size(); ++i) {
    if (!resolved.empty() && !resolved[i]) continue;
    if (best == sigmas.size() || lambdas[i].real() > lambdas[best].real()) best = i;
  }
  require(best < sigmas.size(), ErrorKind::Numerical, "no resolved modes");
  return {sigmas[best], lambdas[best]};
}

EigenReport solve_spectrum(EigenProblem problem) {
  EigenReport rep;
  rep.scheme = problem.scheme;
  rep.alpha = problem.alpha;
  rep.dt = problem.dt;
  rep.grid_size = problem.grid_size;
  rep.block_size = problem.block_size;
  try {
    rep.sigmas = linalg::eigenvalues(std::move(problem.standard));
  } catch (const Error& e) {
    throw Error(ErrorKind::Numerical, std::string(e.what()) + " (scheme " + rep.scheme + ", alpha " +
                                          std::to_string(rep.alpha) + ", dt " + std::to_string(rep.dt) + ", N " +
                                          std::to_string(rep.grid_size) + ")");
  }
  std::stable_sort(rep.sigmas.begin(), rep.sigmas.end(),
                   [](const Complex& a, const Complex& b) { return std::abs(a) > std::abs(b); });
  rep.lambdas.reserve(rep.sigmas.size());
  for (const auto& s : rep.sigmas) rep.lambdas.push_back(std::log(s) / rep.dt);
  rep.resolved.assign(rep.sigmas.size(), true);
  return rep;
}

void drift_filter(EigenReport& coarse, const EigenReport& fine, DriftRule rule, double threshold) {
  const auto& a = coarse.sigmas;
  const auto& b = fine.sigmas;
  coarse.drift_ratios.assign(a.size(), std::numeric_limits<double>::infinity());
  coarse.resolved.assign(a.size(), false);
  for (size_t i = 0; i < a.size(); ++i) {
    double num = std::numeric_limits<double>::infinity();
    for (const auto& s : b) num = std::min(num, std::abs(a[i] - s));
    double sep = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < a.size(); ++j) {
      if (j != i) sep = std::min(sep, std::abs(a[i] - a[j]));
    }
    const double delta = sep > 0.0 ? num / sep : std::numeric_limits<double>::infinity();
    coarse.drift_ratios[i] = delta;
    coarse.resolved[i] = rule == DriftRule::KeepAbove ? delta > threshold : delta < 1.0 / threshold;
  }
}

double rejection_fraction(const EigenReport& report) {
  if (report.resolved.empty()) return 0.0;
  const auto kept = std::count(report.resolved.begin(), report.resolved.end(), true);
  return 1.0 - static_cast<double>(kept) / static_cast<double>(report.resolved.size());
}

std::vector<CutoffPoint> cutoff_study(const schemes::Scheme& scheme, double dt, const kdv::SolitonParams& p,
                                      const Grid& grid, const std::vector<double>& cutoffs) {
  require(std::is_sorted(cutoffs.rbegin(), cutoffs.rend()), ErrorKind::InvalidArgument,
          "cutoffs must be given in descending order");
  auto leading = [&](double cutoff) {
    AssemblyOptions opts;
    opts.cutoff = cutoff;
    return solve_spectrum(assemble_evp(scheme, dt, p, grid, opts)).fastest().second;
  };
  const Complex reference = leading(1e-16);
  std::vector<CutoffPoint> out;
  for (double c : cutoffs) {
    const Complex lam = c == 1e-16 ? reference : leading(c);
    // the leading mode comes in a conjugate pair; either member may be reported
    out.push_back({c, lam, std::min(std::abs(lam - reference), std::abs(lam - std::conj(reference)))});
  }
  return out;
}

}  // namespace kdvlab::vn
