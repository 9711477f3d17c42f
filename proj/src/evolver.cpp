#include "wigsim/evolver.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <thread>
#include <vector>

#include "wigsim/errors.hpp"

namespace wigsim {

namespace {

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[192];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

/// Spectral coordinate for index l of an n-point DFT with spacing d, in the
/// fftfreq convention: 2*pi*l/(n*d) for l < n/2, negative branch after.
double spectral_coord(std::size_t l, std::size_t n, double d) {
  const double two_pi = 2.0 * M_PI;
  const auto ln = static_cast<long>(l);
  const auto nn = static_cast<long>(n);
  const long k = (ln < nn / 2) ? ln : ln - nn;
  return two_pi * static_cast<double>(k) / (static_cast<double>(n) * d);
}

/// Runs fn(row) for row in [0, rows), split into contiguous chunks across
/// n_threads. Rows are independent, so results do not depend on the split.
template <typename Fn>
void parallel_rows(std::size_t rows, int n_threads, Fn&& fn) {
  if (n_threads <= 1) {
    for (std::size_t r = 0; r < rows; ++r) fn(r);
    return;
  }
  const std::size_t nt = static_cast<std::size_t>(n_threads);
  std::vector<std::thread> workers;
  workers.reserve(nt);
  for (std::size_t w = 0; w < nt; ++w) {
    const std::size_t lo = rows * w / nt;
    const std::size_t hi = rows * (w + 1) / nt;
    workers.emplace_back([lo, hi, &fn] {
      for (std::size_t r = lo; r < hi; ++r) fn(r);
    });
  }
  for (auto& t : workers) t.join();
}

}  // namespace

std::complex<double> quantum_kernel(double x, double lambda_var, double t_mid,
                                    const SystemParams& params) {
  // (i/hbar)[V(x + hbar*lambda/2) - V(x - hbar*lambda/2)] for the quartic V,
  // expanded exactly: the odd difference truncates after the cubic term.
  const double force_part = lambda_var * force_gradient(x, t_mid, params);
  const double moyal_part =
      params.hbar * params.hbar * params.B * x * lambda_var * lambda_var * lambda_var;
  return {0.0, force_part + moyal_part};
}

std::complex<double> classical_kernel(double x, double lambda_var, double t_mid,
                                      const SystemParams& params) {
  return {0.0, lambda_var * force_gradient(x, t_mid, params)};
}

struct Evolver::Impl {
  PhaseSpaceGrid grid;
  EvolverConfig config;
  double diffusion_d = 0.0;
  int n_threads = 1;

  // bufA is x-slow ([i*np + j]); bufB is p-slow ([j*nx + i]). All transforms
  // run on contiguous rows of the respective buffer.
  fftw_complex* bufA = nullptr;
  fftw_complex* bufB = nullptr;
  fftw_plan plan_x_f = nullptr, plan_x_b = nullptr;  // length nx rows of bufB
  fftw_plan plan_p_f = nullptr, plan_p_b = nullptr;  // length np rows of bufA

  // Multiplier tables with the inverse-transform 1/n normalization folded in
  // (exact: n is a power of two). shear is p-slow, kick_static is x-slow.
  std::vector<std::complex<double>> shear;
  std::vector<std::complex<double>> kick_static;
  std::vector<double> lam;        // spectral coordinate conjugate to p
  std::vector<std::complex<double>> drive;  // per-step phases, length np

  ~Impl() {
    if (plan_x_f) fftw_destroy_plan(plan_x_f);
    if (plan_x_b) fftw_destroy_plan(plan_x_b);
    if (plan_p_f) fftw_destroy_plan(plan_p_f);
    if (plan_p_b) fftw_destroy_plan(plan_p_b);
    if (bufA) fftw_free(bufA);
    if (bufB) fftw_free(bufB);
  }
};

Evolver::Evolver(const PhaseSpaceGrid& grid, const EvolverConfig& config, int n_threads)
    : impl_(new Impl) {
  config.params.validate();
  if (!(config.dt > 0.0) || !std::isfinite(config.dt))
    throw std::invalid_argument("EvolverConfig: dt must be positive and finite");
  if (!(config.boundary_mass_limit > 0.0))
    throw std::invalid_argument("EvolverConfig: boundary_mass_limit must be > 0");
  if ((grid.nx & (grid.nx - 1)) != 0 || (grid.np_ & (grid.np_ - 1)) != 0 || grid.nx < 8 ||
      grid.np_ < 8)
    throw std::invalid_argument("Evolver: grid sizes must be powers of two >= 8");
  if (n_threads < 1) throw std::invalid_argument("Evolver: n_threads must be >= 1");

  Impl& im = *impl_;
  im.grid = grid;
  im.config = config;
  im.diffusion_d = config.diffusion.resolve();
  im.n_threads = n_threads;

  const std::size_t nx = grid.nx, np = grid.np_;
  im.bufA = fftw_alloc_complex(nx * np);
  im.bufB = fftw_alloc_complex(nx * np);
  if (!im.bufA || !im.bufB) throw std::bad_alloc();

  // In-place 1-D plans on representative rows; executed per row with
  // fftw_execute_dft. Row strides are multiples of the allocator alignment,
  // so every row shares the plan's alignment class. FFTW_ESTIMATE keeps
  // planning deterministic (no runtime measurement).
  im.plan_x_f = fftw_plan_dft_1d(static_cast<int>(nx), im.bufB, im.bufB, FFTW_FORWARD,
                                 FFTW_ESTIMATE);
  im.plan_x_b = fftw_plan_dft_1d(static_cast<int>(nx), im.bufB, im.bufB, FFTW_BACKWARD,
                                 FFTW_ESTIMATE);
  im.plan_p_f = fftw_plan_dft_1d(static_cast<int>(np), im.bufA, im.bufA, FFTW_FORWARD,
                                 FFTW_ESTIMATE);
  im.plan_p_b = fftw_plan_dft_1d(static_cast<int>(np), im.bufA, im.bufA, FFTW_BACKWARD,
                                 FFTW_ESTIMATE);
  if (!im.plan_x_f || !im.plan_x_b || !im.plan_p_f || !im.plan_p_b)
    throw std::runtime_error("Evolver: FFT planning failed");

  const double dt = config.dt;
  const SystemParams& pr = config.params;

  // Half-step kinetic shear: exp(-i k p dt / 2m), p-slow layout.
  im.shear.resize(nx * np);
  const double inv_nx = 1.0 / static_cast<double>(nx);
  for (std::size_t j = 0; j < np; ++j) {
    const double pj = grid.p(j);
    for (std::size_t l = 0; l < nx; ++l) {
      const double k = spectral_coord(l, nx, grid.dx);
      const double phase = -k * pj * dt / (2.0 * pr.m);
      im.shear[j * nx + l] = std::polar(inv_nx, phase);
    }
  }

  // Momentum kick without the drive: exp([i lam g(x) (+ i hbar^2 B x lam^3)
  // - D lam^2] dt), x-slow layout. g(x) = 4Bx^3 - 2Ax is the static force.
  im.lam.resize(np);
  for (std::size_t l = 0; l < np; ++l) im.lam[l] = spectral_coord(l, np, grid.dp);
  im.kick_static.resize(nx * np);
  im.drive.assign(np, {1.0, 0.0});
  const bool quantum = config.mode == EvolveMode::quantum;
  const double inv_np = 1.0 / static_cast<double>(np);
  for (std::size_t i = 0; i < nx; ++i) {
    const double xi = grid.x(i);
    const double gx = 4.0 * pr.B * xi * xi * xi - 2.0 * pr.A * xi;
    const double moyal_coeff = quantum ? pr.hbar * pr.hbar * pr.B * xi : 0.0;
    for (std::size_t l = 0; l < np; ++l) {
      const double lm = im.lam[l];
      const double phase = (lm * gx + moyal_coeff * lm * lm * lm) * dt;
      const double decay = std::exp(-im.diffusion_d * lm * lm * dt);
      im.kick_static[i * np + l] = std::polar(inv_np * decay, phase);
    }
  }
}

Evolver::~Evolver() = default;

const EvolverConfig& Evolver::config() const { return impl_->config; }
double Evolver::dt() const { return impl_->config.dt; }

namespace {

/// Blocked transpose between x-slow and p-slow layouts.
void transpose(const fftw_complex* src, fftw_complex* dst, std::size_t rows, std::size_t cols,
               int n_threads) {
  constexpr std::size_t kTile = 32;
  const std::size_t row_blocks = (rows + kTile - 1) / kTile;
  parallel_rows(row_blocks, n_threads, [&](std::size_t rb) {
    const std::size_t i0 = rb * kTile;
    const std::size_t i1 = std::min(rows, i0 + kTile);
    for (std::size_t j0 = 0; j0 < cols; j0 += kTile) {
      const std::size_t j1 = std::min(cols, j0 + kTile);
      for (std::size_t i = i0; i < i1; ++i)
        for (std::size_t j = j0; j < j1; ++j) {
          dst[j * rows + i][0] = src[i * cols + j][0];
          dst[j * rows + i][1] = src[i * cols + j][1];
        }
    }
  });
}

bool buffer_finite(const fftw_complex* buf, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k)
    if (!std::isfinite(buf[k][0]) || !std::isfinite(buf[k][1])) return false;
  return true;
}

}  // namespace

StepReport Evolver::step(WignerField& field) {
  Impl& im = *impl_;
  const PhaseSpaceGrid& g = im.grid;
  if (!(field.grid == g))
    throw std::invalid_argument("Evolver::step: field grid does not match evolver grid");

  const std::size_t nx = g.nx, np = g.np_, n = nx * np;

  // Precondition: mass within 1e-3 of 1 (and finite).
  const double mass_before = mass(field);
  if (!std::isfinite(mass_before))
    throw NumericalError("Evolver::step: input field mass is not finite");
  if (std::abs(mass_before - 1.0) > 1e-3)
    throw std::invalid_argument(
        fmt("Evolver::step: field mass %.6g is not within 1e-3 of 1", mass_before));

  // Load the real field into the complex working buffer (x-slow).
  for (std::size_t k = 0; k < n; ++k) {
    im.bufA[k][0] = field.values[k];
    im.bufA[k][1] = 0.0;
  }

  const auto shear_pass = [&](const char* substep_name) {
    transpose(im.bufA, im.bufB, nx, np, im.n_threads);
    parallel_rows(np, im.n_threads, [&](std::size_t j) {
      fftw_complex* row = im.bufB + j * nx;
      fftw_execute_dft(im.plan_x_f, row, row);
      const std::complex<double>* mult = im.shear.data() + j * nx;
      for (std::size_t l = 0; l < nx; ++l) {
        const std::complex<double> v{row[l][0], row[l][1]};
        const std::complex<double> r = v * mult[l];
        row[l][0] = r.real();
        row[l][1] = r.imag();
      }
      fftw_execute_dft(im.plan_x_b, row, row);
    });
    transpose(im.bufB, im.bufA, np, nx, im.n_threads);
    if (!buffer_finite(im.bufA, n))
      throw NumericalError(std::string("Evolver::step: non-finite values after sub-step ") +
                           substep_name);
  };

  // --- half kinetic shear ---
  shear_pass("kinetic-shear-1");

  // --- full momentum kick at the step midpoint ---
  const double t_mid = field.time + 0.5 * im.config.dt;
  const double drive_force = im.config.params.lambda_ * std::cos(im.config.params.omega * t_mid);
  for (std::size_t l = 0; l < np; ++l)
    im.drive[l] = std::polar(1.0, im.lam[l] * drive_force * im.config.dt);
  parallel_rows(nx, im.n_threads, [&](std::size_t i) {
    fftw_complex* row = im.bufA + i * np;
    fftw_execute_dft(im.plan_p_f, row, row);
    const std::complex<double>* mult = im.kick_static.data() + i * np;
    for (std::size_t l = 0; l < np; ++l) {
      const std::complex<double> v{row[l][0], row[l][1]};
      const std::complex<double> r = v * mult[l] * im.drive[l];
      row[l][0] = r.real();
      row[l][1] = r.imag();
    }
    fftw_execute_dft(im.plan_p_b, row, row);
  });
  if (!buffer_finite(im.bufA, n))
    throw NumericalError("Evolver::step: non-finite values after sub-step momentum-kick");

  // --- half kinetic shear ---
  shear_pass("kinetic-shear-2");

  // Project back to a real field (discards the roundoff-level imaginary
  // residue carried by the unpaired Nyquist mode) and collect the report in
  // one fixed-order pass.
  double sum = 0.0, min_v = im.bufA[0][0], frame = 0.0;
  for (std::size_t i = 0; i < nx; ++i) {
    const bool x_edge = i < 2 || i >= nx - 2;
    for (std::size_t j = 0; j < np; ++j) {
      const double v = im.bufA[i * np + j][0];
      field.values[i * np + j] = v;
      sum += v;
      if (v < min_v) min_v = v;
      if (x_edge || j < 2 || j >= np - 2) frame += v;
    }
  }
  field.time += im.config.dt;

  StepReport report;
  report.time_after = field.time;
  report.mass_drift = sum * g.dx * g.dp - mass_before;
  report.boundary_mass = frame * g.dx * g.dp;
  report.min_value = min_v;

  if (report.boundary_mass > im.config.boundary_mass_limit)
    throw NumericalError(
        fmt("Evolver::step: domain overflow at t=%g: boundary mass %.3e exceeds limit %.3e "
            "(state escaping the grid)",
            field.time, report.boundary_mass, im.config.boundary_mass_limit));
  return report;
}

std::pair<WignerField, StepReport> step(const WignerField& field, const EvolverConfig& config) {
  Evolver ev(field.grid, config);
  WignerField out = field;
  StepReport rep = ev.step(out);
  return {std::move(out), rep};
}

namespace {

/// One-pass diagnostics sample. Mirrors the accumulation order of mass(),
/// moment() and negativity_volume() exactly so the series matches what the
/// public functions would return, at a single sweep's cost.
void sample_diagnostics(const WignerField& f, RunDiagnostics& diag) {
  const PhaseSpaceGrid& g = f.grid;
  double s = 0.0, sx = 0.0, sp = 0.0, sxx = 0.0, spp = 0.0, sabs = 0.0;
  for (std::size_t i = 0; i < g.nx; ++i) {
    const double xi = g.x(i);
    const double xi2 = xi * xi;
    for (std::size_t j = 0; j < g.np_; ++j) {
      const double pj = g.p(j);
      const double v = f.at(i, j);
      s += v;
      sabs += std::abs(v);
      sx += v * xi;
      sp += v * pj;
      sxx += v * xi2;
      spp += v * (pj * pj);
    }
  }
  const double m = s * g.dx * g.dp;
  if (std::abs(m - 1.0) > 1e-3)
    throw std::invalid_argument(fmt("run: field mass %.6g drifted outside 1e-3 of 1", m));
  const double mx = sx * g.dx * g.dp, mp = sp * g.dx * g.dp;
  const double vx = sxx * g.dx * g.dp - mx * mx, vp = spp * g.dx * g.dp - mp * mp;
  diag.push(f.time, mx, mp, vx, vp, sabs * g.dx * g.dp - m, m);
}

}  // namespace

RunResult run(const WignerField& field, const EvolverConfig& config, double t_final,
              const RunHooks& hooks, int n_threads) {
  const double span = t_final - field.time;
  if (span < 0.0)
    throw std::invalid_argument("run: t_final is earlier than the field's current time");
  RunResult result{field, {}};
  if (span == 0.0) return result;  // identity: untouched field, empty series

  if (!(config.dt > 0.0)) throw std::invalid_argument("run: dt must be positive");
  const double q = span / config.dt;
  const double rounded = std::nearbyint(q);
  std::size_t n_steps;
  if (rounded >= 1.0 && std::abs(q - rounded) <= 1e-9 * std::max(q, 1.0))
    n_steps = static_cast<std::size_t>(rounded);
  else
    n_steps = static_cast<std::size_t>(std::ceil(q));
  if (n_steps < 1) n_steps = 1;

  EvolverConfig effective = config;
  effective.dt = span / static_cast<double>(n_steps);

  Evolver ev(field.grid, effective, n_threads);
  const std::size_t interval = hooks.sample_interval == 0 ? 1 : hooks.sample_interval;

  sample_diagnostics(result.field, result.diagnostics);
  if (hooks.on_sample) {
    StepReport initial{result.field.time, 0.0, 0.0, 0.0};
    hooks.on_sample(result.field, initial);
  }
  for (std::size_t k = 0; k < n_steps; ++k) {
    const StepReport rep = ev.step(result.field);
    if (hooks.on_step) hooks.on_step(result.field, rep);
    if ((k + 1) % interval == 0 || k + 1 == n_steps) {
      sample_diagnostics(result.field, result.diagnostics);
      if (hooks.on_sample) hooks.on_sample(result.field, rep);
    }
  }
  return result;
}

}  // namespace wigsim
