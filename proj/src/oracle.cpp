#include "wigsim/oracle.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "wigsim/errors.hpp"

namespace wigsim {

namespace {

/// splitmix64 (Steele, Lea & Flood): one full-avalanche 64-bit draw per call.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t s) : state(s) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  /// Uniform in (0, 1]; never 0, so log() below is safe.
  double uniform() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1p-53; }
};

/// Avalanche used to derive decorrelated per-particle states. Seeding adjacent
/// particles with seed + i would make their streams shifted copies of one
/// another; hashing (seed, index) first removes that correlation.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Standard normals via Box-Muller with a cached spare.
struct NormalStream {
  SplitMix64 rng;
  double spare = 0.0;
  bool has_spare = false;
  explicit NormalStream(std::uint64_t s) : rng(s) {}
  double next() {
    if (has_spare) {
      has_spare = false;
      return spare;
    }
    const double r = std::sqrt(-2.0 * std::log(rng.uniform()));
    const double a = 2.0 * M_PI * rng.uniform();
    spare = r * std::sin(a);
    has_spare = true;
    return r * std::cos(a);
  }
};

template <typename Fn>
void parallel_ranges(std::uint64_t count, int n_threads, Fn&& fn) {
  if (n_threads <= 1) {
    fn(std::uint64_t{0}, count);
    return;
  }
  const std::uint64_t nt = static_cast<std::uint64_t>(n_threads);
  std::vector<std::thread> workers;
  workers.reserve(nt);
  for (std::uint64_t w = 0; w < nt; ++w) {
    const std::uint64_t lo = count * w / nt;
    const std::uint64_t hi = count * (w + 1) / nt;
    workers.emplace_back([lo, hi, &fn] { fn(lo, hi); });
  }
  for (auto& t : workers) t.join();
}

}  // namespace

MomentSummary langevin_run(const EnsembleSpec& spec, const SystemParams& params,
                           const DiffusionSpec& diffusion, const GaussianSpec& init,
                           double t_final, const PhaseSpaceGrid& grid, int n_threads) {
  params.validate();
  if (spec.n_particles < 1)
    throw std::invalid_argument("langevin_run: n_particles must be >= 1");
  if (!(spec.dt > 0.0) || !std::isfinite(spec.dt))
    throw std::invalid_argument("langevin_run: dt must be positive and finite");
  if (!(init.sigma_x > 0.0) || !(init.sigma_p > 0.0))
    throw std::invalid_argument("langevin_run: initial widths must be positive");
  if (!(t_final >= 0.0))
    throw std::invalid_argument("langevin_run: t_final must be >= 0");
  if (n_threads < 1) throw std::invalid_argument("langevin_run: n_threads must be >= 1");

  // Step count: same snap-down rule as the grid evolver.
  std::uint64_t n_steps = 0;
  double dt = spec.dt;
  if (t_final > 0.0) {
    const double q = t_final / spec.dt;
    const double rounded = std::nearbyint(q);
    if (rounded >= 1.0 && std::abs(q - rounded) <= 1e-9 * std::max(q, 1.0))
      n_steps = static_cast<std::uint64_t>(rounded);
    else
      n_steps = static_cast<std::uint64_t>(std::ceil(q));
    if (n_steps < 1) n_steps = 1;
    dt = t_final / static_cast<double>(n_steps);
  }

  const double d = diffusion.resolve();
  const double noise_scale = std::sqrt(2.0 * d * dt);
  const double x_escape = 10.0 * std::max(std::abs(grid.x_min), std::abs(grid.x_max));
  const double p_escape = 10.0 * std::max(std::abs(grid.p_min), std::abs(grid.p_max));

  // The drive depends on time only; tabulate it once per step instead of
  // evaluating cos() in the per-particle inner loop.
  std::vector<double> drive(n_steps);
  for (std::uint64_t k = 0; k < n_steps; ++k)
    drive[k] = params.lambda_ * std::cos(params.omega * (static_cast<double>(k) * dt));

  const std::uint64_t n = spec.n_particles;
  std::vector<double> xs(n), ps(n);
  std::vector<unsigned char> alive(n, 1);

  const double inv_m_dt = dt / params.m;
  const double two_a = 2.0 * params.A;
  const double four_b = 4.0 * params.B;

  // Each particle consumes only its own stream, so the fill is bitwise
  // independent of the thread partition.
  parallel_ranges(n, n_threads, [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      NormalStream ns(mix64(spec.seed ^ (0xD1B54A32D192ED03ULL * (idx + 1))));
      double x = init.x0 + init.sigma_x * ns.next();
      double p = init.p0 + init.sigma_p * ns.next();
      bool ok = true;
      for (std::uint64_t k = 0; k < n_steps; ++k) {
        // Kick-then-drift: the position update uses the post-kick momentum
        // (symplectic for D = 0, unlike the joint explicit-Euler update).
        const double grad_v = four_b * x * x * x - two_a * x + drive[k];
        p += -grad_v * dt + noise_scale * ns.next();
        x += p * inv_m_dt;
        if (std::abs(x) > x_escape || std::abs(p) > p_escape) {
          ok = false;
          break;
        }
      }
      xs[idx] = x;
      ps[idx] = p;
      alive[idx] = ok ? 1 : 0;
    }
  });

  // Fixed-order (particle-index) reductions: means first, then exact central
  // sums, so summaries are bit-identical across thread counts.
  std::uint64_t n_used = 0;
  double sx = 0.0, sp = 0.0;
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    if (!alive[idx]) continue;
    ++n_used;
    sx += xs[idx];
    sp += ps[idx];
  }
  if (n_used < 2)
    throw NumericalError("langevin_run: fewer than 2 particles remain inside 10x grid bounds");

  MomentSummary out;
  out.time = t_final;
  out.n_used = n_used;
  out.n_excluded = n - n_used;
  const double nd = static_cast<double>(n_used);
  out.mean_x = sx / nd;
  out.mean_p = sp / nd;

  double cxx = 0.0, cpp_ = 0.0, cx4 = 0.0, cp4 = 0.0;
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    if (!alive[idx]) continue;
    const double ex = xs[idx] - out.mean_x;
    const double ep = ps[idx] - out.mean_p;
    const double ex2 = ex * ex, ep2 = ep * ep;
    cxx += ex2;
    cpp_ += ep2;
    cx4 += ex2 * ex2;
    cp4 += ep2 * ep2;
  }
  out.var_x = cxx / (nd - 1.0);
  out.var_p = cpp_ / (nd - 1.0);
  out.se_mean_x = std::sqrt(out.var_x / nd);
  out.se_mean_p = std::sqrt(out.var_p / nd);
  // Large-n standard error of the sample variance: sqrt((m4 - var^2) / n).
  const double m4x = cx4 / nd, m4p = cp4 / nd;
  out.se_var_x = std::sqrt(std::max(0.0, m4x - out.var_x * out.var_x) / nd);
  out.se_var_p = std::sqrt(std::max(0.0, m4p - out.var_p * out.var_p) / nd);
  return out;
}

MomentSummary analytic_free_gaussian(const GaussianSpec& init, double m, double t) {
  if (!(m > 0.0)) throw std::invalid_argument("analytic_free_gaussian: mass must be positive");
  MomentSummary out;
  out.time = t;
  out.mean_x = init.x0 + init.p0 * t / m;
  out.mean_p = init.p0;
  out.var_x = init.sigma_x * init.sigma_x + init.sigma_p * init.sigma_p * (t / m) * (t / m);
  out.var_p = init.sigma_p * init.sigma_p;
  return out;
}

}  // namespace wigsim
