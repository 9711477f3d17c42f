#pragma once

#include <cstdint>

#include "wigsim/dynamics.hpp"
#include "wigsim/grid.hpp"

namespace wigsim {

/// Langevin ensemble configuration.
struct EnsembleSpec {
  std::uint64_t n_particles = 0;  ///< >= 1; acceptance uses >= 1e3
  std::uint64_t seed = 0;         ///< fixed seed => bit-identical summaries
  double dt = 0.0;                ///< > 0
};

/// Sample moments with standard-error estimates.
struct MomentSummary {
  double time = 0.0;
  double mean_x = 0.0, mean_p = 0.0;
  double var_x = 0.0, var_p = 0.0;  ///< unbiased (n-1) sample variances
  double se_mean_x = 0.0, se_mean_p = 0.0;
  double se_var_x = 0.0, se_var_p = 0.0;
  std::uint64_t n_used = 0;
  std::uint64_t n_excluded = 0;  ///< escaped particles, excluded from moments
};

/// Integrates n_particles independent trajectories of the SDE equivalent to
/// the classical Fokker-Planck equation:
///   dx = (p/m) dt,   dp = -dV/dx dt + sqrt(2 D) dW.
/// Euler-Maruyama with the symplectic (kick-then-drift) update and the drive
/// evaluated at the step start. Initial conditions are Gaussian per `init`.
/// Particles beyond 10x the grid bounds (|x| > 10 max|x bound|, likewise p)
/// are excluded from the moments and counted in n_excluded. Each particle
/// derives its own counter-based random stream from (seed, index), so
/// summaries are bit-identical for a fixed seed regardless of thread count.
MomentSummary langevin_run(const EnsembleSpec& spec, const SystemParams& params,
                           const DiffusionSpec& diffusion, const GaussianSpec& init,
                           double t_final, const PhaseSpaceGrid& grid, int n_threads = 1);

/// Closed-form free-particle moments (V = 0, D = 0):
///   <x> = x0 + p0 t / m, Var(x) = sx^2 + sp^2 t^2 / m^2, p moments constant.
MomentSummary analytic_free_gaussian(const GaussianSpec& init, double m, double t);

}  // namespace wigsim
