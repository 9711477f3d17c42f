#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <utility>

#include "wigsim/diagnostics.hpp"
#include "wigsim/dynamics.hpp"
#include "wigsim/grid.hpp"

namespace wigsim {

enum class EvolveMode { quantum, classical };

/// Time-integration configuration for one run.
struct EvolverConfig {
  EvolveMode mode = EvolveMode::quantum;
  SystemParams params;
  DiffusionSpec diffusion = DiffusionSpec::direct(0.0);
  double dt = 0.0;                      ///< requested step; > 0
  double boundary_mass_limit = 1e-6;    ///< overflow tripwire, > 0
};

/// Per-step health report.
struct StepReport {
  double time_after = 0.0;
  double mass_drift = 0.0;     ///< mass(after) - mass(before), signed
  double boundary_mass = 0.0;  ///< mass in the outermost 2-cell frame
  double min_value = 0.0;
};

/// Exact potential kernel in the (x, lambda) representation, where lambda is
/// conjugate to p under f~(lambda) = sum_p f(p) e^{-i lambda p} dp:
///   (i/hbar) [V(x + hbar lambda/2, t_mid) - V(x - hbar lambda/2, t_mid)]
/// For the quartic V this equals i lambda dV/dx + i hbar^2 B x lambda^3
/// identically (the series truncates), which is the force term plus the
/// quantum correction -hbar^2 B x d^3/dp^3. Multiplying the lambda-transform
/// by exp(kernel * dt) performs the force + quantum sub-step exactly.
std::complex<double> quantum_kernel(double x, double lambda_var, double t_mid,
                                    const SystemParams& params);

/// Classical limit of the kernel: i lambda dV/dx(x, t_mid) (no hbar).
std::complex<double> classical_kernel(double x, double lambda_var, double t_mid,
                                      const SystemParams& params);

/// Optional callbacks and sampling cadence for run().
struct RunHooks {
  std::size_t sample_interval = 16;  ///< steps between diagnostic samples
  /// Called at every diagnostic sample (including t0 and the final step).
  std::function<void(const WignerField&, const StepReport&)> on_sample;
  /// Called after every step.
  std::function<void(const WignerField&, const StepReport&)> on_step;
};

struct RunResult {
  WignerField field;
  RunDiagnostics diagnostics;
};

/// Strang-split spectral stepper for the quantum master equation
///   df/dt = -(p/m) df/dx + dV/dx df/dp + L_q f + D d^2f/dp^2
/// (quantum mode) and its classical limit L_q = 0 (Fokker-Planck). One step
/// is: half kinetic shear, full momentum kick (force + quantum term +
/// diffusion, drive evaluated at the step midpoint), half kinetic shear.
/// Shear and diffusion factors are exact per sub-step; only splitting error
/// remains. Boundaries are periodic; a boundary-mass tripwire reports escape.
///
/// Determinism: plans are FFTW_ESTIMATE, transforms run on contiguous rows,
/// multiplier tables are precomputed once, and all reductions run in fixed
/// index order, so identical inputs give bit-identical outputs regardless of
/// thread count.
class Evolver {
 public:
  /// Validates config against the grid and builds FFT plans and multiplier
  /// tables. n_threads >= 1 chooses row-parallel workers (results are
  /// thread-count invariant).
  Evolver(const PhaseSpaceGrid& grid, const EvolverConfig& config, int n_threads = 1);
  ~Evolver();
  Evolver(const Evolver&) = delete;
  Evolver& operator=(const Evolver&) = delete;

  /// Advances the field by one dt in place. Requires field mass within 1e-3
  /// of 1. Throws NumericalError on boundary overflow (boundary mass above
  /// the configured limit) or non-finite values (naming the sub-step).
  StepReport step(WignerField& field);

  const EvolverConfig& config() const;
  double dt() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-shot convenience step: copies the field, advances it by config.dt.
std::pair<WignerField, StepReport> step(const WignerField& field, const EvolverConfig& config);

/// Repeated stepping from field.time to t_final. The requested config.dt is
/// adjusted downward so the span divides into a whole number of steps (a
/// span/dt within 1e-9 of an integer is accepted as that integer).
/// t_final == field.time is the identity (empty diagnostics series);
/// t_final < field.time throws std::invalid_argument. Diagnostics are
/// sampled at t0, every hooks.sample_interval steps, and at the final step.
RunResult run(const WignerField& field, const EvolverConfig& config, double t_final,
              const RunHooks& hooks = {}, int n_threads = 1);

}  // namespace wigsim
