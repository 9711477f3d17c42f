// Acceptance harness: verifies the eight shipping criteria end to end and
// prints exactly one PASS/FAIL line per criterion (plus the measured numbers
// that justify it). Exit code 0 iff every criterion passes.
//
// Every tolerance is pinned here as a named constant next to the criterion
// that owns it; nothing is read from the environment.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "wigsim/commands.hpp"
#include "wigsim/config.hpp"
#include "wigsim/diagnostics.hpp"
#include "wigsim/dynamics.hpp"
#include "wigsim/evolver.hpp"
#include "wigsim/grid.hpp"
#include "wigsim/oracle.hpp"

using namespace wigsim;
namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// Shared scenario definitions
// ---------------------------------------------------------------------------

// Driven double-well constants from Lin & Ballentine, PRL 65, 2927 (1990);
// hbar and the momentum-diffusion strength from Habib, Shiokawa & Hu,
// PRL 80, 4361 (1998). Identical to presets/fig1.cfg.
SystemParams production_params() {
  SystemParams p;
  p.m = 1.0;
  p.A = 10.0;
  p.B = 0.5;
  p.lambda_ = 10.0;
  p.omega = 6.07;
  p.hbar = 0.16;
  return p;
}

constexpr double kProductionD = 0.025;
constexpr double kProductionPeriods = 8.0;
const GaussianSpec kProductionInit{0.0, 0.0, 0.2, 0.4, true};

SystemParams harmonic_params() {
  SystemParams p;
  p.m = 1.0;
  p.A = -0.5;  // V = +x^2/2, so k = 1
  p.B = 0.0;
  p.lambda_ = 0.0;
  p.omega = 1.0;
  p.hbar = 1.0;
  return p;
}

EvolverConfig make_config(EvolveMode mode, const SystemParams& params, double dt, double d,
                          double boundary_limit) {
  EvolverConfig c;
  c.mode = mode;
  c.params = params;
  c.diffusion = DiffusionSpec::direct(d);
  c.dt = dt;
  c.boundary_mass_limit = boundary_limit;
  return c;
}

/// One production-scenario run at n x n resolution with dt = T / steps_per_period.
RunResult production_run(EvolveMode mode, double d, std::size_t n,
                         std::size_t steps_per_period, double* max_step_drift = nullptr) {
  const SystemParams p = production_params();
  const PhaseSpaceGrid g = make_grid(n, n, -8, 8, -20, 20);
  const WignerField f0 = init_gaussian(g, kProductionInit);
  const double period = driving_period(p);
  const EvolverConfig cfg = make_config(mode, p, period / static_cast<double>(steps_per_period),
                                        d, 0.05);
  RunHooks hooks;
  double worst = 0.0;
  if (max_step_drift) {
    hooks.on_step = [&](const WignerField&, const StepReport& rep) {
      worst = std::max(worst, std::abs(rep.mass_drift));
    };
  }
  RunResult r = run(f0, cfg, kProductionPeriods * period, hooks);
  if (max_step_drift) *max_step_drift = worst;
  return r;
}

struct Moments {
  double mean_x, mean_p, var_x, var_p;
};

Moments field_moments(const WignerField& f) {
  Moments m{};
  m.mean_x = moment(f, 1, 0);
  m.mean_p = moment(f, 0, 1);
  m.var_x = moment(f, 2, 0) - m.mean_x * m.mean_x;
  m.var_p = moment(f, 0, 2) - m.mean_p * m.mean_p;
  return m;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void verdict(int criterion, bool ok, const char* what) {
  std::printf("criterion %d: %s — %s\n", criterion, ok ? "PASS" : "FAIL", what);
  std::fflush(stdout);
}

// ---------------------------------------------------------------------------
// Criterion 1 — quartic truncation identity
// ---------------------------------------------------------------------------

bool criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr double kRelTol = 1e-12;   // relative to the largest participating term
  constexpr int kPoints = 10000;
  constexpr int kParamSets = 5;

  std::mt19937_64 rng(0x51C0FFEEu);
  std::uniform_real_distribution<double> um(0.5, 2.0);
  std::uniform_real_distribution<double> ua(-10.0, 10.0);
  std::uniform_real_distribution<double> ub(0.05, 2.0);
  std::uniform_real_distribution<double> ul(0.0, 10.0);
  std::uniform_real_distribution<double> uw(1.0, 10.0);
  std::uniform_real_distribution<double> uh(0.05, 1.0);
  std::uniform_real_distribution<double> ux(-5.0, 5.0);
  std::uniform_real_distribution<double> ut(0.0, 5.0);

  double worst = 0.0;
  for (int s = 0; s < kParamSets; ++s) {
    SystemParams p;
    p.m = um(rng);
    p.A = ua(rng);
    p.B = ub(rng);
    p.lambda_ = ul(rng);
    p.omega = uw(rng);
    p.hbar = uh(rng);
    for (int k = 0; k < kPoints; ++k) {
      const double x = ux(rng), l = ux(rng), t = ut(rng);
      const std::complex<double> q = quantum_kernel(x, l, t, p);
      const std::complex<double> c = classical_kernel(x, l, t, p);
      const double moyal = p.hbar * p.hbar * p.B * x * l * l * l;
      const double scale =
          std::max({std::abs(q.imag()), std::abs(c.imag()), std::abs(moyal), 1e-300});
      worst = std::max(worst, std::abs((q.imag() - c.imag()) - moyal) / scale);
      if (q.real() != 0.0 || c.real() != 0.0) worst = std::max(worst, 1.0);
    }
  }
  const double dt_s = seconds_since(t0);
  const bool ok = worst <= kRelTol && dt_s < 1.0;
  std::printf("  [1] max relative identity error %.3e (tol %.0e) over %d pts x %d param sets, "
              "%.2f s (budget 1 s)\n",
              worst, kRelTol, kPoints, kParamSets, dt_s);
  verdict(1, ok, "quartic truncation identity: quantum - classical = i hbar^2 B x lambda^3");
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 2 — B = 0 degeneracy and analytic rotation
// ---------------------------------------------------------------------------

bool criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr double kBitMatchTol = 1e-10;  // max |f_q - f_c| after 1e3 steps
  constexpr double kRotationTol = 1e-3;   // center error after a quarter period
  constexpr int kSteps = 1000;

  const SystemParams p = harmonic_params();
  const PhaseSpaceGrid g = make_grid(128, 128, -10, 10, -10, 10);
  const double s = 1.0 / std::sqrt(2.0);
  const WignerField f0 = init_gaussian(g, GaussianSpec{3.0, 0.0, s, s, true});
  const double period = 2.0 * M_PI;
  const double dt = period / 256.0;

  WignerField fq = f0, fc = f0;
  Evolver eq(g, make_config(EvolveMode::quantum, p, dt, 0.0, 1e-6));
  Evolver ec(g, make_config(EvolveMode::classical, p, dt, 0.0, 1e-6));
  double max_diff = 0.0;
  for (int k = 0; k < kSteps; ++k) {
    eq.step(fq);
    ec.step(fc);
  }
  for (std::size_t k = 0; k < fq.values.size(); ++k)
    max_diff = std::max(max_diff, std::abs(fq.values[k] - fc.values[k]));

  // Quarter period: (x0, 0) -> (0, -x0 sqrt(k m)) = (0, -3).
  const RunResult quarter =
      run(f0, make_config(EvolveMode::quantum, p, dt, 0.0, 1e-6), period / 4.0);
  const double ex = std::abs(moment(quarter.field, 1, 0) - 0.0);
  const double ep = std::abs(moment(quarter.field, 0, 1) - (-3.0));
  const double rot_err = std::max(ex, ep);

  const double dt_s = seconds_since(t0);
  const bool ok = max_diff < kBitMatchTol && rot_err < kRotationTol && dt_s < 10.0;
  std::printf("  [2] max |f_q - f_c| = %.3e after %d steps (tol %.0e); quarter-period center "
              "error %.3e (tol %.0e); %.2f s (budget 10 s)\n",
              max_diff, kSteps, kBitMatchTol, rot_err, kRotationTol, dt_s);
  verdict(2, ok, "B = 0 degeneracy: quantum == classical and analytic rotation");
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 3 — exact sub-step physics over one model time unit
// ---------------------------------------------------------------------------

bool criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr double kRelTol = 1e-4;

  SystemParams p = harmonic_params();
  p.A = 0.0;  // free particle
  const PhaseSpaceGrid g = make_grid(128, 128, -12, 12, -8, 8);
  const WignerField f0 = init_gaussian(g, GaussianSpec{0.0, 0.0, 1.0, 0.5, false});

  // Free spreading, D = 0: Var(x, 1) = sx^2 + sp^2 = 1.25.
  const RunResult free_run = run(f0, make_config(EvolveMode::quantum, p, 0.01, 0.0, 1e-6), 1.0);
  const Moments mf = field_moments(free_run.field);
  const double err_spread = std::abs(mf.var_x - 1.25) / 1.25;
  const double err_vp_const = std::abs(mf.var_p - 0.25) / 0.25;

  // Pure diffusion growth: Var(p, 1) = sp^2 + 2 D = 0.75 for D = 0.25.
  const double d = 0.25;
  const RunResult diff_run = run(f0, make_config(EvolveMode::classical, p, 0.01, d, 1e-6), 1.0);
  const Moments md = field_moments(diff_run.field);
  const double err_diff = std::abs(md.var_p - 0.75) / 0.75;

  const double dt_s = seconds_since(t0);
  const bool ok =
      err_spread <= kRelTol && err_vp_const <= kRelTol && err_diff <= kRelTol && dt_s < 10.0;
  std::printf("  [3] Var(x) spreading rel err %.3e; Var(p) constancy rel err %.3e; "
              "Var(p) = Var0 + 2Dt rel err %.3e (tol %.0e); %.2f s (budget 10 s)\n",
              err_spread, err_vp_const, err_diff, kRelTol, dt_s);
  verdict(3, ok, "free spreading and diffusion growth laws at 1e-4 relative");
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 4 — mass conservation on the production scenario at 256^2
// ---------------------------------------------------------------------------

bool criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr double kPerStepTol = 1e-12;
  constexpr double kTotalTol = 1e-6;

  double max_step_drift = 0.0;
  const RunResult r = production_run(EvolveMode::quantum, kProductionD, 256, 256,
                                     &max_step_drift);
  const double total_drift = std::abs(mass(r.field) - 1.0);

  const double dt_s = seconds_since(t0);
  const bool ok = max_step_drift < kPerStepTol && total_drift < kTotalTol;
  std::printf("  [4] max per-step |mass drift| %.3e (tol %.0e); total |mass - 1| %.3e "
              "(tol %.0e) after 2048 steps; %.1f s (target 300 s)\n",
              max_step_drift, kPerStepTol, total_drift, kTotalTol, dt_s);
  verdict(4, ok, "mass conservation per step and over the full 8-period run");
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 5 — classical PDE vs Langevin ensemble oracle
// ---------------------------------------------------------------------------

bool criterion5(const RunResult& c_dec) {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr double kNumSE = 4.0;
  constexpr std::uint64_t kParticles = 100000;
  constexpr std::uint64_t kSeed = 20260818;

  const SystemParams p = production_params();
  const double period = driving_period(p);
  const PhaseSpaceGrid g = make_grid(512, 512, -8, 8, -20, 20);
  EnsembleSpec spec{kParticles, kSeed, period / 512.0};
  const MomentSummary mc = langevin_run(spec, p, DiffusionSpec::direct(kProductionD),
                                        kProductionInit, kProductionPeriods * period, g, 1);
  const Moments mp = field_moments(c_dec.field);

  const double g1 = std::abs(mp.mean_x - mc.mean_x);
  const double g2 = std::abs(mp.mean_p - mc.mean_p);
  const double g3 = std::abs(mp.var_x - mc.var_x);
  const double g4 = std::abs(mp.var_p - mc.var_p);
  const bool ok = g1 <= kNumSE * mc.se_mean_x && g2 <= kNumSE * mc.se_mean_p &&
                  g3 <= kNumSE * mc.se_var_x && g4 <= kNumSE * mc.se_var_p;

  const double dt_s = seconds_since(t0);
  std::printf("  [5] PDE vs ensemble (n = %llu, %llu excluded): |d mean_x| %.4f vs 4SE %.4f; "
              "|d mean_p| %.4f vs %.4f; |d var_x| %.4f vs %.4f; |d var_p| %.4f vs %.4f; "
              "%.1f s (target 300 s)\n",
              static_cast<unsigned long long>(mc.n_used),
              static_cast<unsigned long long>(mc.n_excluded), g1, kNumSE * mc.se_mean_x, g2,
              kNumSE * mc.se_mean_p, g3, kNumSE * mc.se_var_x, g4, kNumSE * mc.se_var_p, dt_s);
  verdict(5, ok, "classical evolver matches the Langevin oracle within 4 standard errors");
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 6 — decoherence-to-classicality property (the headline result)
// ---------------------------------------------------------------------------

bool criterion6(const RunResult& q_iso, const RunResult& c_iso, const RunResult& q_dec,
                const RunResult& c_dec) {
  constexpr double kDistanceRatioMax = 0.1;  // d_dec < 0.1 d_iso in L2
  constexpr double kNegRatioMax = 0.5;       // negativity suppressed at least 2x

  const double d_iso = field_distance(q_iso.field, c_iso.field, Metric::L2);
  const double d_dec = field_distance(q_dec.field, c_dec.field, Metric::L2);
  const double neg_iso = negativity_volume(q_iso.field);
  const double neg_dec = negativity_volume(q_dec.field);

  const double theta_high = std::max(0.5 * d_iso, 1e-6);
  const double theta_low = std::max(0.1 * d_iso, 1e-7);
  const ScreeningVerdict v = screening_report(q_iso.field, c_iso.field, q_dec.field,
                                              c_dec.field, theta_high, theta_low);

  const bool ok = d_dec < kDistanceRatioMax * d_iso && neg_dec < kNegRatioMax * neg_iso &&
                  v.emergent;
  std::printf("  [6] d_iso(L2) = %.6f, d_dec(L2) = %.6f, measured suppression ratio %.4f "
              "(required < %.2f)\n",
              d_iso, d_dec, d_dec / d_iso, kDistanceRatioMax);
  std::printf("  [6] negativity: isolated %.6f, decohered %.6f, measured ratio %.4f "
              "(required < %.2f)\n",
              neg_iso, neg_dec, neg_dec / neg_iso, kNegRatioMax);
  std::printf("  [6] screening: relevance = %s, irrelevance = %s, emergent = %s "
              "(theta_high %.3g, theta_low %.3g)\n",
              v.unconditional_relevance ? "true" : "false",
              v.conditional_irrelevance ? "true" : "false", v.emergent ? "true" : "false",
              theta_high, theta_low);
  verdict(6, ok, "decoherence collapses the quantum-classical gap (distance, negativity, "
                 "screening verdict)");
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 7 — dose-response monotonicity of the decohered gap
// ---------------------------------------------------------------------------

bool criterion7(double d_dec_mid) {
  const auto t0 = std::chrono::steady_clock::now();
  // d_dec at D = 0.0125 and 0.05 (the 0.025 value is shared with criterion 6).
  std::printf("  [7] running decohered pairs at D = 0.0125 and D = 0.05 (four 512^2 runs)...\n");
  std::fflush(stdout);
  const RunResult q_lo = production_run(EvolveMode::quantum, 0.0125, 512, 512);
  const RunResult c_lo = production_run(EvolveMode::classical, 0.0125, 512, 512);
  const double d_lo = field_distance(q_lo.field, c_lo.field, Metric::L2);
  const RunResult q_hi = production_run(EvolveMode::quantum, 0.05, 512, 512);
  const RunResult c_hi = production_run(EvolveMode::classical, 0.05, 512, 512);
  const double d_hi = field_distance(q_hi.field, c_hi.field, Metric::L2);

  const bool ok = d_lo >= d_dec_mid && d_dec_mid >= d_hi;
  const double dt_s = seconds_since(t0);
  std::printf("  [7] d_dec(L2): D=0.0125 -> %.6f, D=0.025 -> %.6f, D=0.05 -> %.6f; "
              "non-increasing: %s; %.1f s\n",
              d_lo, d_dec_mid, d_hi, ok ? "yes" : "NO", dt_s);
  verdict(7, ok, "stronger decoherence never widens the quantum-classical gap");
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 8 — numerical hygiene: Strang order, self-convergence, manifests
// ---------------------------------------------------------------------------

bool criterion8(const RunResult& q_dec_512) {
  constexpr double kRatioLo = 3.2, kRatioHi = 4.8;  // 4 +- 20%
  constexpr double kConvTol = 1e-3;                 // relative, under grid doubling

  // --- (a) Strang second order on the harmonic quarter-period center ---
  const SystemParams p = harmonic_params();
  const PhaseSpaceGrid g = make_grid(128, 128, -10, 10, -10, 10);
  const double s = 1.0 / std::sqrt(2.0);
  const WignerField f0 = init_gaussian(g, GaussianSpec{3.0, 0.0, s, s, true});
  const double period = 2.0 * M_PI;
  // At t = T/4 the analytic center is (0, -3); the <x> error there is linear
  // in the splitting-induced phase shift, giving a clean dt^2 signal.
  double errs[3];
  const double divisors[3] = {64.0, 128.0, 256.0};
  for (int k = 0; k < 3; ++k) {
    const EvolverConfig cfg =
        make_config(EvolveMode::quantum, p, period / divisors[k], 0.0, 1e-6);
    const RunResult r = run(f0, cfg, period / 4.0);
    errs[k] = std::abs(moment(r.field, 1, 0) - 0.0);
  }
  const double ratio1 = errs[0] / errs[1];
  const double ratio2 = errs[1] / errs[2];
  const bool ok_a = ratio1 >= kRatioLo && ratio1 <= kRatioHi && ratio2 >= kRatioLo &&
                    ratio2 <= kRatioHi;
  std::printf("  [8a] <x> error at T/4: dt=T/64 -> %.3e, T/128 -> %.3e, T/256 -> %.3e; "
              "ratios %.2f, %.2f (required within [%.1f, %.1f]) => %s\n",
              errs[0], errs[1], errs[2], ratio1, ratio2, kRatioLo, kRatioHi,
              ok_a ? "ok" : "VIOLATED");

  // --- (b) self-convergence of the production run under grid doubling ---
  std::printf("  [8b] running the 1024^2 / dt = T/1024 refinement (the long leg, ~6 min)...\n");
  std::fflush(stdout);
  const auto t0 = std::chrono::steady_clock::now();
  const RunResult hi = production_run(EvolveMode::quantum, kProductionD, 1024, 1024);
  const Moments m_lo = field_moments(q_dec_512.field);
  const Moments m_hi = field_moments(hi.field);
  const double rel[4] = {
      std::abs(m_hi.mean_x - m_lo.mean_x) / std::max(std::abs(m_hi.mean_x), std::abs(m_lo.mean_x)),
      std::abs(m_hi.mean_p - m_lo.mean_p) / std::max(std::abs(m_hi.mean_p), std::abs(m_lo.mean_p)),
      std::abs(m_hi.var_x - m_lo.var_x) / std::max(std::abs(m_hi.var_x), std::abs(m_lo.var_x)),
      std::abs(m_hi.var_p - m_lo.var_p) / std::max(std::abs(m_hi.var_p), std::abs(m_lo.var_p))};
  const bool ok_b = rel[0] < kConvTol && rel[1] < kConvTol && rel[2] < kConvTol &&
                    rel[3] < kConvTol;
  std::printf("  [8b] 512^2@T/512 vs 1024^2@T/1024 final moments (%.0f s):\n",
              seconds_since(t0));
  std::printf("  [8b]   mean_x %.6f -> %.6f (rel change %.2e)\n", m_lo.mean_x, m_hi.mean_x,
              rel[0]);
  std::printf("  [8b]   mean_p %.6f -> %.6f (rel change %.2e)\n", m_lo.mean_p, m_hi.mean_p,
              rel[1]);
  std::printf("  [8b]   var_x  %.6f -> %.6f (rel change %.2e)\n", m_lo.var_x, m_hi.var_x,
              rel[2]);
  std::printf("  [8b]   var_p  %.6f -> %.6f (rel change %.2e)\n", m_lo.var_p, m_hi.var_p,
              rel[3]);
  std::printf("  [8b] every relative change must be < %.0e => %s\n", kConvTol,
              ok_b ? "ok" : "VIOLATED");
  if (!ok_b)
    std::printf("  [8b] note: after eight driving periods the dynamics is chaotic (positive "
                "Lyapunov exponent), so pointwise moment convergence at this tolerance is not "
                "reachable at these resolutions; the gap above is the honest measured value, "
                "recorded rather than masked.\n");

  // --- (c) byte-exact reproducibility from manifests ---
  bool ok_c = false;
  {
    const char* cheap = R"([grid]
nx = 64
np = 64
x_min = -8
x_max = 8
p_min = -20
p_max = 20
[params]
m = 1.0
a = 10.0
b = 0.5
lambda = 10.0
omega = 6.07
hbar = 0.16
[init]
x0 = 0.0
p0 = 0.0
sigma_x = 0.2
sigma_p = 0.4
minimum_uncertainty = true
[evolve]
mode = quantum
dt = 0.016173767780013348
t_final_periods = 1
sample_every = 8
boundary_mass_limit = 0.05
[decoherence]
d = 0.025
[output]
dir = out/acceptance_cheap
formats = dump,csv
)";
    const fs::path base = fs::temp_directory_path() / "wigsim_acceptance";
    fs::remove_all(base);
    const fs::path out1 = base / "a", out2 = base / "b";
    const RunConfig cfg = parse_config(cheap);
    cmd_run(cfg, out1.string());
    const RunConfig re = load_config((out1 / "manifest.cfg").string());
    cmd_run(re, out2.string());
    const auto slurp = [](const fs::path& path) {
      std::ifstream in(path, std::ios::binary);
      return std::vector<char>(std::istreambuf_iterator<char>(in),
                               std::istreambuf_iterator<char>());
    };
    const bool final_same = slurp(out1 / "final.wigf") == slurp(out2 / "final.wigf");
    const bool csv_same =
        slurp(out1 / "diagnostics.csv") == slurp(out2 / "diagnostics.csv");
    const bool snap_same =
        slurp(out1 / "snapshot_001.wigf") == slurp(out2 / "snapshot_001.wigf");
    ok_c = final_same && csv_same && snap_same &&
           !slurp(out1 / "final.wigf").empty();
    std::printf("  [8c] manifest re-execution byte-identical: dump %s, csv %s, snapshot %s\n",
                final_same ? "yes" : "NO", csv_same ? "yes" : "NO", snap_same ? "yes" : "NO");
  }

  const bool ok = ok_a && ok_b && ok_c;
  verdict(8, ok, "numerical hygiene: Strang order, grid-doubling self-convergence, "
                 "manifest reproducibility");
  return ok;
}

}  // namespace

int main() {
  std::printf("acceptance: eight criteria, production scenario = 512^2 grid, 8 driving "
              "periods, D = %.4g\n\n",
              kProductionD);
  std::fflush(stdout);

  int failures = 0;
  const auto tally = [&](bool ok) {
    if (!ok) ++failures;
  };

  tally(criterion1());
  tally(criterion2());
  tally(criterion3());
  tally(criterion4());

  // The four shared production runs used by criteria 5-8.
  std::printf("\nrunning the four shared 512^2 production legs (~35 s each)...\n");
  std::fflush(stdout);
  const RunResult q_iso = production_run(EvolveMode::quantum, 0.0, 512, 512);
  std::printf("  quantum isolated done\n");
  std::fflush(stdout);
  const RunResult c_iso = production_run(EvolveMode::classical, 0.0, 512, 512);
  std::printf("  classical isolated done\n");
  std::fflush(stdout);
  const RunResult q_dec = production_run(EvolveMode::quantum, kProductionD, 512, 512);
  std::printf("  quantum decohered done\n");
  std::fflush(stdout);
  const RunResult c_dec = production_run(EvolveMode::classical, kProductionD, 512, 512);
  std::printf("  classical decohered done\n\n");
  std::fflush(stdout);

  tally(criterion5(c_dec));
  tally(criterion6(q_iso, c_iso, q_dec, c_dec));
  tally(criterion7(field_distance(q_dec.field, c_dec.field, Metric::L2)));
  tally(criterion8(q_dec));

  std::printf("\nacceptance summary: %d/8 criteria passed", 8 - failures);
  if (failures) std::printf(", %d failed (see the FAIL lines above for the measured gaps)",
                            failures);
  std::printf("\n");
  return failures == 0 ? 0 : 1;
}
