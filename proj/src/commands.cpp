#include "wigsim/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <vector>

#include "wigsim/diagnostics.hpp"
#include "wigsim/errors.hpp"
#include "wigsim/io.hpp"
#include "wigsim/version.hpp"

namespace fs = std::filesystem;

namespace wigsim {

namespace {

void emit_config_warnings(const RunConfig& config) {
  if (config.params.unbounded_below())
    std::fprintf(stderr,
                 "warning: B = 0 with A > 0 makes the potential unbounded below; "
                 "intended for test cases only\n");
  const double steps_per_period = driving_period(config.params) / config.dt;
  if (steps_per_period < 64.0)
    std::fprintf(stderr,
                 "warning: dt resolves the driving period with only %.1f steps "
                 "(< 64); drive integration may be under-resolved\n",
                 steps_per_period);
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

/// Runs one configured evolution and writes the full output set into out_dir.
RunResult execute_run(const RunConfig& config, const std::string& out_dir, int n_threads) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec && !fs::is_directory(out_dir))
    throw ConfigError("cannot create output directory: " + out_dir);

  RunConfig resolved = config;
  resolved.output_dir = out_dir;
  {
    std::ofstream mf(join(out_dir, "manifest.cfg"), std::ios::binary);
    if (!mf) throw ConfigError("cannot write manifest in: " + out_dir);
    mf << "# wigsim " << kVersion << " run manifest\n"
       << "# fully resolved configuration: rerunning this file reproduces the\n"
       << "# outputs in this directory byte-identically\n\n"
       << serialize_config(resolved);
  }

  WignerField f0 = init_gaussian(config.grid, config.init);

  const double period = driving_period(config.params);
  const double dt = config.dt;
  char name[64];
  if (config.formats.dump) {
    write_dump(f0, join(out_dir, "snapshot_000.wigf"));
  }
  if (config.formats.pgm) {
    write_heatmap(f0, join(out_dir, "snapshot_000.pgm"));
  }

  // Snapshots at integer multiples of the driving period (the step whose end
  // time is within dt/2 of k*T).
  long last_snapshot = 0;
  RunHooks hooks;
  hooks.sample_interval = config.sample_every;
  hooks.on_step = [&](const WignerField& f, const StepReport& rep) {
    const double k = std::nearbyint(rep.time_after / period);
    if (k > static_cast<double>(last_snapshot) &&
        std::abs(rep.time_after - k * period) <= 0.5 * dt) {
      last_snapshot = static_cast<long>(k);
      if (config.formats.dump) {
        std::snprintf(name, sizeof name, "snapshot_%03ld.wigf", last_snapshot);
        write_dump(f, join(out_dir, name));
      }
      if (config.formats.pgm) {
        std::snprintf(name, sizeof name, "snapshot_%03ld.pgm", last_snapshot);
        write_heatmap(f, join(out_dir, name));
      }
    }
  };

  RunResult result = run(f0, config.evolver_config(), config.t_final(), hooks, n_threads);

  if (config.formats.dump) write_dump(result.field, join(out_dir, "final.wigf"));
  if (config.formats.pgm) write_heatmap(result.field, join(out_dir, "final.pgm"));
  if (config.formats.csv)
    write_diagnostics_csv(result.diagnostics, join(out_dir, "diagnostics.csv"));
  return result;
}

/// P5 side-by-side panel image with a shared gray scale so the three regimes
/// are visually comparable; 2-pixel white separators.
void write_composite_pgm(const WignerField* fields[3], const std::string& path) {
  const std::size_t nx = fields[0]->grid.nx, np = fields[0]->grid.np_;
  double lo = fields[0]->values[0], hi = lo;
  for (int f = 0; f < 3; ++f)
    for (double v : fields[f]->values) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write composite heatmap: " + path);
  const std::size_t sep = 2, width = 3 * nx + 2 * sep;
  char comment[96];
  std::snprintf(comment, sizeof comment, "# shared range min=%.17g max=%.17g\n", lo, hi);
  out << "P5\n" << comment << width << " " << np << "\n255\n";
  std::vector<unsigned char> row(width, 255);
  const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
  for (std::size_t jr = 0; jr < np; ++jr) {
    const std::size_t j = np - 1 - jr;
    std::size_t col = 0;
    for (int f = 0; f < 3; ++f) {
      for (std::size_t i = 0; i < nx; ++i)
        row[col++] = hi > lo ? static_cast<unsigned char>(scale * (fields[f]->at(i, j) - lo) + 0.5)
                             : static_cast<unsigned char>(128);
      if (f < 2) col += sep;
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(width));
  }
}

struct CompareOutcome {
  double d_iso_l2 = 0.0, d_iso_l1 = 0.0;
  double d_dec_l2 = 0.0, d_dec_l1 = 0.0;
  double neg_q_iso = 0.0, neg_q_dec = 0.0, neg_c_dec = 0.0, neg_c_iso = 0.0;
  std::optional<double> break_iso, break_dec;
  ScreeningVerdict verdict;
};

void print_negativity_series(std::ostream& out, const char* leg, const RunDiagnostics& diag) {
  out << "negativity series [" << leg << "] (time value):\n";
  char line[80];
  for (std::size_t k = 0; k < diag.size(); ++k) {
    std::snprintf(line, sizeof line, "  %.10g %.10g\n", diag.times[k], diag.negativity[k]);
    out << line;
  }
}

CompareOutcome run_compare(const RunConfig& config, const std::string& out_dir, double eta,
                           int n_threads) {
  const double d0 = config.diffusion.resolve();
  if (!(d0 > 0.0))
    throw ConfigError("compare requires decoherence with D > 0 (the decohered regime)");
  if (!(eta > 0.0)) throw ConfigError("compare: eta must be > 0");

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec && !fs::is_directory(out_dir))
    throw ConfigError("cannot create output directory: " + out_dir);

  // Four legs: the figure's three regimes plus the isolated classical
  // reference that defines d_iso for the screening verdict.
  RunConfig q_iso = config, c_iso = config, q_dec = config, c_dec = config;
  q_iso.mode = EvolveMode::quantum;
  q_iso.diffusion = DiffusionSpec::direct(0.0);
  c_iso.mode = EvolveMode::classical;
  c_iso.diffusion = DiffusionSpec::direct(0.0);
  q_dec.mode = EvolveMode::quantum;
  c_dec.mode = EvolveMode::classical;

  const RunResult r_q_iso = execute_run(q_iso, join(out_dir, "quantum_iso"), n_threads);
  const RunResult r_c_iso = execute_run(c_iso, join(out_dir, "classical_iso"), n_threads);
  const RunResult r_q_dec = execute_run(q_dec, join(out_dir, "quantum_dec"), n_threads);
  const RunResult r_c_dec = execute_run(c_dec, join(out_dir, "classical_dec"), n_threads);

  CompareOutcome oc;
  oc.d_iso_l2 = field_distance(r_q_iso.field, r_c_iso.field, Metric::L2);
  oc.d_iso_l1 = field_distance(r_q_iso.field, r_c_iso.field, Metric::L1);
  oc.d_dec_l2 = field_distance(r_q_dec.field, r_c_dec.field, Metric::L2);
  oc.d_dec_l1 = field_distance(r_q_dec.field, r_c_dec.field, Metric::L1);
  oc.neg_q_iso = negativity_volume(r_q_iso.field);
  oc.neg_q_dec = negativity_volume(r_q_dec.field);
  oc.neg_c_dec = negativity_volume(r_c_dec.field);
  oc.neg_c_iso = negativity_volume(r_c_iso.field);
  oc.break_iso = break_time(r_q_iso.diagnostics, r_c_iso.diagnostics, eta);
  oc.break_dec = break_time(r_q_dec.diagnostics, r_c_dec.diagnostics, eta);

  // Verdict thresholds as fractions of the isolated divergence, floored so a
  // system with no quantum novelty (d_iso ~ 0) yields relevance = false
  // rather than a degenerate threshold pair.
  const double theta_high = std::max(0.5 * oc.d_iso_l2, 1e-6);
  const double theta_low = std::max(0.1 * oc.d_iso_l2, 1e-7);
  oc.verdict = screening_report(r_q_iso.field, r_c_iso.field, r_q_dec.field, r_c_dec.field,
                                theta_high, theta_low);

  // Three final-state panels plus the composite.
  write_heatmap(r_q_iso.field, join(out_dir, "panel_quantum_iso.pgm"));
  write_heatmap(r_q_dec.field, join(out_dir, "panel_quantum_dec.pgm"));
  write_heatmap(r_c_dec.field, join(out_dir, "panel_classical_dec.pgm"));
  const WignerField* panels[3] = {&r_q_iso.field, &r_q_dec.field, &r_c_dec.field};
  write_composite_pgm(panels, join(out_dir, "composite.pgm"));

  std::ofstream rep(join(out_dir, "report.txt"), std::ios::binary);
  if (!rep) throw ConfigError("cannot write report.txt in: " + out_dir);
  char buf[256];
  rep << "three-regime comparison report (wigsim " << kVersion << ")\n";
  std::snprintf(buf, sizeof buf, "D0 = %.17g, t_final = %.17g, eta = %.17g\n\n", d0,
                config.t_final(), eta);
  rep << buf;
  std::snprintf(buf, sizeof buf,
                "d_iso (quantum D=0 vs classical D=0):  L2 = %.10g, L1 = %.10g\n", oc.d_iso_l2,
                oc.d_iso_l1);
  rep << buf;
  std::snprintf(buf, sizeof buf,
                "d_dec (quantum D=D0 vs classical D=D0): L2 = %.10g, L1 = %.10g\n", oc.d_dec_l2,
                oc.d_dec_l1);
  rep << buf;
  if (oc.d_iso_l2 > 0.0) {
    std::snprintf(buf, sizeof buf, "suppression ratio d_dec/d_iso (L2) = %.10g\n\n",
                  oc.d_dec_l2 / oc.d_iso_l2);
    rep << buf;
  } else {
    rep << "suppression ratio d_dec/d_iso (L2) = undefined (d_iso = 0)\n\n";
  }
  std::snprintf(buf, sizeof buf,
                "final negativity: quantum_iso = %.10g, quantum_dec = %.10g,\n"
                "                  classical_dec = %.10g, classical_iso = %.10g\n\n",
                oc.neg_q_iso, oc.neg_q_dec, oc.neg_c_dec, oc.neg_c_iso);
  rep << buf;
  const auto print_break = [&](const char* tag, const std::optional<double>& tb) {
    if (tb)
      std::snprintf(buf, sizeof buf, "break_time %s = %.10g\n", tag, *tb);
    else
      std::snprintf(buf, sizeof buf, "break_time %s = none (never exceeded threshold)\n", tag);
    rep << buf;
  };
  print_break("isolated ", oc.break_iso);
  print_break("decohered", oc.break_dec);
  std::snprintf(buf, sizeof buf,
                "\nscreening verdict: unconditional_relevance = %s, conditional_irrelevance = "
                "%s, emergent = %s\n",
                oc.verdict.unconditional_relevance ? "true" : "false",
                oc.verdict.conditional_irrelevance ? "true" : "false",
                oc.verdict.emergent ? "true" : "false");
  rep << buf;
  std::snprintf(buf, sizeof buf,
                "evidence: d_iso = %.10g, d_dec = %.10g, theta_high = %.10g, theta_low = "
                "%.10g\n\n",
                oc.verdict.evidence.d_iso, oc.verdict.evidence.d_dec,
                oc.verdict.evidence.theta_high, oc.verdict.evidence.theta_low);
  rep << buf;
  print_negativity_series(rep, "quantum_iso", r_q_iso.diagnostics);
  print_negativity_series(rep, "quantum_dec", r_q_dec.diagnostics);
  print_negativity_series(rep, "classical_dec", r_c_dec.diagnostics);
  print_negativity_series(rep, "classical_iso", r_c_iso.diagnostics);
  return oc;
}

}  // namespace

int cmd_run(const RunConfig& config, const std::string& out_dir, int n_threads) {
  emit_config_warnings(config);
  execute_run(config, out_dir, n_threads);
  return 0;
}

int cmd_compare(const RunConfig& config, const std::string& out_dir, double eta, int n_threads) {
  emit_config_warnings(config);
  run_compare(config, out_dir, eta, n_threads);
  return 0;
}

int cmd_sweep(const RunConfig& base, const std::string& dotted_key,
              const std::vector<double>& values, const std::string& out_dir, double eta,
              int n_threads) {
  if (values.empty()) throw ConfigError("sweep: need at least one value");
  emit_config_warnings(base);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec && !fs::is_directory(out_dir))
    throw ConfigError("cannot create output directory: " + out_dir);

  std::string key_dir = dotted_key;
  for (char& ch : key_dir)
    if (ch == '.') ch = '_';

  std::ofstream agg(join(out_dir, "aggregate.csv"), std::ios::binary);
  if (!agg) throw ConfigError("cannot write aggregate.csv in: " + out_dir);
  agg << "value,d_iso,d_dec,negativity\n";
  for (double v : values) {
    const RunConfig cfg = with_override(base, dotted_key, v);
    char sub[96];
    std::snprintf(sub, sizeof sub, "%s_%g", key_dir.c_str(), v);
    const CompareOutcome oc = run_compare(cfg, join(out_dir, sub), eta, n_threads);
    char row[160];
    std::snprintf(row, sizeof row, "%.17g,%.17g,%.17g,%.17g\n", v, oc.d_iso_l2, oc.d_dec_l2,
                  oc.neg_q_dec);
    agg << row;
  }
  if (!agg) throw ConfigError("sweep: aggregate.csv write failed");
  return 0;
}

int cmd_info(const RunConfig* config) {
  std::printf("wigsim %s\n", kVersion);
  if (!config) return 0;
  const double period = driving_period(config->params);
  std::printf("\nresolved configuration:\n%s\n", serialize_config(*config).c_str());
  std::printf("derived quantities:\n");
  std::printf("  driving period T     = %.17g\n", period);
  std::printf("  t_final              = %.17g (%.17g periods)\n", config->t_final(),
              config->t_final() / period);
  std::printf("  steps per period     = %.17g\n", period / config->dt);
  std::printf("  resolved diffusion D = %.17g\n", config->diffusion.resolve());
  std::printf("  grid spacing dx, dp  = %.17g, %.17g\n", config->grid.dx, config->grid.dp);
  return 0;
}

}  // namespace wigsim
