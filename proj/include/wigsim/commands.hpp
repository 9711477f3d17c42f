#pragma once

#include <string>
#include <vector>

#include "wigsim/config.hpp"

namespace wigsim {

/// Single run: evolve the configured mode/diffusion to t_final. Writes into
/// out_dir: manifest.cfg (canonical config + provenance comments), final
/// field dump, snapshot dumps at integer multiples of the driving period,
/// diagnostics.csv, and heatmaps, subject to output format toggles.
/// Returns the process exit code (0 ok; throws map to 1/2 in the CLI).
int cmd_run(const RunConfig& config, const std::string& out_dir, int n_threads = 1);

/// Three-regime comparison (the decoherence experiment): quantum D=0,
/// quantum D=D0, classical D=D0, plus the classical D=0 leg needed as the
/// isolated reference of the screening verdict. Requires decoherence D0 > 0.
/// Emits per-leg run outputs in subdirectories, three final-state heatmap
/// panels plus a composite, and report.txt with d_iso/d_dec (L1 and L2),
/// negativity series, break times (threshold eta), and the verdict.
int cmd_compare(const RunConfig& config, const std::string& out_dir, double eta = 0.1,
                int n_threads = 1);

/// One cmd_compare per value of `dotted_key` (e.g. "decoherence.d"), plus
/// aggregate.csv rows (value, d_iso, d_dec, negativity) where distances are
/// final-state L2 and negativity is the final decohered quantum value.
int cmd_sweep(const RunConfig& base, const std::string& dotted_key,
              const std::vector<double>& values, const std::string& out_dir, double eta = 0.1,
              int n_threads = 1);

/// Prints version and, when a config is supplied, the resolved canonical
/// configuration and derived quantities (driving period, resolved D, ...).
int cmd_info(const RunConfig* config);

}  // namespace wigsim
