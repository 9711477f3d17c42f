#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wigsim/dynamics.hpp"
#include "wigsim/evolver.hpp"
#include "wigsim/grid.hpp"

namespace wigsim {

/// Output format toggles (config key: output.formats = dump,csv,pgm).
struct OutputFormats {
  bool dump = true;
  bool csv = true;
  bool pgm = true;
};

/// Fully parsed and validated run configuration. See README for the config
/// syntax; parse_config documents the validation rules.
struct RunConfig {
  PhaseSpaceGrid grid;
  SystemParams params;
  GaussianSpec init;
  EvolveMode mode = EvolveMode::quantum;
  double dt = 0.0;
  std::optional<double> t_final_periods;  ///< exactly one of these two is set
  std::optional<double> t_final_abs;
  std::size_t sample_every = 16;
  double boundary_mass_limit = 1e-6;
  DiffusionSpec diffusion = DiffusionSpec::direct(0.0);
  std::string output_dir = "out";
  OutputFormats formats;

  /// Resolved final time: t_final_periods * (2 pi / omega) or t_final_abs.
  double t_final() const;
  /// Evolver-facing view of this config.
  EvolverConfig evolver_config() const;
};

/// Parses sectioned key = value text (INI style: [section] headers, '#' or
/// ';' comments, blank lines ignored). Unknown sections or keys are hard
/// errors, as are missing required keys (hbar in particular has no default),
/// both-or-neither t_final forms, both-or-neither diffusion forms, and any
/// violated type invariant. Throws ConfigError with the offending key named.
RunConfig parse_config(const std::string& text);

/// Reads a file and parses it; file errors become ConfigError.
RunConfig load_config(const std::string& path);

/// Canonical serialization: a valid config file that parses back to the
/// identical RunConfig (all floats printed with up-to-17-digit round-trip
/// precision). Used as the body of run manifests.
std::string serialize_config(const RunConfig& config);

/// Applies `section.key = value` to a parsed config (used by sweep).
/// The key must name a single scalar numeric entry, e.g. "decoherence.d".
RunConfig with_override(const RunConfig& base, const std::string& dotted_key, double value);

}  // namespace wigsim
