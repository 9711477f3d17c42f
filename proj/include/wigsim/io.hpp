#pragma once

#include <string>

#include "wigsim/diagnostics.hpp"
#include "wigsim/grid.hpp"

namespace wigsim {

/// Binary grid dump, little-endian:
///   magic "WIGF" (4 bytes), version u16 = 1, nx u32, np u32,
///   x_min/x_max/p_min/p_max f64, time f64,
///   then nx*np f64 values, row-major with x as the slow index.
void write_dump(const WignerField& field, const std::string& path);

/// Reads a dump; rejects wrong magic/version/size with ConfigError.
WignerField read_dump(const std::string& path);

/// 8-bit binary PGM (P5) heatmap: linear map [min, max] -> [0, 255], with the
/// data range recorded in a comment line. A degenerate range (max == min)
/// maps the whole image to mid-gray 128. Orientation: width nx, height np_;
/// x increases rightward, p increases upward (top image row is p_max).
void write_heatmap(const WignerField& field, const std::string& path);

/// Diagnostics CSV with fixed columns:
///   time,mean_x,mean_p,var_x,var_p,negativity,mass
/// printed with round-trip (%.17g) precision.
void write_diagnostics_csv(const RunDiagnostics& diag, const std::string& path);

/// Parses a CSV produced by write_diagnostics_csv (used by tests to verify
/// the round trip).
RunDiagnostics read_diagnostics_csv(const std::string& path);

}  // namespace wigsim
