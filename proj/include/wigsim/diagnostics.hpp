#pragma once

#include <optional>
#include <vector>

#include "wigsim/grid.hpp"

namespace wigsim {

/// Time series of scalar diagnostics collected during a run.
/// All arrays have equal length; times are strictly increasing.
struct RunDiagnostics {
  std::vector<double> times;
  std::vector<double> mean_x, mean_p, var_x, var_p;
  std::vector<double> negativity;
  std::vector<double> mass_series;

  std::size_t size() const { return times.size(); }
  void push(double t, double mx, double mp, double vx, double vp, double neg, double m);
};

/// Screening-off verdict: the quantum contribution is unconditionally
/// relevant (isolated quantum and classical runs diverge) yet conditionally
/// irrelevant given decoherence (decohered runs agree).
struct ScreeningVerdict {
  bool unconditional_relevance = false;
  bool conditional_irrelevance = false;
  bool emergent = false;  ///< always the conjunction of the two flags
  struct Evidence {
    double d_iso = 0.0;
    double d_dec = 0.0;
    double theta_high = 0.0;
    double theta_low = 0.0;
  } evidence;
};

/// Interference proxy: integral |f| dx dp - mass(field); zero (up to
/// quadrature) iff f >= 0 everywhere. Uses the shared midpoint rule.
double negativity_volume(const WignerField& field);

enum class Metric { L1, L2 };

/// L1 = integral |a-b| dx dp; L2 = sqrt(integral (a-b)^2 dx dp). Distances
/// are taken on raw signed fields; throws std::invalid_argument on grid
/// mismatch.
double field_distance(const WignerField& a, const WignerField& b, Metric metric);

/// First sampled time with |<x>_q - <x>_c| > eta * sqrt(var_x_c); nullopt if
/// never exceeded. Throws std::invalid_argument when the two series were not
/// sampled at the same times.
std::optional<double> break_time(const RunDiagnostics& diag_q, const RunDiagnostics& diag_c,
                                 double eta);

/// Builds the verdict from the four final fields of runs identical except
/// (mode, D). d_iso/d_dec are L2 distances; relevance means d_iso >
/// theta_high, irrelevance means d_dec < theta_low. Requires theta_high >
/// theta_low > 0 and identical grids and times across the four fields.
ScreeningVerdict screening_report(const WignerField& f_q_iso, const WignerField& f_c_iso,
                                  const WignerField& f_q_dec, const WignerField& f_c_dec,
                                  double theta_high, double theta_low);

}  // namespace wigsim
