#include "wigsim/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace wigsim {

void RunDiagnostics::push(double t, double mx, double mp, double vx, double vp, double neg,
                          double m) {
  if (!times.empty() && !(t > times.back()))
    throw std::invalid_argument("RunDiagnostics::push: times must be strictly increasing");
  times.push_back(t);
  mean_x.push_back(mx);
  mean_p.push_back(mp);
  var_x.push_back(vx);
  var_p.push_back(vp);
  negativity.push_back(neg);
  mass_series.push_back(m);
}

double negativity_volume(const WignerField& field) {
  // integral |f| - integral f, same quadrature and accumulation order as mass.
  // Defined for any field, normalized or not (e.g. intermediate states).
  double s = 0.0;
  for (double v : field.values) s += std::abs(v);
  return s * field.grid.dx * field.grid.dp - mass(field);
}

double field_distance(const WignerField& a, const WignerField& b, Metric metric) {
  if (!(a.grid == b.grid))
    throw std::invalid_argument("field_distance: fields live on different grids");
  const double cell = a.grid.dx * a.grid.dp;
  double s = 0.0;
  if (metric == Metric::L1) {
    for (std::size_t k = 0; k < a.values.size(); ++k) s += std::abs(a.values[k] - b.values[k]);
    return s * cell;
  }
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    const double d = a.values[k] - b.values[k];
    s += d * d;
  }
  return std::sqrt(s * cell);
}

std::optional<double> break_time(const RunDiagnostics& diag_q, const RunDiagnostics& diag_c,
                                 double eta) {
  if (diag_q.size() != diag_c.size())
    throw std::invalid_argument("break_time: diagnostics series have different lengths");
  for (std::size_t k = 0; k < diag_q.size(); ++k) {
    if (diag_q.times[k] != diag_c.times[k])
      throw std::invalid_argument("break_time: diagnostics sampled at different times");
    if (std::abs(diag_q.mean_x[k] - diag_c.mean_x[k]) >
        eta * std::sqrt(std::max(diag_c.var_x[k], 0.0)))
      return diag_q.times[k];
  }
  return std::nullopt;
}

ScreeningVerdict screening_report(const WignerField& f_q_iso, const WignerField& f_c_iso,
                                  const WignerField& f_q_dec, const WignerField& f_c_dec,
                                  double theta_high, double theta_low) {
  if (!(theta_high > theta_low) || !(theta_low > 0.0))
    throw std::invalid_argument("screening_report: need theta_high > theta_low > 0");
  if (!(f_q_iso.grid == f_c_iso.grid) || !(f_q_iso.grid == f_q_dec.grid) ||
      !(f_q_iso.grid == f_c_dec.grid))
    throw std::invalid_argument("screening_report: fields live on different grids");
  if (f_q_iso.time != f_c_iso.time || f_q_iso.time != f_q_dec.time ||
      f_q_iso.time != f_c_dec.time)
    throw std::invalid_argument("screening_report: fields captured at different times");

  ScreeningVerdict v;
  v.evidence.d_iso = field_distance(f_q_iso, f_c_iso, Metric::L2);
  v.evidence.d_dec = field_distance(f_q_dec, f_c_dec, Metric::L2);
  v.evidence.theta_high = theta_high;
  v.evidence.theta_low = theta_low;
  v.unconditional_relevance = v.evidence.d_iso > theta_high;
  v.conditional_irrelevance = v.evidence.d_dec < theta_low;
  v.emergent = v.unconditional_relevance && v.conditional_irrelevance;
  return v;
}

}  // namespace wigsim
