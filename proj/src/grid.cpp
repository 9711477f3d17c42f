#include "wigsim/grid.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "wigsim/errors.hpp"

namespace wigsim {

namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

/// Upper tail of the standard normal, Q(z) = P(Z > z).
double normal_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace

PhaseSpaceGrid make_grid(std::size_t nx, std::size_t np_, double x_min, double x_max,
                         double p_min, double p_max) {
  if (!power_of_two(nx) || nx < 8)
    throw ConfigError("grid nx must be a power of two >= 8, got " + std::to_string(nx));
  if (!power_of_two(np_) || np_ < 8)
    throw ConfigError("grid np must be a power of two >= 8, got " + std::to_string(np_));
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
    throw ConfigError(fmt("grid x bounds degenerate: x_min=%g x_max=%g", x_min, x_max));
  if (!(p_max > p_min) || !std::isfinite(p_min) || !std::isfinite(p_max))
    throw ConfigError(fmt("grid p bounds degenerate: p_min=%g p_max=%g", p_min, p_max));
  PhaseSpaceGrid g;
  g.nx = nx;
  g.np_ = np_;
  g.x_min = x_min;
  g.x_max = x_max;
  g.p_min = p_min;
  g.p_max = p_max;
  g.dx = (x_max - x_min) / static_cast<double>(nx);
  g.dp = (p_max - p_min) / static_cast<double>(np_);
  if (!(g.dx > 0.0) || !std::isfinite(g.dx) || !(g.dp > 0.0) || !std::isfinite(g.dp))
    throw ConfigError("grid spacing is not strictly positive and finite");
  return g;
}

void validate_minimum_uncertainty(const GaussianSpec& spec, double hbar) {
  if (!spec.minimum_uncertainty) return;
  const double target = 0.5 * hbar;
  if (std::abs(spec.sigma_x * spec.sigma_p - target) > 1e-12 * target)
    throw ConfigError(fmt("minimum_uncertainty violated: sigma_x*sigma_p=%.17g, hbar/2=%.17g",
                          spec.sigma_x * spec.sigma_p, target));
}

WignerField init_gaussian(const PhaseSpaceGrid& grid, const GaussianSpec& spec) {
  if (!(spec.sigma_x > 0.0) || !(spec.sigma_p > 0.0))
    throw std::invalid_argument("init_gaussian: sigmas must be positive");

  // Analytic tail bound: Gaussian mass outside the domain, per axis.
  const double tail_x = normal_tail((grid.x_max - spec.x0) / spec.sigma_x) +
                        normal_tail((spec.x0 - grid.x_min) / spec.sigma_x);
  const double tail_p = normal_tail((grid.p_max - spec.p0) / spec.sigma_p) +
                        normal_tail((spec.p0 - grid.p_min) / spec.sigma_p);
  if (tail_x + tail_p >= 1e-8) {
    const bool x_worse = tail_x >= tail_p;
    throw ConfigError(std::string("domain too small along ") + (x_worse ? "x" : "p") +
                      fmt(": Gaussian tail mass outside the grid is %g (limit 1e-8)",
                          x_worse ? tail_x : tail_p));
  }

  WignerField field;
  field.grid = grid;
  field.time = 0.0;
  field.values.resize(grid.size());
  const double norm = 1.0 / (2.0 * M_PI * spec.sigma_x * spec.sigma_p);
  for (std::size_t i = 0; i < grid.nx; ++i) {
    const double ex = (grid.x(i) - spec.x0) / spec.sigma_x;
    for (std::size_t j = 0; j < grid.np_; ++j) {
      const double ep = (grid.p(j) - spec.p0) / spec.sigma_p;
      field.at(i, j) = norm * std::exp(-0.5 * (ex * ex + ep * ep));
    }
  }
  // Discrete renormalization: mass becomes exactly 1 up to one rounding.
  const double m = mass(field);
  const double inv = 1.0 / m;
  for (double& v : field.values) v *= inv;
  return field;
}

double mass(const WignerField& field) {
  // Flat row-major accumulation; moment() mirrors this order exactly so that
  // moment(f, 0, 0) == mass(f) bitwise.
  double s = 0.0;
  for (double v : field.values) s += v;
  return s * field.grid.dx * field.grid.dp;
}

double moment(const WignerField& field, unsigned order_x, unsigned order_p) {
  const double m = mass(field);
  if (std::abs(m - 1.0) > 1e-3)
    throw std::invalid_argument(fmt("moment: field mass %.6g is not within 1e-3 of 1", m));
  const PhaseSpaceGrid& g = field.grid;
  std::vector<double> pw(g.np_, 1.0);
  for (std::size_t j = 0; j < g.np_; ++j)
    for (unsigned k = 0; k < order_p; ++k) pw[j] *= g.p(j);
  double s = 0.0;
  for (std::size_t i = 0; i < g.nx; ++i) {
    double xw = 1.0;
    for (unsigned k = 0; k < order_x; ++k) xw *= g.x(i);
    for (std::size_t j = 0; j < g.np_; ++j) s += field.at(i, j) * xw * pw[j];
  }
  return s * g.dx * g.dp;
}

std::vector<double> marginal(const WignerField& field, Axis axis) {
  const PhaseSpaceGrid& g = field.grid;
  if (axis == Axis::position) {
    std::vector<double> out(g.nx, 0.0);
    for (std::size_t i = 0; i < g.nx; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < g.np_; ++j) s += field.at(i, j);
      out[i] = s * g.dp;
    }
    return out;
  }
  std::vector<double> out(g.np_, 0.0);
  for (std::size_t j = 0; j < g.np_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.nx; ++i) s += field.at(i, j);
    out[j] = s * g.dx;
  }
  return out;
}

}  // namespace wigsim
