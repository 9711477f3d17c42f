#pragma once

#include <cstddef>
#include <vector>

namespace wigsim {

/// Uniform rectangular discretization of phase space (x, p) with periodic
/// spectral topology. Cells are centered: x_j = x_min + (j + 1/2) dx.
struct PhaseSpaceGrid {
  std::size_t nx = 0;   ///< points along x; power of two, >= 8
  std::size_t np_ = 0;  ///< points along p; power of two, >= 8
  double x_min = 0.0, x_max = 0.0;
  double p_min = 0.0, p_max = 0.0;
  double dx = 0.0, dp = 0.0;

  double x(std::size_t i) const { return x_min + (static_cast<double>(i) + 0.5) * dx; }
  double p(std::size_t j) const { return p_min + (static_cast<double>(j) + 0.5) * dp; }
  std::size_t size() const { return nx * np_; }

  bool operator==(const PhaseSpaceGrid&) const = default;
};

/// Validating constructor for PhaseSpaceGrid.
/// Throws ConfigError on non-power-of-two sizes (or < 8) and degenerate bounds.
PhaseSpaceGrid make_grid(std::size_t nx, std::size_t np_, double x_min, double x_max,
                         double p_min, double p_max);

/// Real-valued distribution f(x, p) on a grid: the quantum quasiprobability
/// f_W or the classical density f_c. Storage is row-major with x as the slow
/// index: values[i * np_ + j] = f(x_i, p_j).
struct WignerField {
  PhaseSpaceGrid grid;
  std::vector<double> values;
  double time = 0.0;

  double& at(std::size_t i, std::size_t j) { return values[i * grid.np_ + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * grid.np_ + j]; }
};

/// Gaussian initial condition (standard coherent-state form).
struct GaussianSpec {
  double x0 = 0.0, p0 = 0.0;
  double sigma_x = 1.0, sigma_p = 1.0;
  bool minimum_uncertainty = false;  ///< if set, sigma_x*sigma_p must equal hbar/2
};

/// Checks the minimum-uncertainty invariant sigma_x*sigma_p = hbar/2 within
/// 1e-12 (relative to hbar/2). Throws ConfigError if the spec is flagged and
/// the product is off. No-op when the flag is not set.
void validate_minimum_uncertainty(const GaussianSpec& spec, double hbar);

/// Initializes f(x,p) = exp(-(x-x0)^2/2sx^2 - (p-p0)^2/2sp^2) / (2 pi sx sp),
/// then renormalizes discretely so mass(field) is exactly 1; time = 0.
/// Throws ConfigError (naming the offending axis) if the analytic Gaussian
/// tail mass outside the domain reaches 1e-8, and std::invalid_argument on
/// non-positive sigmas.
WignerField init_gaussian(const PhaseSpaceGrid& grid, const GaussianSpec& spec);

/// Midpoint-quadrature mass: sum(values) * dx * dp. The sum is accumulated
/// in row-major index order; every other quadrature in the project uses the
/// same rule and order so linear identities hold exactly in floating point.
double mass(const WignerField& field);

/// Midpoint-quadrature moment <x^a p^b> = sum f(x,p) x^a p^b dx dp.
/// Requires |mass - 1| <= 1e-3; throws std::invalid_argument otherwise.
double moment(const WignerField& field, unsigned order_x, unsigned order_p);

enum class Axis { position, momentum };

/// Integrates out the other axis; returns the 1-D density along `axis`
/// (length nx for position, np_ for momentum). sum(marginal)*spacing equals
/// mass(field) up to roundoff.
std::vector<double> marginal(const WignerField& field, Axis axis);

}  // namespace wigsim
