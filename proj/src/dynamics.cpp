#include "wigsim/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wigsim {

void SystemParams::validate() const {
  if (!(m > 0.0)) throw std::invalid_argument("SystemParams: m must be > 0");
  if (!(omega > 0.0)) throw std::invalid_argument("SystemParams: omega must be > 0");
  if (!(hbar > 0.0)) throw std::invalid_argument("SystemParams: hbar must be > 0");
  if (B < 0.0) throw std::invalid_argument("SystemParams: B must be >= 0");
  if (!std::isfinite(A) || !std::isfinite(B) || !std::isfinite(lambda_))
    throw std::invalid_argument("SystemParams: A, B, lambda must be finite");
}

DiffusionSpec DiffusionSpec::direct(double d) {
  if (!(d >= 0.0)) throw std::invalid_argument("DiffusionSpec: D must be >= 0");
  DiffusionSpec s;
  s.derived_ = false;
  s.d_ = d;
  return s;
}

DiffusionSpec DiffusionSpec::derived(double gamma, double mass_env, double kbt) {
  if (!(gamma > 0.0) || !(mass_env > 0.0) || !(kbt > 0.0))
    throw std::invalid_argument("DiffusionSpec: gamma, mass_env, kbt must be > 0");
  DiffusionSpec s;
  s.derived_ = true;
  s.gamma_ = gamma;
  s.mass_env_ = mass_env;
  s.kbt_ = kbt;
  return s;
}

double DiffusionSpec::resolve() const {
  return derived_ ? 2.0 * gamma_ * mass_env_ * kbt_ : d_;
}

double potential(double x, double t, const SystemParams& params) {
  const double x2 = x * x;
  return params.B * x2 * x2 - params.A * x2 + params.lambda_ * x * std::cos(params.omega * t);
}

double force_gradient(double x, double t, const SystemParams& params) {
  return 4.0 * params.B * x * x * x - 2.0 * params.A * x +
         params.lambda_ * std::cos(params.omega * t);
}

double third_derivative(double x, const SystemParams& params) { return 24.0 * params.B * x; }

double driving_period(const SystemParams& params) { return 2.0 * M_PI / params.omega; }

}  // namespace wigsim
