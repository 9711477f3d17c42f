#pragma once

namespace wigsim {

/// Physical constants of the driven anharmonic oscillator
///   V(x, t) = B x^4 - A x^2 + Lambda x cos(omega t)
/// plus hbar. All quantities are in dimensionless model units.
struct SystemParams {
  double m = 1.0;        ///< mass, > 0
  double A = 0.0;        ///< quadratic well-inversion coefficient
  double B = 0.0;        ///< quartic confinement, >= 0
  double lambda_ = 0.0;  ///< driving amplitude Lambda (sign convention: +Lambda x cos)
  double omega = 1.0;    ///< driving frequency, > 0
  double hbar = 1.0;     ///< Planck constant, > 0; no hidden default in configs

  /// Throws std::invalid_argument when m, omega, hbar are not positive or
  /// B is negative.
  void validate() const;

  /// True when V is unbounded below (B = 0 with A > 0); the CLI warns on
  /// such production configs.
  bool unbounded_below() const { return B == 0.0 && A > 0.0; }
};

/// Environmental momentum-diffusion strength: either D given directly or
/// derived from relaxation rate gamma, environment mass M and k_B*T as
/// D = 2 * gamma * M * kbt.
class DiffusionSpec {
 public:
  static DiffusionSpec direct(double d);
  static DiffusionSpec derived(double gamma, double mass_env, double kbt);

  /// Resolved diffusion coefficient D >= 0.
  double resolve() const;

  bool is_derived() const { return derived_; }
  double gamma() const { return gamma_; }
  double mass_env() const { return mass_env_; }
  double kbt() const { return kbt_; }

 private:
  DiffusionSpec() = default;
  bool derived_ = false;
  double d_ = 0.0;
  double gamma_ = 0.0, mass_env_ = 0.0, kbt_ = 0.0;
};

/// V(x, t) = B x^4 - A x^2 + Lambda x cos(omega t).
double potential(double x, double t, const SystemParams& params);

/// dV/dx = 4 B x^3 - 2 A x + Lambda cos(omega t).
double force_gradient(double x, double t, const SystemParams& params);

/// d^3V/dx^3 = 24 B x; time-independent because the drive is linear in x.
double third_derivative(double x, const SystemParams& params);

/// Driving period T = 2 pi / omega.
double driving_period(const SystemParams& params);

}  // namespace wigsim
