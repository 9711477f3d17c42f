#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "wigsim/dynamics.hpp"

using namespace wigsim;

namespace {

SystemParams fig1_params() {
  SystemParams p;
  p.m = 1.0;
  p.A = 10.0;
  p.B = 0.5;
  p.lambda_ = 10.0;
  p.omega = 6.07;
  p.hbar = 0.16;
  return p;
}

}  // namespace

TEST_CASE("potential at reference points") {
  const SystemParams p = fig1_params();
  // B - A + Lambda = 0.5 - 10 + 10 at x=1, t=0.
  CHECK(potential(1.0, 0.0, p) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(potential(0.0, 0.37, p) == 0.0);
  // Drive term flips sign at half period.
  const double T = driving_period(p);
  CHECK(potential(1.0, 0.5 * T, p) ==
        doctest::Approx(0.5 - 10.0 + 10.0 - 2.0 * 10.0).epsilon(1e-12));
}

TEST_CASE("force_gradient matches a centered finite difference of the potential") {
  const SystemParams p = fig1_params();
  std::mt19937 rng(2026u);
  std::uniform_real_distribution<double> ux(-5.0, 5.0);
  std::uniform_real_distribution<double> ut(0.0, 4.0);
  const double h = 1e-5;
  for (int k = 0; k < 1000; ++k) {
    const double x = ux(rng);
    const double t = ut(rng);
    const double fd = (potential(x + h, t, p) - potential(x - h, t, p)) / (2.0 * h);
    const double an = force_gradient(x, t, p);
    const double scale = std::max({std::abs(an), std::abs(fd), 1.0});
    CHECK(std::abs(an - fd) <= 1e-6 * scale);
  }
}

TEST_CASE("third_derivative is 24 B x and time-independent") {
  const SystemParams p = fig1_params();
  CHECK(third_derivative(2.0, p) == 24.0 * 0.5 * 2.0);
  CHECK(third_derivative(0.0, p) == 0.0);
  CHECK(third_derivative(-1.5, p) == doctest::Approx(-18.0).epsilon(1e-14));
  SystemParams q = p;
  q.B = 0.0;
  CHECK(third_derivative(3.0, q) == 0.0);
}

TEST_CASE("driving_period") {
  const SystemParams p = fig1_params();
  CHECK(driving_period(p) == doctest::Approx(2.0 * M_PI / 6.07).epsilon(1e-15));
}

TEST_CASE("SystemParams::validate rejects bad constants") {
  SystemParams p = fig1_params();
  CHECK_NOTHROW(p.validate());
  SystemParams bad = p;
  bad.m = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.omega = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.hbar = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.B = -0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.A = std::nan("");
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("unbounded_below flags the dangerous corner of parameter space") {
  SystemParams p;
  p.A = 10.0;
  p.B = 0.0;
  CHECK(p.unbounded_below());
  p.B = 0.5;
  CHECK_FALSE(p.unbounded_below());
  p.B = 0.0;
  p.A = 0.0;
  CHECK_FALSE(p.unbounded_below());
  p.A = -0.5;  // ordinary harmonic well via the -A x^2 term
  CHECK_FALSE(p.unbounded_below());
}

TEST_CASE("DiffusionSpec direct and derived forms") {
  CHECK(DiffusionSpec::direct(0.025).resolve() == 0.025);
  CHECK(DiffusionSpec::direct(0.0).resolve() == 0.0);
  CHECK_FALSE(DiffusionSpec::direct(0.025).is_derived());

  const DiffusionSpec d = DiffusionSpec::derived(0.5, 2.0, 0.25);
  CHECK(d.is_derived());
  CHECK(d.resolve() == doctest::Approx(2.0 * 0.5 * 2.0 * 0.25).epsilon(1e-15));

  CHECK_THROWS_AS(DiffusionSpec::direct(-1e-3), std::invalid_argument);
  CHECK_THROWS_AS(DiffusionSpec::derived(0.0, 2.0, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(DiffusionSpec::derived(0.5, -2.0, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(DiffusionSpec::derived(0.5, 2.0, 0.0), std::invalid_argument);
}
