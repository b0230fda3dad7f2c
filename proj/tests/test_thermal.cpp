#include <doctest.h>

#include <cmath>

#include <thermophase/config.hpp>
#include <thermophase/errors.hpp>
#include <thermophase/h2plus.hpp>
#include <thermophase/quadrature.hpp>
#include <thermophase/thermal.hpp>

using namespace thermophase;

TEST_CASE("calibration fixes the density from the reference point") {
  ModelConfig cfg;  // theta 100, t_ref 200, lambda_ref 1
  CalibrationLedger led = calibrate(cfg);
  CHECK(M_PI * led.n0 == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));

  cfg.theta_th = 1e-12;  // vanishing activation leaves the bare density
  CHECK(M_PI * calibrate(cfg).n0 == doctest::Approx(1.0).epsilon(1e-12));

  cfg.theta_th = 100.0;
  cfg.t_ref = 100.0;
  cfg.lambda_ref = 2.0;
  CHECK(M_PI * calibrate(cfg).n0 == doctest::Approx(8.0 * std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("temperature map returns the reference scale at the reference point") {
  for (double lref : {0.7, 1.0, 2.3}) {
    for (double th : {10.0, 77.0, 100.0}) {
      ModelConfig cfg;
      cfg.lambda_ref = lref;
      cfg.theta_th = th;
      CalibrationLedger led = calibrate(cfg);
      CHECK(lambda_of_t(led.t_ref, led).lambda == doctest::Approx(lref).epsilon(1e-14));
    }
  }
}

TEST_CASE("temperature map hand values and limits") {
  CalibrationLedger led = calibrate(ModelConfig{});
  // exponent (theta/3)(1/T - 1/t_ref)
  CHECK(lambda_of_t(100.0, led).lambda ==
        doctest::Approx(std::exp(1.0 / 6.0)).epsilon(1e-14));
  CHECK(lambda_of_t(300.0, led).lambda ==
        doctest::Approx(std::exp(-1.0 / 18.0)).epsilon(1e-14));
  // high temperature saturates at the cube root of the calibrated density
  CHECK(lambda_of_t(1e12, led).lambda ==
        doctest::Approx(std::cbrt(M_PI * led.n0)).epsilon(1e-9));
  // monotone decreasing
  double prev = 1e300;
  for (double t = 50.0; t <= 500.0; t += 25.0) {
    double lam = lambda_of_t(t, led).lambda;
    CHECK(lam < prev);
    prev = lam;
  }
}

TEST_CASE("temperature map rejects non-positive temperature") {
  CalibrationLedger led = calibrate(ModelConfig{});
  CHECK_THROWS_AS((void)lambda_of_t(0.0, led), DomainError);
  CHECK_THROWS_AS((void)lambda_of_t(-5.0, led), DomainError);
}

TEST_CASE("resolver dispatches on the configured mode") {
  ModelConfig cfg;
  cfg.fixed_lambda = 1.37;

  cfg.mode = LambdaMode::FixedLambda;
  ThermalState fixed = resolve_lambda(3.0, 250.0, cfg);
  CHECK(fixed.lambda == 1.37);
  CHECK(fixed.converged);

  cfg.mode = LambdaMode::FixedEpsilon;
  ThermalState eps = resolve_lambda(3.0, 250.0, cfg);
  CHECK(eps.lambda ==
        doctest::Approx(lambda_of_t(250.0, calibrate(cfg)).lambda).epsilon(1e-15));

  CHECK_THROWS_AS((void)resolve_lambda(3.0, -1.0, cfg), DomainError);

  cfg.mode = LambdaMode::SelfConsistent;
  CHECK_THROWS_AS((void)resolve_lambda(0.0, 250.0, cfg), DomainError);
}

TEST_CASE("self-consistent scale reproduces the reference at the reference point") {
  ModelConfig cfg;
  cfg.mode = LambdaMode::SelfConsistent;
  ThermalState st = resolve_lambda(2.5, cfg.t_ref, cfg);
  CHECK(st.converged);
  CHECK(std::abs(st.lambda - cfg.lambda_ref) < 1e-9);
}

namespace {

// independent root find of g(lambda) = lambda - map(lambda) by bisection,
// using the electronic energy (nuclear repulsion removed) as the rescaler
double sc_bisection_oracle(double t, double r_sep, const ModelConfig& cfg) {
  CalibrationLedger led = calibrate(cfg);
  auto e_elec = [&](double lam) {
    return parity_energy(Parity::Even, lam, r_sep) - 1.0 / r_sep;
  };
  const double e_ref = e_elec(cfg.lambda_ref);
  auto g = [&](double lam) {
    const double rho = e_elec(lam) / e_ref;
    const double ln_f =
        (std::log(M_PI * led.n0) + led.theta_th * rho / t) / 3.0;
    return lam - std::exp(ln_f);
  };
  double lo = 0.2, hi = 3.0;
  REQUIRE(g(lo) * g(hi) < 0.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (g(lo) * g(mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("self-consistent scale agrees with a bisection oracle") {
  ModelConfig cfg;
  cfg.mode = LambdaMode::SelfConsistent;
  for (double r : {1.5, 2.5, 4.0}) {
    for (double t : {100.0, 200.0, 300.0}) {
      ThermalState st = resolve_lambda(r, t, cfg);
      CHECK(st.converged);
      CHECK(st.lambda == doctest::Approx(sc_bisection_oracle(t, r, cfg)).epsilon(1e-8));

      // and it really is a fixed point of the damped map's target
      CalibrationLedger led = calibrate(cfg);
      const double e_ref = parity_energy(Parity::Even, cfg.lambda_ref, r) - 1.0 / r;
      const double rho =
          (parity_energy(Parity::Even, st.lambda, r) - 1.0 / r) / e_ref;
      const double f =
          std::exp((std::log(M_PI * led.n0) + led.theta_th * rho / t) / 3.0);
      CHECK(std::abs(st.lambda - f) < 1e-9);
    }
  }
}

TEST_CASE("self-consistent scale keeps the cold-runs-tighter ordering") {
  ModelConfig cfg;
  cfg.mode = LambdaMode::SelfConsistent;
  const double cold = resolve_lambda(2.5, 100.0, cfg).lambda;
  const double hot = resolve_lambda(2.5, 300.0, cfg).lambda;
  CHECK(cold > hot);
}

TEST_CASE("self-consistent iteration failure carries its history") {
  ModelConfig cfg;
  cfg.mode = LambdaMode::SelfConsistent;
  bool threw = false;
  try {
    // T so small the seed scale overflows and the map leaves the domain
    (void)resolve_lambda(2.5, 0.01, cfg);
  } catch (const ConvergenceError& e) {
    threw = true;
    CHECK(!e.history.empty());
  }
  CHECK(threw);
}

TEST_CASE("thermal amplitude on a uniform profile is the square-rooted density") {
  Eigen::ArrayXd r = Eigen::ArrayXd::LinSpaced(11, 0.0, 5.0);
  Eigen::ArrayXd t = Eigen::ArrayXd::Constant(11, 200.0);
  Eigen::ArrayXd a = boltzmann_amplitude(r, t, 0.0, 4.0);
  for (int i = 0; i < a.size(); ++i) CHECK(a(i) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("thermal amplitude decays where the profile is hotter for bound states") {
  Eigen::ArrayXd r = Eigen::ArrayXd::LinSpaced(41, 0.0, 2.0);
  Eigen::ArrayXd t = Eigen::ArrayXd::LinSpaced(41, 100.0, 300.0);
  Eigen::ArrayXd a = boltzmann_amplitude(r, t, -1e-3, 1.0);
  for (int i = 1; i < a.size(); ++i) CHECK(a(i) < a(i - 1));
}

TEST_CASE("thermal amplitude input guards") {
  Eigen::ArrayXd r = Eigen::ArrayXd::LinSpaced(5, 0.0, 1.0);
  Eigen::ArrayXd t = Eigen::ArrayXd::Constant(5, 100.0);

  Eigen::ArrayXd bad_t = t;
  bad_t(3) = 0.0;
  bool threw = false;
  try {
    (void)boltzmann_amplitude(r, bad_t, 0.0, 1.0);
  } catch (const DomainError& e) {
    threw = true;
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
  CHECK(threw);

  CHECK_THROWS_AS((void)boltzmann_amplitude(r, t, 0.0, 0.0), DomainError);
  Eigen::ArrayXd short_t = Eigen::ArrayXd::Constant(4, 100.0);
  CHECK_THROWS_AS((void)boltzmann_amplitude(r, short_t, 0.0, 1.0), DomainError);
  // exponent past the overflow guard
  CHECK_THROWS_AS((void)boltzmann_amplitude(r, t, -1.0, 1.0), DomainError);
}

TEST_CASE("normalized thermal amplitude integrates to one") {
  Eigen::ArrayXd r = Eigen::ArrayXd::LinSpaced(21, 0.0, 2.0);
  Eigen::ArrayXd t = Eigen::ArrayXd::Constant(21, 150.0);
  Eigen::ArrayXd a = boltzmann_amplitude_normalized(r, t, -0.01);
  // uniform profile: constant amplitude 1/sqrt(L)
  for (int i = 0; i < a.size(); ++i)
    CHECK(a(i) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));

  // non-uniform profile still normalizes
  Eigen::ArrayXd ramp = Eigen::ArrayXd::LinSpaced(21, 100.0, 400.0);
  Eigen::ArrayXd an = boltzmann_amplitude_normalized(r, ramp, -0.005);
  Eigen::ArrayXd mass = cumulative_simpson(r, (an * an).eval());
  CHECK(mass(mass.size() - 1) == doctest::Approx(1.0).epsilon(1e-12));

  // deep state that would overflow the raw form stays finite here
  Eigen::ArrayXd deep = boltzmann_amplitude_normalized(r, ramp, -1.0);
  CHECK(deep.allFinite());
  Eigen::ArrayXd dm = cumulative_simpson(r, (deep * deep).eval());
  CHECK(dm(dm.size() - 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normalized amplitude is invariant to energy shifts on uniform profiles") {
  Eigen::ArrayXd r = Eigen::ArrayXd::LinSpaced(15, 0.0, 3.0);
  Eigen::ArrayXd t = Eigen::ArrayXd::Constant(15, 200.0);
  Eigen::ArrayXd a0 = boltzmann_amplitude_normalized(r, t, 0.0);
  Eigen::ArrayXd a1 = boltzmann_amplitude_normalized(r, t, -0.5);
  for (int i = 0; i < a0.size(); ++i)
    CHECK(a0(i) == doctest::Approx(a1(i)).epsilon(1e-13));
}
