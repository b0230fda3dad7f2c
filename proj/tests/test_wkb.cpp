#include <doctest.h>

#include <cmath>
#include <complex>

#include <thermophase/errors.hpp>
#include <thermophase/wkb.hpp>

using namespace thermophase;

namespace {

wkb::Problem free_particle(int n, double len, double eps) {
  wkb::Problem p;
  p.grid = Eigen::ArrayXd::LinSpaced(n, 0.0, len);
  p.potential = Eigen::ArrayXd::Zero(n);
  p.epsilon = eps;
  p.amplitude = Eigen::ArrayXd::Ones(n);
  return p;
}

wkb::Problem linear_ramp(int n, double len, double eps) {
  wkb::Problem p;
  p.grid = Eigen::ArrayXd::LinSpaced(n, 0.0, len);
  p.potential = p.grid;
  p.epsilon = eps;
  p.amplitude = Eigen::ArrayXd::Ones(n);
  return p;
}

}  // namespace

TEST_CASE("plane wave: action is the coordinate, corrections vanish") {
  wkb::Problem p = free_particle(101, 1.0, 1.0);
  wkb::Solution sol = wkb::solve(p, 2, 1.0);
  for (int i = 0; i < p.grid.size(); ++i) {
    CHECK(sol.s0(i) == doctest::Approx(p.grid(i)).epsilon(1e-14));
    CHECK(std::abs(sol.s1(i)) < 1e-12);
    CHECK(std::abs(sol.s2(i)) < 1e-12);
  }
  // residual is round-off amplified by the second-derivative stencils
  CHECK(sol.residual_norm < 5e-8);

  Eigen::ArrayXcd phi = wkb::assemble_wavefunction(p, sol, 1.0);
  for (int i = 0; i < p.grid.size(); ++i) {
    CHECK(phi(i).real() == doctest::Approx(std::cos(p.grid(i))).epsilon(1e-10));
    CHECK(phi(i).imag() == doctest::Approx(std::sin(p.grid(i))).epsilon(1e-10));
    CHECK(std::abs(phi(i)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("linear ramp reproduces the closed-form expansion") {
  const int n = 4001;
  wkb::Problem p = linear_ramp(n, 0.8, 1.0);
  wkb::Solution sol = wkb::solve(p, 2, 1e-2);

  double w0 = 0.0, w1 = 0.0, w2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = p.grid(i);
    const double s0 = (2.0 / 3.0) * (1.0 - std::pow(1.0 - r, 1.5));
    const double s1 = -0.25 * std::log(1.0 - r);
    const double s2 = -(5.0 / 48.0) * (std::pow(1.0 - r, -1.5) - 1.0);
    w0 = std::max(w0, std::abs(sol.s0(i) - s0));
    w1 = std::max(w1, std::abs(sol.s1(i) - s1));
    w2 = std::max(w2, std::abs(sol.s2(i) - s2));
  }
  CHECK(w0 < 1e-9);
  CHECK(w1 < 1e-6);
  CHECK(w2 < 1e-4);
}

TEST_CASE("action grid refinement gains fourth-order accuracy") {
  auto err = [](int n) {
    wkb::Problem p = linear_ramp(n, 0.9, 1.0);
    Eigen::ArrayXd s0 = wkb::solve_s0(p);
    double w = 0.0;
    for (int i = 0; i < n; ++i) {
      const double exact = (2.0 / 3.0) * (1.0 - std::pow(1.0 - p.grid(i), 1.5));
      w = std::max(w, std::abs(s0(i) - exact));
    }
    return w;
  };
  CHECK(err(51) / err(101) > 8.0);
}

TEST_CASE("residual shrinks faster with each kept order") {
  const int n = 2001;
  wkb::Problem p = linear_ramp(n, 0.8, 1.0);
  wkb::Solution sol0 = wkb::solve(p, 0, 1.0);
  wkb::Solution sol1 = wkb::solve(p, 1, 1.0);

  double prev0 = -1.0, prev1 = -1.0;
  for (double hbar : {1e-1, 1e-2, 1e-3}) {
    const double r0 = wkb::residual_norm(p, sol0, hbar);
    const double r1 = wkb::residual_norm(p, sol1, hbar);
    CHECK(r1 < r0);
    if (prev0 > 0.0) {
      // each factor-10 drop in hbar buys roughly 10x at order 0, 100x at 1
      CHECK(r0 < 0.3 * prev0);
      CHECK(r1 < 0.05 * prev1);
    }
    prev0 = r0;
    prev1 = r1;
  }
}

TEST_CASE("classically forbidden nodes are refused") {
  wkb::Problem p = free_particle(51, 1.0, 1.0);
  p.potential = Eigen::ArrayXd::Constant(51, 2.0);
  bool threw = false;
  try {
    (void)wkb::solve_s0(p);
  } catch (const ForbiddenRegionError& e) {
    threw = true;
    CHECK(e.v_at == doctest::Approx(2.0));
    CHECK(e.epsilon == doctest::Approx(1.0));
  }
  CHECK(threw);

  // energy exactly at the potential on the last node is also forbidden
  wkb::Problem q = linear_ramp(101, 1.0, 1.0);
  CHECK_THROWS_AS((void)wkb::solve_s0(q), ForbiddenRegionError);
}

TEST_CASE("turning-point singularity in the transport equation is refused") {
  wkb::Problem p = free_particle(51, 1.0, 1.0);
  Eigen::ArrayXd flat = Eigen::ArrayXd::Zero(51);  // grad s0 = 0 everywhere
  bool threw = false;
  try {
    (void)wkb::solve_s1(p, flat);
  } catch (const DomainError& e) {
    threw = true;
    CHECK(std::string(e.what()).find("turning") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("transport correction matches the momentum rescaling law") {
  // for constant A, s1 = -1/2 ln|grad s0| + 1/2 ln|grad s0(0)|
  const int n = 3001;
  wkb::Problem p;
  p.grid = Eigen::ArrayXd::LinSpaced(n, 0.0, 2.0);
  p.potential = 0.3 * (1.2 * p.grid).sin();
  p.epsilon = 2.0;
  p.amplitude = Eigen::ArrayXd::Ones(n);
  Eigen::ArrayXd s0 = wkb::solve_s0(p);
  Eigen::ArrayXd s1 = wkb::solve_s1(p, s0);
  auto mom = [&](int i) { return std::sqrt(p.epsilon - p.potential(i)); };
  for (int i = 0; i < n; i += 250) {
    const double expected = -0.5 * std::log(mom(i)) + 0.5 * std::log(mom(0));
    CHECK(s1(i) == doctest::Approx(expected).epsilon(1e-6));
  }
  // action never decreases along the path
  for (int i = 1; i < n; ++i) CHECK(s0(i) >= s0(i - 1));
}

TEST_CASE("assembled magnitude follows the transport factor") {
  const int n = 1201;
  wkb::Problem p = linear_ramp(n, 0.7, 1.0);
  p.amplitude = 1.0 + 0.1 * p.grid;  // non-trivial prefactor
  wkb::Solution sol = wkb::solve(p, 2, 0.05);
  Eigen::ArrayXcd phi = wkb::assemble_wavefunction(p, sol, 0.05);
  for (int i = 0; i < n; i += 200) {
    const double expected = p.amplitude(i) * std::exp(sol.s1(i));
    CHECK(std::abs(phi(i)) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("driver truncation and validation") {
  wkb::Problem p = free_particle(101, 1.0, 1.0);
  wkb::Solution sol1 = wkb::solve(p, 1, 0.1);
  CHECK(sol1.orders == 1);
  for (int i = 0; i < p.grid.size(); ++i) CHECK(sol1.s2(i) == 0.0);
  CHECK(sol1.residual_norm ==
        doctest::Approx(wkb::residual_norm(p, sol1, 0.1)).epsilon(1e-15));

  CHECK_THROWS_AS((void)wkb::solve(p, 3, 0.1), DomainError);
  CHECK_THROWS_AS((void)wkb::solve(p, -1, 0.1), DomainError);
  CHECK_THROWS_AS((void)wkb::solve(p, 1, 0.0), DomainError);
}

TEST_CASE("problem validation") {
  wkb::Problem p = free_particle(2, 1.0, 1.0);  // too few nodes
  CHECK_THROWS_AS(wkb::check_problem(p), DomainError);

  p = free_particle(51, 1.0, 1.0);
  p.grid(10) = p.grid(9);  // not strictly increasing
  CHECK_THROWS_AS(wkb::check_problem(p), DomainError);

  p = free_particle(51, 1.0, 1.0);
  p.amplitude(3) = 0.0;
  CHECK_THROWS_AS(wkb::check_problem(p), DomainError);

  p = free_particle(51, 1.0, 1.0);
  p.potential = Eigen::ArrayXd::Zero(50);
  CHECK_THROWS_AS(wkb::check_problem(p), DomainError);
}
