#include "thermophase/wkb.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "thermophase/errors.hpp"
#include "thermophase/finite_diff.hpp"
#include "thermophase/quadrature.hpp"

namespace thermophase::wkb {

namespace {

constexpr double forbidden_margin = 1e-12;
constexpr double turning_threshold = 1e-10;

Eigen::ArrayXd momentum_guarded(const Problem& p) {
  Eigen::ArrayXd k(p.grid.size());
  for (Eigen::Index i = 0; i < p.grid.size(); ++i) {
    const double gap = p.epsilon - p.potential[i];
    if (gap < forbidden_margin) {
      throw ForbiddenRegionError(
          "classically forbidden region at node " + std::to_string(i) +
              " (r = " + std::to_string(p.grid[i]) + ")",
          p.grid[i], p.potential[i], p.epsilon);
    }
    k[i] = std::sqrt(gap);
  }
  return k;
}

Eigen::ArrayXd grad_s0_guarded(const Problem& p, const Eigen::ArrayXd& s0) {
  Eigen::ArrayXd g = gradient(p.grid, s0);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (std::abs(g[i]) <= turning_threshold) {
      throw DomainError("turning-point singularity: |grad s0| vanishes at node " +
                        std::to_string(i));
    }
  }
  return g;
}

}  // namespace

void check_problem(const Problem& p) {
  const Eigen::Index n = p.grid.size();
  if (n < 3) throw DomainError("radial grid needs at least 3 nodes");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::isfinite(p.grid[i])) throw DomainError("radial grid has a non-finite node");
    if (i > 0 && !(p.grid[i] > p.grid[i - 1])) {
      throw DomainError("radial grid must be strictly increasing");
    }
  }
  if (p.potential.size() != n) throw DomainError("potential/grid size mismatch");
  if (p.amplitude.size() != n) throw DomainError("amplitude/grid size mismatch");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(p.amplitude[i] > 0.0)) {
      throw DomainError("amplitude must be positive everywhere (node " +
                        std::to_string(i) + ")");
    }
  }
}

Eigen::ArrayXd solve_s0(const Problem& p) {
  check_problem(p);
  return cumulative_simpson(p.grid, momentum_guarded(p));
}

Eigen::ArrayXd solve_s1(const Problem& p, const Eigen::ArrayXd& s0) {
  check_problem(p);
  if (s0.size() != p.grid.size()) throw DomainError("s0/grid size mismatch");
  const Eigen::ArrayXd g0 = grad_s0_guarded(p, s0);
  const Eigen::ArrayXd lap0 = second_derivative(p.grid, s0);
  const Eigen::ArrayXd ga = gradient(p.grid, p.amplitude);
  const Eigen::ArrayXd integrand =
      (-p.amplitude * lap0 - 2.0 * ga * g0) / (2.0 * p.amplitude * g0);
  return cumulative_simpson(p.grid, integrand);
}

Eigen::ArrayXd solve_s2(const Problem& p, const Eigen::ArrayXd& s0,
                        const Eigen::ArrayXd& s1) {
  check_problem(p);
  if (s0.size() != p.grid.size() || s1.size() != p.grid.size()) {
    throw DomainError("s0/s1/grid size mismatch");
  }
  const Eigen::ArrayXd g0 = grad_s0_guarded(p, s0);
  const Eigen::ArrayXd g1 = gradient(p.grid, s1);
  const Eigen::ArrayXd lap1 = second_derivative(p.grid, s1);
  const Eigen::ArrayXd lap_a = second_derivative(p.grid, p.amplitude);
  const Eigen::ArrayXd ga = gradient(p.grid, p.amplitude);
  const Eigen::ArrayXd integrand =
      (-lap_a - 2.0 * ga * g1 - p.amplitude * g1 * g1 - p.amplitude * lap1) /
      (2.0 * p.amplitude * g0);
  return cumulative_simpson(p.grid, integrand);
}

double residual_norm(const Problem& p, const Solution& sol, double hbar) {
  check_problem(p);
  const Eigen::Index n = p.grid.size();
  const std::complex<double> ih(0.0, hbar);

  // S = s0 + (hbar/i) s1 + (hbar/i)^2 s2 truncated at sol.orders.
  Eigen::ArrayXcd s = sol.s0.cast<std::complex<double>>();
  if (sol.orders >= 1) s -= ih * sol.s1;
  if (sol.orders >= 2) s -= (hbar * hbar) * sol.s2;

  const Eigen::ArrayXd s_re = s.real();
  const Eigen::ArrayXd s_im = s.imag();
  Eigen::ArrayXcd grad_s(n), lap_s(n);
  grad_s.real() = gradient(p.grid, s_re);
  grad_s.imag() = gradient(p.grid, s_im);
  lap_s.real() = second_derivative(p.grid, s_re);
  lap_s.imag() = second_derivative(p.grid, s_im);
  const Eigen::ArrayXd grad_a = gradient(p.grid, p.amplitude);
  const Eigen::ArrayXd lap_a = second_derivative(p.grid, p.amplitude);

  double worst = 0.0;
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    const std::complex<double> gs = grad_s[i];
    const std::complex<double> res =
        -hbar * hbar * lap_a[i] - 2.0 * ih * grad_a[i] * gs +
        p.amplitude[i] * gs * gs - ih * p.amplitude[i] * lap_s[i] -
        (p.epsilon - p.potential[i]) * p.amplitude[i];
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

Eigen::ArrayXcd assemble_wavefunction(const Problem& p, const Solution& sol,
                                      double hbar) {
  check_problem(p);
  if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
  const Eigen::Index n = p.grid.size();
  Eigen::ArrayXcd phi(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    std::complex<double> log_phase(0.0, sol.s0[i] / hbar);
    if (sol.orders >= 1) log_phase += sol.s1[i];
    if (sol.orders >= 2) log_phase += std::complex<double>(0.0, -hbar * sol.s2[i]);
    phi[i] = p.amplitude[i] * std::exp(log_phase);
  }
  return phi;
}

Solution solve(const Problem& p, int orders, double hbar) {
  if (orders < 0 || orders > 2) {
    throw DomainError("orders must be 0, 1, or 2");
  }
  if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
  Solution sol;
  sol.orders = orders;
  sol.s0 = solve_s0(p);
  sol.s1 = (orders >= 1) ? solve_s1(p, sol.s0)
                         : Eigen::ArrayXd::Zero(p.grid.size());
  sol.s2 = (orders >= 2) ? solve_s2(p, sol.s0, sol.s1)
                         : Eigen::ArrayXd::Zero(p.grid.size());
  sol.residual_norm = residual_norm(p, sol, hbar);
  return sol;
}

}  // namespace thermophase::wkb
