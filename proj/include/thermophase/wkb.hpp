#pragma once

#include <Eigen/Core>

namespace thermophase::wkb {

// One-dimensional semiclassical expansion phi = A exp(iS/hbar) with
// S = s0 + (hbar/i) s1 + (hbar/i)^2 s2, solved order by order on a grid in
// the 2m = 1 convention (|grad s0|^2 = eps - V). Turning points are out of
// scope: construction refuses classically forbidden nodes.

struct Problem {
  Eigen::ArrayXd grid;       // node positions (bohr), strictly increasing
  Eigen::ArrayXd potential;  // V per node (hartree)
  double epsilon;            // energy (hartree)
  Eigen::ArrayXd amplitude;  // A per node, > 0 everywhere
};

struct Solution {
  Eigen::ArrayXd s0;   // real action, nondecreasing
  Eigen::ArrayXd s1;   // log-amplitude correction
  Eigen::ArrayXd s2;   // second-order phase correction
  int orders = 0;      // highest order actually solved (0, 1, or 2)
  double residual_norm = 0.0;  // filled by solve(); see residual_norm()
};

// Throws DomainError on malformed grids (size < 3, non-increasing, size
// mismatches, non-positive amplitude).
void check_problem(const Problem& p);

// s0(r) = int_{r0}^r sqrt(eps - V) dx. Throws ForbiddenRegionError if any
// node has eps < V + 1e-12.
Eigen::ArrayXd solve_s0(const Problem& p);

// s1(r) = int [-A lap(s0) - 2 grad(A) grad(s0)] / (2 A grad(s0)) dx.
// Throws DomainError when |grad s0| <= 1e-10 anywhere (turning point).
Eigen::ArrayXd solve_s1(const Problem& p, const Eigen::ArrayXd& s0);

// s2(r) = int [-lap(A) - 2 grad(A) grad(s1) - A grad(s1)^2 - A lap(s1)]
//             / (2 A grad(s0)) dx. Same guard as solve_s1.
Eigen::ArrayXd solve_s2(const Problem& p, const Eigen::ArrayXd& s0,
                        const Eigen::ArrayXd& s1);

// Max over interior nodes of | -hbar^2 lap(A) - 2 i hbar grad(A) grad(S)
// + A grad(S)^2 - i hbar A lap(S) - (eps - V) A | with S truncated at
// sol.orders.
double residual_norm(const Problem& p, const Solution& sol, double hbar);

// phi = A e^{i s0/hbar} e^{s1} e^{-i hbar s2} (orders beyond sol.orders
// contribute nothing).
Eigen::ArrayXcd assemble_wavefunction(const Problem& p, const Solution& sol,
                                      double hbar);

// Convenience driver: solves orders 0..orders, zero-fills the rest, and
// stamps residual_norm at the given hbar.
Solution solve(const Problem& p, int orders, double hbar);

}  // namespace thermophase::wkb
