#pragma once

#include <Eigen/Core>
#include <cmath>
#include <utility>

#include "thermophase/errors.hpp"

namespace thermophase {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;  // accumulated Richardson estimate
  bool converged = true;
};

namespace detail {

template <class F>
QuadResult simpson_recurse(F& f, double a, double fa, double m, double fm,
                           double b, double fb, double whole, double tol,
                           int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double h6 = (b - a) / 12.0;
  const double left = h6 * (fa + 4.0 * flm + fm);
  const double right = h6 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  // The /15 factor is the Richardson estimate of the composite error.
  if (std::abs(delta) <= 15.0 * tol || depth <= 0) {
    QuadResult r;
    r.value = left + right + delta / 15.0;
    r.error_estimate = std::abs(delta) / 15.0;
    r.converged = std::abs(delta) <= 15.0 * tol;
    return r;
  }
  QuadResult rl = simpson_recurse(f, a, fa, lm, flm, m, fm, left, 0.5 * tol,
                                  depth - 1);
  QuadResult rr = simpson_recurse(f, m, fm, rm, frm, b, fb, right, 0.5 * tol,
                                  depth - 1);
  QuadResult r;
  r.value = rl.value + rr.value;
  r.error_estimate = rl.error_estimate + rr.error_estimate;
  r.converged = rl.converged && rr.converged;
  return r;
}

}  // namespace detail

// Adaptive Simpson on [a, b]. Splits until the local Richardson error drops
// below the (bisected) tolerance or max_depth is hit; in the latter case the
// result is still returned with converged = false so callers can decide.
template <class F>
QuadResult adaptive_simpson(F&& f, double a, double b, double abs_tol,
                            int max_depth = 48) {
  if (!(b > a)) {
    if (a == b) return {};
    throw DomainError("adaptive_simpson: interval is reversed");
  }
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_recurse(f, a, fa, m, fm, b, fb, whole, abs_tol,
                                 max_depth);
}

// Cumulative integral of sampled data by piecewise parabolas fitted to
// interval pairs (0,1,2), (2,3,4), ... A trailing unpaired interval reuses
// the parabola through the last three nodes. Fourth-order accurate at every
// node on smooth data; handles non-uniform grids.
template <class DX, class DY>
Eigen::ArrayXd cumulative_simpson(const Eigen::ArrayBase<DX>& x_in,
                                  const Eigen::ArrayBase<DY>& y_in) {
  const Eigen::ArrayXd x = x_in;
  const Eigen::ArrayXd y = y_in;
  const Eigen::Index n = x.size();
  if (y.size() != n) {
    throw DomainError("cumulative_simpson: size mismatch");
  }
  if (n < 2) {
    throw DomainError("cumulative_simpson: need at least two nodes");
  }
  for (Eigen::Index i = 1; i < n; ++i) {
    if (!(x[i] > x[i - 1])) {
      throw DomainError("cumulative_simpson: abscissae must increase");
    }
  }

  Eigen::ArrayXd out(n);
  out[0] = 0.0;

  // Integrates the Newton-form parabola through (x0,y0),(x1,y1),(x2,y2)
  // over its first and second subintervals.
  auto parabola_parts = [](double h1, double h2, double y0, double y1,
                           double y2) {
    const double f01 = (y1 - y0) / h1;
    const double f12 = (y2 - y1) / h2;
    const double f012 = (f12 - f01) / (h1 + h2);
    const double first =
        y0 * h1 + 0.5 * f01 * h1 * h1 - f012 * h1 * h1 * h1 / 6.0;
    const double second = y0 * h2 + 0.5 * f01 * h2 * (2.0 * h1 + h2) +
                          f012 * h2 * h2 * (3.0 * h1 + 2.0 * h2) / 6.0;
    return std::pair<double, double>(first, second);
  };

  Eigen::Index i = 0;
  for (; i + 2 < n; i += 2) {
    const double h1 = x[i + 1] - x[i];
    const double h2 = x[i + 2] - x[i + 1];
    auto [first, second] = parabola_parts(h1, h2, y[i], y[i + 1], y[i + 2]);
    out[i + 1] = out[i] + first;
    out[i + 2] = out[i] + first + second;
  }
  if (i + 1 < n) {
    // Odd interval count: last interval from the final three-node parabola.
    if (n == 2) {
      out[1] = 0.5 * (x[1] - x[0]) * (y[0] + y[1]);
    } else {
      const double h1 = x[n - 2] - x[n - 3];
      const double h2 = x[n - 1] - x[n - 2];
      auto [first, second] =
          parabola_parts(h1, h2, y[n - 3], y[n - 2], y[n - 1]);
      (void)first;
      out[n - 1] = out[n - 2] + second;
    }
  }
  return out;
}

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;
};

GaussRule gauss_legendre(int n);

}  // namespace thermophase
