#pragma once

#include <Eigen/Core>
#include <algorithm>

#include "thermophase/errors.hpp"

namespace thermophase {

// Fornberg's recursion: weights of derivative orders 0..m at point z from
// the nodes x. Column k of the result holds the weights for order k.
inline Eigen::MatrixXd fd_weights(double z, const Eigen::ArrayXd& x, int m) {
  const Eigen::Index n = x.size();
  if (n < m + 1) {
    throw DomainError("fd_weights: stencil smaller than derivative order");
  }
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, m + 1);
  double c1 = 1.0;
  double c4 = x[0] - z;
  c(0, 0) = 1.0;
  for (Eigen::Index i = 1; i < n; ++i) {
    const int mn = static_cast<int>(std::min<Eigen::Index>(i, m));
    double c2 = 1.0;
    double c5 = c4;
    c4 = x[i] - z;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c(i, k) = c1 * (k * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
        }
        c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c(j, k) = (c4 * c(j, k) - k * c(j, k - 1)) / c3;
      }
      c(j, 0) = c4 * c(j, 0) / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace detail {

template <class DX, class DY>
Eigen::ArrayXd sampled_derivative(const Eigen::ArrayBase<DX>& x_in,
                                  const Eigen::ArrayBase<DY>& y_in, int order,
                                  Eigen::Index boundary_width) {
  const Eigen::ArrayXd x = x_in;
  const Eigen::ArrayXd y = y_in;
  const Eigen::Index n = x.size();
  if (y.size() != n) throw DomainError("sampled_derivative: size mismatch");
  if (n < boundary_width) {
    throw DomainError("sampled_derivative: too few nodes for stencil");
  }
  Eigen::ArrayXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index lo;
    Eigen::Index width;
    if (i == 0 || i + 1 == n) {
      width = boundary_width;
      lo = (i == 0) ? 0 : n - width;
    } else {
      width = 3;
      lo = i - 1;
    }
    const Eigen::ArrayXd stencil = x.segment(lo, width);
    const Eigen::MatrixXd w = fd_weights(x[i], stencil, order);
    out[i] =
        (w.col(order).array() * y.segment(lo, width)).sum();
  }
  return out;
}

}  // namespace detail

// First derivative of sampled data: centered three-point stencils inside,
// one-sided three-point at the ends. Second order on smooth grids.
template <class DX, class DY>
Eigen::ArrayXd gradient(const Eigen::ArrayBase<DX>& x,
                        const Eigen::ArrayBase<DY>& y) {
  return detail::sampled_derivative(x, y, 1, 3);
}

// Second derivative: centered three-point inside, one-sided four-point at
// the ends so the boundary stays second order too.
template <class DX, class DY>
Eigen::ArrayXd second_derivative(const Eigen::ArrayBase<DX>& x,
                                 const Eigen::ArrayBase<DY>& y) {
  return detail::sampled_derivative(x, y, 2, 4);
}

}  // namespace thermophase
