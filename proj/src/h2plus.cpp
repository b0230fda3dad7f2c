#include "thermophase/h2plus.hpp"

#include <cmath>
#include <string>

#include "thermophase/errors.hpp"
#include "thermophase/quadrature.hpp"
#include "thermophase/thermal.hpp"
#include "thermophase/two_center.hpp"

namespace thermophase {

namespace {

inline double parity_sign(Parity p) { return p == Parity::Even ? 1.0 : -1.0; }

// d lambda / dR of the self-consistent fixed point by central differences;
// falls back to a forward stencil when R sits closer to 0 than one step.
double lambda_slope_sc(double r_sep, double t_kelvin, const ModelConfig& cfg) {
  const double h = cfg.quadrature.fd_step;
  if (r_sep - h > 0.0) {
    const double hi = lambda_self_consistent(r_sep + h, t_kelvin, cfg).lambda;
    const double lo = lambda_self_consistent(r_sep - h, t_kelvin, cfg).lambda;
    return (hi - lo) / (2.0 * h);
  }
  const double hi = lambda_self_consistent(r_sep + h, t_kelvin, cfg).lambda;
  const double at = lambda_self_consistent(r_sep, t_kelvin, cfg).lambda;
  return (hi - at) / h;
}

}  // namespace

ParityState make_parity_state(Parity parity, NormConvention conv,
                              double lambda, double r_sep) {
  const double y = overlap_y({lambda, r_sep});
  const double s = parity_sign(parity);
  const double base = 2.0 + s * 2.0 * y;  // <psi_a +- psi_b | psi_a +- psi_b>
  ParityState st;
  st.parity = parity;
  st.lambda = lambda;
  st.r_sep = r_sep;
  if (conv == NormConvention::PaperLiteral) {
    st.norm_factor = base;
    st.squared_norm = base * base * base;
  } else {
    if (!(base > 0.0)) {
      throw DomainError(
          "make_parity_state: odd combination degenerates at R = 0");
    }
    st.norm_factor = 1.0 / std::sqrt(base);
    st.squared_norm = 1.0;
  }
  return st;
}

double parity_energy(Parity parity, double lambda, double r_sep) {
  if (!(lambda > 0.0)) throw DomainError("parity_energy: lambda must be positive");
  if (!(r_sep > 0.0)) throw DomainError("parity_energy: r_sep must be positive");
  if (parity == Parity::Odd && r_sep < 1e-3) {
    throw DomainError(
        "parity_energy: odd-parity denominator collapses below R = 1e-3");
  }
  const OrbitalPair p{lambda, r_sep};
  const double y = overlap_y(p);
  const double pi_c = coulomb_pi(p);
  const double sigma = exchange_sigma(p);
  const double s = parity_sign(parity);
  return 1.0 / r_sep - 0.5 * lambda * lambda +
         (lambda * (lambda - 1.0) - pi_c + s * (lambda - 2.0) * sigma) /
             (1.0 + s * y);
}

GaugeSample gauge_potential(double r_sep, double t_kelvin,
                            const ModelConfig& cfg) {
  if (!(t_kelvin > 0.0)) {
    throw DomainError("gauge_potential: temperature must be positive");
  }
  if (!(r_sep >= 0.0)) {
    throw DomainError("gauge_potential: r_sep must be nonnegative");
  }
  GaugeSample sample{r_sep, t_kelvin, 0.0};
  if (cfg.norm_convention == NormConvention::Normalized) {
    // A real normalized state has <psi|d_R psi> = (1/2) d/dR 1 = 0.
    return sample;
  }
  if (r_sep == 0.0) {
    // dY/dR vanishes at R = 0 and the chain term has no room to act.
    return sample;
  }

  const double lambda = resolve_lambda(r_sep, t_kelvin, cfg).lambda;
  const OrbitalPair p{lambda, r_sep};
  double dy_total = overlap_y_dr(p);
  if (cfg.mode == LambdaMode::SelfConsistent) {
    dy_total += overlap_y_dlambda(p) * lambda_slope_sc(r_sep, t_kelvin, cfg);
  }
  const double s = parity_sign(cfg.parity);
  const double base = 2.0 + s * 2.0 * overlap_y(p);
  // <psi|d_R psi> = (1/2) d/dR base^3 = 3 s base^2 dY/dR; report |.|
  sample.gauge = std::abs(3.0 * base * base * dy_total);
  return sample;
}

PhaseResult phase_segment(double r_lo, double r_hi, double t_kelvin,
                          const ModelConfig& cfg) {
  if (!(r_lo >= 0.0) || !(r_hi >= r_lo)) {
    throw DomainError("phase_segment: need 0 <= r_lo <= r_hi");
  }
  PhaseResult result{t_kelvin, r_hi, 0.0, 0.0};
  if (r_lo == r_hi) return result;
  auto integrand = [&](double r) {
    return gauge_potential(r, t_kelvin, cfg).gauge;
  };
  const QuadResult q = adaptive_simpson(integrand, r_lo, r_hi, 1e-9, 48);
  if (!q.converged) {
    throw ConvergenceError("phase quadrature did not reach tolerance 1e-9",
                           q.value, q.error_estimate);
  }
  result.theta = q.value;
  result.error_estimate = q.error_estimate;
  return result;
}

PhaseResult geometric_phase(double t_kelvin, double r_m,
                            const ModelConfig& cfg) {
  if (!(t_kelvin > 0.0)) {
    throw DomainError("geometric_phase: temperature must be positive");
  }
  if (!(r_m >= 0.0)) {
    throw DomainError("geometric_phase: r_m must be nonnegative");
  }
  PhaseResult result = phase_segment(0.0, r_m, t_kelvin, cfg);
  result.r_m = r_m;
  return result;
}

double metric_term(double r_sep, double t_kelvin, const ModelConfig& cfg) {
  if (!(r_sep > 0.0)) throw DomainError("metric_term: r_sep must be positive");
  if (!(t_kelvin > 0.0)) {
    throw DomainError("metric_term: temperature must be positive");
  }
  const double lambda = resolve_lambda(r_sep, t_kelvin, cfg).lambda;
  const OrbitalPair p{lambda, r_sep};
  const double s = parity_sign(cfg.parity);
  const double y = overlap_y(p);
  const double y1 = overlap_y_dr(p);
  const double y2 = overlap_y_d2r(p);
  const double base = 2.0 + s * 2.0 * y;

  // Mixed partial of F(R,R') = C(R)C(R')[2S(|R-R'|/2) +- 2S((R+R')/2)] at
  // R' = R. The same-center branch contributes -S''(0)/2 = lambda^2/6, the
  // cross branch +- Y''/2; C and its slope depend on the convention.
  const double curvature = lambda * lambda / 6.0 + s * y2 / 2.0;
  double grad_sq;  // <d_R psi | d_R psi>
  if (cfg.norm_convention == NormConvention::PaperLiteral) {
    grad_sq = 8.0 * y1 * y1 * base + base * base * curvature;
  } else {
    if (!(base > 0.0)) {
      throw DomainError("metric_term: odd combination degenerates at R = 0");
    }
    grad_sq = -y1 * y1 / (base * base) + curvature / base;
  }
  return grad_sq / (2.0 * cfg.mass);
}

EffectivePotentialSample effective_potential(double r_sep, double t_kelvin,
                                             const ModelConfig& cfg) {
  if (!(r_sep > 0.0)) {
    throw DomainError("effective_potential: r_sep must be positive");
  }
  const double lambda = resolve_lambda(r_sep, t_kelvin, cfg).lambda;
  EffectivePotentialSample sample;
  sample.r_sep = r_sep;
  sample.temperature = t_kelvin;
  sample.epsilon_r = parity_energy(cfg.parity, lambda, r_sep);
  sample.metric_term = metric_term(r_sep, t_kelvin, cfg);
  const double gauge = gauge_potential(r_sep, t_kelvin, cfg).gauge;
  sample.gauge_sq_term = gauge * gauge / (2.0 * cfg.mass);
  sample.v_eff = sample.epsilon_r + sample.metric_term - sample.gauge_sq_term;
  return sample;
}

BondMinimum minimize_bond(double t_kelvin, const ModelConfig& cfg,
                          double r_lo, double r_hi) {
  if (!(t_kelvin > 0.0)) {
    throw DomainError("minimize_bond: temperature must be positive");
  }
  if (!(r_lo > 0.0) || !(r_hi > r_lo)) {
    throw DomainError("minimize_bond: need 0 < r_lo < r_hi");
  }
  auto f = [&](double r) {
    return effective_potential(r, t_kelvin, cfg).v_eff;
  };

  // Bracketing scan: a strict interior minimum among 200 samples.
  constexpr int scan_points = 200;
  const double step = (r_hi - r_lo) / (scan_points - 1);
  Eigen::ArrayXd values(scan_points);
  for (int i = 0; i < scan_points; ++i) values[i] = f(r_lo + i * step);
  int best = 0;
  for (int i = 1; i < scan_points; ++i) {
    if (values[i] < values[best]) best = i;
  }
  if (best == 0 || best == scan_points - 1 ||
      !(values[best] < values[best - 1] && values[best] < values[best + 1])) {
    throw NoMinimumError("minimize_bond: no strict interior minimum on [" +
                         std::to_string(r_lo) + ", " + std::to_string(r_hi) +
                         "]");
  }

  double a = r_lo + (best - 1) * step;
  double b = r_lo + (best + 1) * step;
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > 1e-5) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  const double r_min = 0.5 * (a + b);
  return {r_min, f(r_min)};
}

}  // namespace thermophase
