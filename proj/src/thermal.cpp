#include "thermophase/thermal.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "thermophase/errors.hpp"
#include "thermophase/h2plus.hpp"
#include "thermophase/quadrature.hpp"
#include "thermophase/units.hpp"

namespace thermophase {

CalibrationLedger calibrate(const ModelConfig& cfg) {
  CalibrationLedger ledger;
  ledger.theta_th = cfg.theta_th;
  ledger.t_ref = cfg.t_ref;
  ledger.lambda_ref = cfg.lambda_ref;
  // pi n0 = lambda_ref^3 exp(-theta/t_ref), anchoring lambda(t_ref).
  ledger.n0 = std::pow(cfg.lambda_ref, 3) *
              std::exp(-cfg.theta_th / cfg.t_ref) / std::numbers::pi;
  return ledger;
}

ThermalState lambda_of_t(double t_kelvin, const CalibrationLedger& ledger) {
  if (!(t_kelvin > 0.0)) {
    throw DomainError("lambda_of_t: temperature must be positive");
  }
  // log-space form of (pi n0 e^{theta/T})^{1/3}; immune to extreme
  // theta/T ratios that would underflow n0 itself.
  const double log_lambda =
      std::log(ledger.lambda_ref) +
      (ledger.theta_th / 3.0) * (1.0 / t_kelvin - 1.0 / ledger.t_ref);
  ThermalState st;
  st.temperature = t_kelvin;
  st.lambda = std::exp(log_lambda);
  st.mode = LambdaMode::FixedEpsilon;
  st.iterations = 0;
  st.converged = true;
  return st;
}

ThermalState lambda_self_consistent(double r_sep, double t_kelvin,
                                    const ModelConfig& cfg) {
  if (!(t_kelvin > 0.0)) {
    throw DomainError("lambda_self_consistent: temperature must be positive");
  }
  if (cfg.mode == LambdaMode::FixedLambda) {
    return {t_kelvin, cfg.fixed_lambda, cfg.mode, 0, true};
  }
  const CalibrationLedger ledger = calibrate(cfg);
  if (cfg.mode == LambdaMode::FixedEpsilon) {
    return lambda_of_t(t_kelvin, ledger);
  }
  if (!(r_sep > 0.0)) {
    throw DomainError("lambda_self_consistent: r_sep must be positive");
  }

  // Electronic energy (bonding branch, nuclear repulsion removed), used to
  // rescale the Boltzmann energy onto the theta_th scale.
  auto e_elec = [&](double lambda) {
    return parity_energy(Parity::Even, lambda, r_sep) - 1.0 / r_sep;
  };
  const double e_ref = e_elec(cfg.lambda_ref);
  if (!(std::abs(e_ref) > 1e-12)) {
    throw DomainError(
        "lambda_self_consistent: reference electronic energy vanishes");
  }
  const double log_pin0 =
      3.0 * std::log(cfg.lambda_ref) - cfg.theta_th / cfg.t_ref;

  // lambda = f(lambda) = (pi n0 e^{theta ratio(lambda)/T})^{1/3} with
  // ratio(lambda_ref) = 1, so the reference reproduces the closed form.
  auto f = [&](double lambda) {
    const double ratio = e_elec(lambda) / e_ref;
    return std::exp((log_pin0 + cfg.theta_th * ratio / t_kelvin) / 3.0);
  };

  double lambda = lambda_of_t(t_kelvin, ledger).lambda;
  std::vector<double> history{lambda};
  constexpr double alpha = 0.5;
  constexpr double tol = 1e-10;
  constexpr int max_iter = 200;
  for (int it = 1; it <= max_iter; ++it) {
    const double next = (1.0 - alpha) * lambda + alpha * f(lambda);
    if (!std::isfinite(next) || !(next > 0.0)) {
      throw ConvergenceError(
          "lambda_self_consistent: iteration left the positive domain",
          lambda, std::abs(next - lambda), history);
    }
    history.push_back(next);
    const double delta = std::abs(next - lambda);
    lambda = next;
    if (delta < tol) {
      return {t_kelvin, lambda, LambdaMode::SelfConsistent, it, true};
    }
  }
  throw ConvergenceError(
      "lambda_self_consistent: no fixed point within 200 iterations", lambda,
      std::abs(history.back() - history[history.size() - 2]), history);
}

ThermalState resolve_lambda(double r_sep, double t_kelvin,
                            const ModelConfig& cfg) {
  switch (cfg.mode) {
    case LambdaMode::FixedLambda:
      if (!(t_kelvin > 0.0)) {
        throw DomainError("resolve_lambda: temperature must be positive");
      }
      return {t_kelvin, cfg.fixed_lambda, cfg.mode, 0, true};
    case LambdaMode::FixedEpsilon:
      return lambda_of_t(t_kelvin, calibrate(cfg));
    case LambdaMode::SelfConsistent:
      return lambda_self_consistent(r_sep, t_kelvin, cfg);
  }
  throw DomainError("resolve_lambda: unknown mode");
}

Eigen::ArrayXd boltzmann_amplitude(const Eigen::ArrayXd& grid,
                                   const Eigen::ArrayXd& t_profile,
                                   double epsilon, double n0) {
  if (grid.size() != t_profile.size()) {
    throw DomainError("boltzmann_amplitude: grid/profile size mismatch");
  }
  if (!(n0 > 0.0)) throw DomainError("boltzmann_amplitude: n0 must be positive");
  Eigen::ArrayXd a(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double t = t_profile[i];
    if (!(t > 0.0)) {
      throw DomainError("boltzmann_amplitude: non-positive temperature at node " +
                        std::to_string(i));
    }
    const double expo = -epsilon / (k_boltzmann_ha_per_k * t);
    if (expo > 700.0) {
      throw DomainError(
          "boltzmann_amplitude: Boltzmann factor overflows at node " +
          std::to_string(i));
    }
    a[i] = std::sqrt(n0) * std::exp(0.5 * expo);
  }
  return a;
}

Eigen::ArrayXd boltzmann_amplitude_normalized(const Eigen::ArrayXd& grid,
                                              const Eigen::ArrayXd& t_profile,
                                              double epsilon) {
  if (grid.size() != t_profile.size()) {
    throw DomainError("boltzmann_amplitude: grid/profile size mismatch");
  }
  if (grid.size() < 2) {
    throw DomainError("boltzmann_amplitude: normalization needs >= 2 nodes");
  }
  Eigen::ArrayXd expo(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double t = t_profile[i];
    if (!(t > 0.0)) {
      throw DomainError("boltzmann_amplitude: non-positive temperature at node " +
                        std::to_string(i));
    }
    expo[i] = -epsilon / (k_boltzmann_ha_per_k * t);
  }
  // A = sqrt(w / int w) is invariant under scaling w, so shifting the
  // exponent by its maximum removes any overflow risk.
  const Eigen::ArrayXd w = (expo - expo.maxCoeff()).exp();
  const Eigen::ArrayXd cumulative = cumulative_simpson(grid, w);
  const double total = cumulative[cumulative.size() - 1];
  if (!(total > 0.0)) {
    throw DomainError("boltzmann_amplitude: normalization integral vanished");
  }
  return (w / total).sqrt();
}

}  // namespace thermophase
