#include "thermophase/sweeps.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

#include "thermophase/csv.hpp"
#include "thermophase/errors.hpp"
#include "thermophase/h2plus.hpp"
#include "thermophase/thermal.hpp"

namespace thermophase {

namespace {

const char* kind_name(SweepKind k) {
  switch (k) {
    case SweepKind::Gauge: return "gauge";
    case SweepKind::Phase: return "phase";
    case SweepKind::Veff: return "veff";
    case SweepKind::Lambda: return "lambda";
    case SweepKind::Minimize: return "minimize";
  }
  return "?";
}

// Sorted, deduplicated group keys keep rows strictly ordered by (T, R).
std::vector<double> ordered_temps(std::vector<double> temps) {
  if (temps.empty()) throw DomainError("temperature list must not be empty");
  std::sort(temps.begin(), temps.end());
  temps.erase(std::unique(temps.begin(), temps.end()), temps.end());
  return temps;
}

std::string fmt(double v) { return csv::format_double(v); }

}  // namespace

std::vector<double> build_grid(double lo, double hi, double step) {
  if (!(hi >= lo)) throw DomainError("grid: upper bound below lower bound");
  if (lo == hi) return {lo};
  if (!(step > 0.0)) throw DomainError("grid: step must be positive");
  std::vector<double> grid;
  const double tol = 1e-9 * std::max(1.0, std::abs(hi));
  for (int k = 0;; ++k) {
    const double v = lo + k * step;
    if (v >= hi - tol) break;
    grid.push_back(v);
  }
  grid.push_back(hi);
  return grid;
}

std::string SweepResult::to_csv() const {
  std::string out = "# config_hash=" + config_hash + "\n";
  for (size_t i = 0; i < columns.size(); ++i) {
    out += columns[i];
    out += (i + 1 < columns.size()) ? ',' : '\n';
  }
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      out += (i + 1 < row.size()) ? ',' : '\n';
    }
  }
  return out;
}

std::string SweepResult::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(kind);
  j["config_hash"] = config_hash;
  j["columns"] = columns;
  j["rows"] = rows;
  return j.dump(2);
}

SweepResult sweep_gauge(const std::vector<double>& temps, double r_min,
                        double r_max, double r_step, const ModelConfig& cfg) {
  if (!(r_min >= 0.0)) throw DomainError("sweep_gauge: r_min must be nonnegative");
  SweepResult result;
  result.kind = SweepKind::Gauge;
  result.columns = {"R_au", "T_K", "gauge_au"};
  result.config_hash = config_hash_hex(cfg);
  for (double t : ordered_temps(temps)) {
    for (double r : build_grid(r_min, r_max, r_step)) {
      const GaugeSample g = gauge_potential(r, t, cfg);
      result.rows.push_back({fmt(r), fmt(t), fmt(g.gauge)});
    }
  }
  return result;
}

SweepResult sweep_phase(double t_min, double t_max, double t_step, double r_m,
                        const ModelConfig& cfg) {
  if (!(t_min > 0.0)) throw DomainError("sweep_phase: t_min must be positive");
  SweepResult result;
  result.kind = SweepKind::Phase;
  result.columns = {"T_K", "theta"};
  result.config_hash = config_hash_hex(cfg);
  for (double t : build_grid(t_min, t_max, t_step)) {
    const PhaseResult ph = geometric_phase(t, r_m, cfg);
    result.rows.push_back({fmt(t), fmt(ph.theta)});
  }
  return result;
}

SweepResult sweep_veff(const std::vector<double>& temps, double r_min,
                       double r_max, double r_step, const ModelConfig& cfg) {
  if (!(r_min > 0.0)) throw DomainError("sweep_veff: r_min must be positive");
  SweepResult result;
  result.kind = SweepKind::Veff;
  result.columns = {"R_au", "T_K", "V_eff", "eps_R", "metric", "gauge_sq"};
  result.config_hash = config_hash_hex(cfg);
  for (double t : ordered_temps(temps)) {
    for (double r : build_grid(r_min, r_max, r_step)) {
      const EffectivePotentialSample s = effective_potential(r, t, cfg);
      result.rows.push_back({fmt(r), fmt(t), fmt(s.v_eff), fmt(s.epsilon_r),
                             fmt(s.metric_term), fmt(s.gauge_sq_term)});
    }
  }
  return result;
}

SweepResult sweep_lambda(double t_min, double t_max, double t_step,
                         std::optional<double> r_sep, const ModelConfig& cfg) {
  if (!(t_min > 0.0)) throw DomainError("sweep_lambda: t_min must be positive");
  if (cfg.mode == LambdaMode::SelfConsistent && !r_sep.has_value()) {
    throw DomainError("sweep_lambda: SelfConsistent mode needs an r_sep");
  }
  SweepResult result;
  result.kind = SweepKind::Lambda;
  result.columns = {"T_K", "lambda_au", "mode", "iterations"};
  result.config_hash = config_hash_hex(cfg);
  for (double t : build_grid(t_min, t_max, t_step)) {
    const ThermalState st = resolve_lambda(r_sep.value_or(1.0), t, cfg);
    result.rows.push_back({fmt(t), fmt(st.lambda), to_string(st.mode),
                           std::to_string(st.iterations)});
  }
  return result;
}

SweepResult minimize_table(const std::vector<double>& temps,
                           const ModelConfig& cfg) {
  SweepResult result;
  result.kind = SweepKind::Minimize;
  result.columns = {"T_K", "R_min_au", "V_min_ha", "status"};
  result.config_hash = config_hash_hex(cfg);
  const double nan = std::nan("");
  for (double t : ordered_temps(temps)) {
    try {
      const BondMinimum m = minimize_bond(t, cfg);
      result.rows.push_back({fmt(t), fmt(m.r_min), fmt(m.v_min), "ok"});
    } catch (const NoMinimumError&) {
      result.rows.push_back({fmt(t), fmt(nan), fmt(nan), "no-minimum"});
    }
  }
  return result;
}

}  // namespace thermophase
