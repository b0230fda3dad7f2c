#include "thermophase/config.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "thermophase/errors.hpp"

namespace thermophase {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> ModelConfig::validate() const {
  std::vector<std::string> errs;
  if (!(theta_th > 0.0)) errs.push_back("theta_th must be positive");
  if (!(t_ref > 0.0)) errs.push_back("t_ref must be positive");
  if (!(lambda_ref > 0.0)) errs.push_back("lambda_ref must be positive");
  if (!(fixed_lambda > 0.0)) errs.push_back("fixed_lambda must be positive");
  if (!(mass > 0.0)) errs.push_back("mass must be positive");
  if (!(r_m > 0.0)) errs.push_back("r_m must be positive");
  if (!(quadrature.rel_tol > 0.0)) errs.push_back("quadrature.rel_tol must be positive");
  if (!(quadrature.abs_tol > 0.0)) errs.push_back("quadrature.abs_tol must be positive");
  if (quadrature.max_subdivisions < 1) errs.push_back("quadrature.max_subdivisions must be at least 1");
  if (!(quadrature.fd_step > 0.0)) errs.push_back("quadrature.fd_step must be positive");
  if (r_m > 0.0 && quadrature.fd_step > 0.0 && quadrature.fd_step > r_m / 100.0) {
    errs.push_back("finite-difference step too large");
  }
  return errs;
}

const char* to_string(LambdaMode m) {
  switch (m) {
    case LambdaMode::FixedLambda: return "FixedLambda";
    case LambdaMode::FixedEpsilon: return "FixedEpsilon";
    case LambdaMode::SelfConsistent: return "SelfConsistent";
  }
  return "?";
}

const char* to_string(Parity p) {
  return p == Parity::Even ? "Even" : "Odd";
}

const char* to_string(NormConvention c) {
  return c == NormConvention::PaperLiteral ? "PaperLiteral" : "Normalized";
}

LambdaMode lambda_mode_from_string(const std::string& s) {
  if (s == "FixedLambda") return LambdaMode::FixedLambda;
  if (s == "FixedEpsilon") return LambdaMode::FixedEpsilon;
  if (s == "SelfConsistent") return LambdaMode::SelfConsistent;
  throw DomainError("unknown mode: " + s);
}

Parity parity_from_string(const std::string& s) {
  if (s == "Even") return Parity::Even;
  if (s == "Odd") return Parity::Odd;
  throw DomainError("unknown parity: " + s);
}

NormConvention norm_convention_from_string(const std::string& s) {
  if (s == "PaperLiteral") return NormConvention::PaperLiteral;
  if (s == "Normalized") return NormConvention::Normalized;
  throw DomainError("unknown norm_convention: " + s);
}

namespace {

void reject_unknown_keys(const ordered_json& obj,
                         std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) {
      if (it.key() == k) { ok = true; break; }
    }
    if (!ok) throw DomainError("unknown config key: " + where + it.key());
  }
}

double get_number(const ordered_json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw DomainError(std::string("config key ") + key + " must be a number");
  return v.get<double>();
}

int get_int(const ordered_json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw DomainError(std::string("config key ") + key + " must be an integer");
  return v.get<int>();
}

std::string get_string(const ordered_json& obj, const char* key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_string()) throw DomainError(std::string("config key ") + key + " must be a string");
  return v.get<std::string>();
}

}  // namespace

ModelConfig load_config_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("config root must be a JSON object");
  reject_unknown_keys(j,
                      {"theta_th", "t_ref", "lambda_ref", "mode", "fixed_lambda",
                       "parity", "mass", "norm_convention", "r_m", "quadrature"},
                      "");

  ModelConfig cfg;
  cfg.theta_th = get_number(j, "theta_th", cfg.theta_th);
  cfg.t_ref = get_number(j, "t_ref", cfg.t_ref);
  cfg.lambda_ref = get_number(j, "lambda_ref", cfg.lambda_ref);
  cfg.mode = lambda_mode_from_string(get_string(j, "mode", to_string(cfg.mode)));
  cfg.fixed_lambda = get_number(j, "fixed_lambda", cfg.fixed_lambda);
  cfg.parity = parity_from_string(get_string(j, "parity", to_string(cfg.parity)));
  cfg.mass = get_number(j, "mass", cfg.mass);
  cfg.norm_convention = norm_convention_from_string(
      get_string(j, "norm_convention", to_string(cfg.norm_convention)));
  cfg.r_m = get_number(j, "r_m", cfg.r_m);
  if (j.contains("quadrature")) {
    const auto& q = j.at("quadrature");
    if (!q.is_object()) throw DomainError("config key quadrature must be an object");
    reject_unknown_keys(q, {"rel_tol", "abs_tol", "max_subdivisions", "fd_step"},
                        "quadrature.");
    cfg.quadrature.rel_tol = get_number(q, "rel_tol", cfg.quadrature.rel_tol);
    cfg.quadrature.abs_tol = get_number(q, "abs_tol", cfg.quadrature.abs_tol);
    cfg.quadrature.max_subdivisions =
        get_int(q, "max_subdivisions", cfg.quadrature.max_subdivisions);
    cfg.quadrature.fd_step = get_number(q, "fd_step", cfg.quadrature.fd_step);
  }

  auto errs = cfg.validate();
  if (!errs.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : errs) msg += "\n  " + e;
    throw DomainError(msg);
  }
  return cfg;
}

ModelConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config_json(ss.str());
}

std::string dump_config_json(const ModelConfig& cfg) {
  ordered_json j;
  j["theta_th"] = cfg.theta_th;
  j["t_ref"] = cfg.t_ref;
  j["lambda_ref"] = cfg.lambda_ref;
  j["mode"] = to_string(cfg.mode);
  j["fixed_lambda"] = cfg.fixed_lambda;
  j["parity"] = to_string(cfg.parity);
  j["mass"] = cfg.mass;
  j["norm_convention"] = to_string(cfg.norm_convention);
  j["r_m"] = cfg.r_m;
  ordered_json q;
  q["rel_tol"] = cfg.quadrature.rel_tol;
  q["abs_tol"] = cfg.quadrature.abs_tol;
  q["max_subdivisions"] = cfg.quadrature.max_subdivisions;
  q["fd_step"] = cfg.quadrature.fd_step;
  j["quadrature"] = q;
  return j.dump(2);
}

std::uint64_t config_hash(const ModelConfig& cfg) {
  const std::string canon = dump_config_json(cfg);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canon) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

std::string config_hash_hex(const ModelConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  return std::string(buf);
}

}  // namespace thermophase
