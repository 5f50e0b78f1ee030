#include "core/config_json.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "core/error.hpp"

namespace fhaci {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw config_error("config error at " + path + ": " + why);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "must be a JSON object");
}

void reject_unknown(const json& j, const std::string& path,
                    const std::set<std::string>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(path + "." + it.key(), "unknown field");
}

double get_number(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(path + "." + key, "missing required field");
  const json& v = j.at(key);
  if (!v.is_number()) fail(path + "." + key, "must be a number");
  return v.get<double>();
}

double get_number_or(const json& j, const std::string& path, const char* key,
                     double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) fail(path + "." + key, "must be a number");
  return v.get<double>();
}

long get_integer(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(path + "." + key, "missing required field");
  const json& v = j.at(key);
  if (v.is_number_integer()) return v.get<long>();
  if (v.is_number()) {
    const double d = v.get<double>();
    if (d == std::floor(d)) return static_cast<long>(d);
  }
  fail(path + "." + key, "must be an integer");
}

// number -> {x}; array of numbers -> all entries.
std::vector<double> get_number_list(const json& j, const std::string& path,
                                    const char* key) {
  const json& v = j.at(key);
  if (v.is_number()) return {v.get<double>()};
  if (v.is_array()) {
    std::vector<double> out;
    for (size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        std::ostringstream os;
        os << path << "." << key << "[" << i << "]";
        fail(os.str(), "must be a number");
      }
      out.push_back(v[i].get<double>());
    }
    if (out.empty()) fail(path + "." + std::string(key), "must be non-empty");
    return out;
  }
  fail(path + "." + key, "must be a number or an array of numbers");
}

}  // namespace

SystemConfig parse_system_config(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path,
                 {"M", "r_ex", "r_net", "alpha", "snr_db", "duty_factor",
                  "sigma_s_db", "m0", "m_i", "power_ratios", "x0_distance"});
  SystemConfig cfg;
  cfg.M = static_cast<int>(get_integer(j, path, "M"));
  cfg.r_ex = get_number(j, path, "r_ex");
  cfg.r_net = get_number(j, path, "r_net");
  cfg.alpha = get_number(j, path, "alpha");
  cfg.snr_db = get_number(j, path, "snr_db");
  cfg.duty_factor = get_number(j, path, "duty_factor");
  cfg.sigma_s_db = get_number(j, path, "sigma_s_db");
  cfg.m0 = static_cast<int>(get_integer(j, path, "m0"));
  if (!j.contains("m_i")) fail(path + ".m_i", "missing required field");
  cfg.m_i = get_number_list(j, path, "m_i");
  if (j.contains("power_ratios"))
    cfg.power_ratios = get_number_list(j, path, "power_ratios");
  else
    cfg.power_ratios.clear();
  cfg.x0_distance = get_number(j, path, "x0_distance");
  cfg.validate();
  return cfg;
}

WaveformParams parse_waveform(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"L", "R", "h", "psi"});
  WaveformParams wf;
  wf.L = get_number(j, path, "L");
  wf.R = get_number(j, path, "R");
  wf.h = get_number(j, path, "h");
  wf.psi = get_number(j, path, "psi");
  wf.validate();
  return wf;
}

EvalOptions parse_eval_options(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path,
                 {"outage_method", "shadow_draws", "seed", "no_aci", "workers",
                  "quad_panels", "quad_abs_tol", "quad_rel_tol"});
  EvalOptions opt;
  if (j.contains("outage_method")) {
    if (!j.at("outage_method").is_string())
      fail(path + ".outage_method", "must be a string");
    opt.outage_method = j.at("outage_method").get<std::string>();
  }
  if (j.contains("shadow_draws"))
    opt.shadow_draws = get_integer(j, path, "shadow_draws");
  if (j.contains("seed"))
    opt.seed = static_cast<std::uint64_t>(get_integer(j, path, "seed"));
  if (j.contains("no_aci")) {
    if (!j.at("no_aci").is_boolean()) fail(path + ".no_aci", "must be a boolean");
    opt.no_aci = j.at("no_aci").get<bool>();
  }
  if (j.contains("workers"))
    opt.workers = static_cast<int>(get_integer(j, path, "workers"));
  opt.quad.panels = static_cast<int>(
      j.contains("quad_panels") ? get_integer(j, path, "quad_panels")
                                : opt.quad.panels);
  opt.quad.abs_tol = get_number_or(j, path, "quad_abs_tol", opt.quad.abs_tol);
  opt.quad.rel_tol = get_number_or(j, path, "quad_rel_tol", opt.quad.rel_tol);
  opt.validate();
  return opt;
}

FileConfig parse_config(const json& j) {
  require_object(j, "(root)");
  reject_unknown(j, "(root)", {"system", "waveform", "evaluation"});
  if (!j.contains("system")) fail("(root).system", "missing required field");
  FileConfig fc;
  fc.system = parse_system_config(j.at("system"));
  if (j.contains("waveform")) fc.waveform = parse_waveform(j.at("waveform"));
  if (j.contains("evaluation"))
    fc.evaluation = parse_eval_options(j.at("evaluation"));
  return fc;
}

FileConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config error: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw config_error("config error: invalid JSON in " + path + ": " +
                       e.what());
  }
  return parse_config(j);
}

json system_to_json(const SystemConfig& cfg) {
  json j;
  j["M"] = cfg.M;
  j["r_ex"] = cfg.r_ex;
  j["r_net"] = cfg.r_net;
  j["alpha"] = cfg.alpha;
  j["snr_db"] = cfg.snr_db;
  j["duty_factor"] = cfg.duty_factor;
  j["sigma_s_db"] = cfg.sigma_s_db;
  j["m0"] = cfg.m0;
  j["m_i"] = cfg.m_i;
  if (!cfg.power_ratios.empty()) j["power_ratios"] = cfg.power_ratios;
  j["x0_distance"] = cfg.x0_distance;
  return j;
}

json waveform_to_json(const WaveformParams& wf) {
  return json{{"L", wf.L}, {"R", wf.R}, {"h", wf.h}, {"psi", wf.psi}};
}

json eval_options_to_json(const EvalOptions& opt) {
  json j;
  j["outage_method"] = opt.outage_method;
  j["shadow_draws"] = opt.shadow_draws;
  j["seed"] = opt.seed;
  j["no_aci"] = opt.no_aci;
  j["workers"] = opt.workers;
  j["quad_panels"] = opt.quad.panels;
  j["quad_abs_tol"] = opt.quad.abs_tol;
  j["quad_rel_tol"] = opt.quad.rel_tol;
  return j;
}

}  // namespace fhaci
