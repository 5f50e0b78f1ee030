// fhaci command-line front end.  Thin orchestration over the C API: config
// ingestion, subcommands for analysis / validation / optimization, CSV and
// JSON emission with a run manifest alongside every output.
//
// Exit codes: 0 ok, 2 configuration/usage error, 3 numeric failure.
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fhaci.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
  throw CliError{code, message};
}

void check(fhaci_status st, const char* what) {
  if (st == FHACI_OK) return;
  const int code = (st == FHACI_ENUMERIC) ? kExitNumeric : kExitConfig;
  fail(code, std::string(what) + ": " + fhaci_last_error());
}

// ---------------------------------------------------------------- helpers

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(kExitConfig, "cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      fail(kExitConfig, std::string("cannot parse ") + what + " entry '" +
                            item + "' (expected a number)");
    }
  }
  if (out.empty()) fail(kExitConfig, std::string(what) + ": empty list");
  return out;
}

// "lo:step:hi" inclusive, endpoint-safe.
std::vector<double> parse_range(const std::string& text, const char* what) {
  double lo = 0, step = 0, hi = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &step, &hi) != 3 ||
      step <= 0 || hi < lo)
    fail(kExitConfig,
         std::string(what) + ": expected lo:step:hi with step > 0, got '" +
             text + "'");
  std::vector<double> out;
  for (int i = 0;; ++i) {
    double v = lo + i * step;
    if (v > hi + 0.5 * step) break;
    out.push_back(std::min(v, hi));
    if (out.size() > 100000) fail(kExitConfig, std::string(what) + ": range too large");
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Owned model handle with config-JSON patching before creation.
struct Model {
  fhaci_model* m = nullptr;
  ~Model() { fhaci_model_destroy(m); }
  Model() = default;
  Model(Model&& o) noexcept : m(o.m) { o.m = nullptr; }
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;
};

struct Table {
  fhaci_table* t = nullptr;
  ~Table() { fhaci_table_destroy(t); }
  Table() = default;
  Table(Table&& o) noexcept : t(o.t) { o.t = nullptr; }
  Table(const Table&) = delete;
  Table& operator=(const Table&) = delete;
};

struct Optrun {
  fhaci_optrun* r = nullptr;
  ~Optrun() { fhaci_optrun_destroy(r); }
};

struct StringOut {
  char* s = nullptr;
  ~StringOut() { fhaci_string_free(s); }
};

// Common per-subcommand options.
struct Common {
  std::string config_path;
  std::string out_dir = ".";
  std::int64_t seed = -1;  // -1 = keep config value
  int workers = 0;         // 0 = keep config value
  std::string method;      // outage-method override
  bool no_aci = false;
};

void add_common(CLI::App* sub, Common& c, bool config_required) {
  auto* opt = sub->add_option("--config", c.config_path,
                              "system/waveform/evaluation JSON config");
  if (config_required) opt->required();
  sub->add_option("--out", c.out_dir, "output directory (created if missing)");
  sub->add_option("--seed", c.seed, "override evaluation seed");
  sub->add_option("--workers", c.workers, "override worker thread count");
}

json load_config_json(const Common& c) {
  if (c.config_path.empty()) {
    // Built-in default system; subcommands that allow omitting --config get
    // the documented defaults.
    return json{{"system", json::object()}};
  }
  json j;
  try {
    j = json::parse(read_file(c.config_path));
  } catch (const json::exception& e) {
    fail(kExitConfig, "config error: invalid JSON in " + c.config_path + ": " +
                          e.what());
  }
  return j;
}

Model make_model(const Common& c, const json& patched) {
  Model model;
  std::string text = patched.dump();
  check(fhaci_model_create_json(text.c_str(), &model.m), "config");
  if (c.seed >= 0)
    check(fhaci_model_set(model.m, "evaluation.seed",
                          static_cast<double>(c.seed)),
          "config");
  if (c.workers > 0)
    check(fhaci_model_set(model.m, "evaluation.workers", c.workers), "config");
  if (c.no_aci) check(fhaci_model_set(model.m, "evaluation.no_aci", 1), "config");
  return model;
}

// Applies the evaluation-section overrides that must be present before the
// model is created (string fields have no setter).
json patch_evaluation(json cfg, const Common& c) {
  // "conditional" and "mc" are dispatch modes of the outage subcommand, not
  // evaluation methods of the model; only the analytic choices pass through.
  if (!c.method.empty() && c.method != "mc" && c.method != "conditional") {
    cfg["evaluation"]["outage_method"] = c.method;
  }
  return cfg;
}

struct Manifest {
  json j;
  std::filesystem::path dir;
  std::chrono::steady_clock::time_point t0 =
      std::chrono::steady_clock::now();

  Manifest(const std::string& subcommand, const Common& c) {
    dir = c.out_dir;
    std::filesystem::create_directories(dir);
    j["schema"] = "fhaci-manifest v1";
    j["tool"] = "fhaci";
    j["version"] = fhaci_version();
    j["subcommand"] = subcommand;
    j["config"] = c.config_path;
    j["seed"] = c.seed;
    j["outputs"] = json::array();
  }

  void echo_model(const Model& m) {
    StringOut s;
    check(fhaci_model_echo_json(m.m, &s.s), "echo");
    j["parameters"] = json::parse(s.s);
  }

  std::filesystem::path path_of(const std::string& name) const {
    return dir / name;
  }

  void add_output(const std::string& name) { j["outputs"].push_back(name); }

  void write() {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    j["wall_ms"] = ms;
    std::ofstream out(dir / "manifest.json");
    out << j.dump(2) << "\n";
  }
};

std::ofstream open_csv(Manifest& man, const std::string& name,
                       const std::string& header) {
  std::ofstream out(man.path_of(name));
  if (!out) fail(kExitConfig, "cannot write " + name);
  out << "# fhaci-csv v1 " << man.j["subcommand"].get<std::string>()
      << " manifest=manifest.json\n";
  out << header << "\n";
  man.add_output(name);
  return out;
}

void write_json_result(Manifest& man, const std::string& name, json body) {
  body["schema"] = "fhaci-result v1";
  body["manifest"] = "manifest.json";
  std::ofstream out(man.path_of(name));
  out << body.dump(2) << "\n";
  man.add_output(name);
}

Table load_table(const std::string& path) {
  Table t;
  check(fhaci_table_load(path.c_str(), &t.t), "table");
  return t;
}

fhaci_waveform model_waveform(const Model& m, const std::string& override_csv) {
  fhaci_waveform wf{};
  check(fhaci_model_waveform(m.m, &wf), "waveform");
  if (!override_csv.empty()) {
    auto v = parse_list(override_csv, "--waveform");
    if (v.size() != 4)
      fail(kExitConfig, "--waveform: expected L,R,h,psi (4 numbers)");
    wf = fhaci_waveform{v[0], v[1], v[2], v[3]};
  }
  return wf;
}

double resolve_beta(double beta_flag, const std::string& table_path,
                    const fhaci_waveform& wf) {
  if (beta_flag > 0) return beta_flag;
  if (table_path.empty())
    fail(kExitConfig,
         "an SINR threshold is required: pass --beta or --table <file>");
  Table t = load_table(table_path);
  double beta = 0;
  check(fhaci_table_threshold(t.t, wf.R, wf.h, &beta), "threshold");
  return beta;
}

json theta_json(const fhaci_waveform& w, double tau) {
  return json{{"L", w.L},         {"R", w.R},
              {"h", w.h},         {"psi", w.psi},
              {"tau", tau},       {"tau_milli", tau * 1e3}};
}

// ------------------------------------------------------------ subcommands

struct OutageArgs {
  Common c;
  double beta = 0;
  std::string table_path;
  std::string omegas_csv;
  std::string waveform_csv;
  std::int64_t trials = 1000000;
  unsigned resample = FHACI_RESAMPLE_ALL;
  bool explicit_channels = false;
};

int cmd_outage(const OutageArgs& a) {
  Manifest man("outage", a.c);
  json cfg = patch_evaluation(load_config_json(a.c), a.c);
  Model model = make_model(a.c, cfg);
  man.echo_model(model);
  fhaci_waveform wf = model_waveform(model, a.waveform_csv);
  double beta = resolve_beta(a.beta, a.table_path, wf);

  fhaci_outage_result res{};
  const std::string method = a.c.method;
  if (method == "conditional" || (!a.omegas_csv.empty() && method == "mc")) {
    if (a.omegas_csv.empty())
      fail(kExitConfig, "--method conditional requires --omegas");
    auto om = parse_list(a.omegas_csv, "--omegas");
    if (method == "conditional") {
      double value = 0;
      check(fhaci_conditional_outage(model.m, &wf, om.data(),
                                     static_cast<int>(om.size()), beta,
                                     &value),
            "outage");
      res.value = value;
      std::snprintf(res.method, sizeof res.method, "conditional-closed");
    } else {
      double seed = 0;
      check(fhaci_model_get(model.m, "evaluation.seed", &seed), "seed");
      check(fhaci_simulate_conditional(model.m, &wf, om.data(),
                                       static_cast<int>(om.size()), beta,
                                       a.trials,
                                       static_cast<uint64_t>(seed), &res),
            "outage");
    }
  } else if (method == "mc") {
    double seed = 0;
    check(fhaci_model_get(model.m, "evaluation.seed", &seed), "seed");
    check(fhaci_simulate_network(model.m, &wf, beta, a.trials,
                                 static_cast<uint64_t>(seed), a.resample,
                                 a.explicit_channels ? 1 : 0, &res),
          "outage");
  } else {
    // analytic: auto / unshadowed / shadowed, chosen via the patched config
    check(fhaci_outage(model.m, nullptr, &wf, beta, &res), "outage");
  }

  json body;
  body["method"] = res.method;
  body["value"] = res.value;
  body["std_err"] = res.std_err;
  body["draws"] = res.draws;
  body["beta"] = beta;
  body["waveform"] = {{"L", wf.L}, {"R", wf.R}, {"h", wf.h}, {"psi", wf.psi}};
  write_json_result(man, "outage.json", std::move(body));
  man.write();
  std::cout << "outage " << res.method << " value=" << fmt(res.value)
            << " std_err=" << fmt(res.std_err) << "\n";
  return kExitOk;
}

struct BuildTableArgs {
  Common c;
  std::string out_file = "threshold_table.json";
  std::string h_range = "0.05:0.05:1.0";
  std::string snr_range = "-10:0.5:20";
  std::int64_t trials = 100000;
  std::int64_t seed = 20260815;
};

int cmd_build_table(const BuildTableArgs& a) {
  Manifest man("build-table", a.c);
  auto hs = parse_range(a.h_range, "--h-range");
  auto snrs = parse_range(a.snr_range, "--snr-range");
  Table t;
  check(fhaci_table_build(hs.data(), static_cast<int>(hs.size()), snrs.data(),
                          static_cast<int>(snrs.size()), a.trials,
                          static_cast<uint64_t>(a.seed),
                          a.c.workers > 0 ? a.c.workers : 1, &t.t),
        "build-table");
  std::filesystem::path out = a.out_file;
  if (out.is_relative()) out = man.dir / out;
  check(fhaci_table_save(t.t, out.string().c_str()), "save");
  man.add_output(out.string());
  man.j["parameters"] = {{"h_range", a.h_range},
                         {"snr_range", a.snr_range},
                         {"trials", a.trials},
                         {"seed", a.seed}};
  man.write();
  std::cout << "threshold table written to " << out.string() << "\n";
  return kExitOk;
}

struct OptimizeArgs {
  Common c;
  std::string table_path;
  std::string method = "nm";
  std::string init_csv;
  std::string freeze_csv;
  int max_iters = 0;
  double diam_tol = 0;
  std::string grid_L = "10:5:60";
  std::string grid_R = "0.3:0.05:0.9";
  std::string grid_h = "0.3:0.05:0.95";
  std::string grid_psi = "0.92:0.01:0.99";
};

fhaci_nm_options nm_options_from(const OptimizeArgs& a) {
  fhaci_nm_options opt;
  fhaci_nm_options_default(&opt);
  if (!a.init_csv.empty()) {
    auto v = parse_list(a.init_csv, "--init");
    if (v.size() != 4) fail(kExitConfig, "--init: expected L,R,h,psi");
    opt.init = fhaci_waveform{v[0], v[1], v[2], v[3]};
  }
  if (!a.freeze_csv.empty()) {
    std::stringstream ss(a.freeze_csv);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name == "L") opt.frozen[0] = 1;
      else if (name == "R") opt.frozen[1] = 1;
      else if (name == "h") opt.frozen[2] = 1;
      else if (name == "psi") opt.frozen[3] = 1;
      else fail(kExitConfig, "--freeze: unknown coordinate '" + name + "'");
    }
  }
  if (a.max_iters > 0) opt.max_iters = a.max_iters;
  if (a.diam_tol > 0) opt.diam_tol = a.diam_tol;
  return opt;
}

void write_optrun(Manifest& man, const std::string& stem, const Optrun& run) {
  fhaci_waveform theta{};
  double tau = 0;
  check(fhaci_optrun_best(run.r, &theta, &tau), "optimize");
  long long evals = 0, failures = 0;
  int iters = 0, restarted = 0;
  check(fhaci_optrun_stats(run.r, &evals, &iters, &failures, &restarted),
        "optimize");

  json body;
  body["best"] = theta_json(theta, tau);
  body["evaluations"] = evals;
  body["iterations"] = iters;
  body["failures"] = failures;
  body["restarted"] = restarted != 0;
  write_json_result(man, stem + ".json", std::move(body));

  int n = 0;
  check(fhaci_optrun_trace_size(run.r, &n), "optimize");
  auto csv = open_csv(man, stem + "_trace.csv",
                      "iteration,L,R,h,psi,tau,tau_milli");
  for (int i = 0; i < n; ++i) {
    fhaci_waveform w{};
    double tv = 0;
    check(fhaci_optrun_trace_get(run.r, i, &w, &tv), "optimize");
    csv << i << ',' << fmt(w.L) << ',' << fmt(w.R) << ',' << fmt(w.h) << ','
        << fmt(w.psi) << ',' << fmt(tv) << ',' << fmt(tv * 1e3) << "\n";
  }
  std::cout << "optimum L=" << fmt(theta.L) << " R=" << fmt(theta.R)
            << " h=" << fmt(theta.h) << " psi=" << fmt(theta.psi)
            << " tau_milli=" << fmt(tau * 1e3) << "\n";
}

int cmd_optimize(const OptimizeArgs& a) {
  Manifest man("optimize", a.c);
  json cfg = patch_evaluation(load_config_json(a.c), a.c);
  Model model = make_model(a.c, cfg);
  man.echo_model(model);
  Table table = load_table(a.table_path);

  Optrun run;
  if (a.method == "nm") {
    fhaci_nm_options opt = nm_options_from(a);
    check(fhaci_optimize_nm(model.m, table.t, &opt, &run.r), "optimize");
  } else if (a.method == "grid") {
    auto Ls = parse_range(a.grid_L, "--grid-L");
    auto Rs = parse_range(a.grid_R, "--grid-R");
    auto hs = parse_range(a.grid_h, "--grid-h");
    auto ps = parse_range(a.grid_psi, "--grid-psi");
    check(fhaci_optimize_grid(model.m, table.t, Ls.data(),
                              static_cast<int>(Ls.size()), Rs.data(),
                              static_cast<int>(Rs.size()), hs.data(),
                              static_cast<int>(hs.size()), ps.data(),
                              static_cast<int>(ps.size()), &run.r),
          "optimize");
  } else {
    fail(kExitConfig, "--method: expected nm or grid");
  }
  write_optrun(man, "optimize", run);
  man.write();
  return kExitOk;
}

struct SweepLArgs {
  Common c;
  std::string table_path;
  std::string psi_csv = "0.96,0.99";
  std::string L_range = "10:5:60";
  int max_iters = 0;
};

int cmd_sweep_L(const SweepLArgs& a) {
  Manifest man("sweep-L", a.c);
  json cfg = patch_evaluation(load_config_json(a.c), a.c);
  Model model = make_model(a.c, cfg);
  man.echo_model(model);
  Table table = load_table(a.table_path);
  auto psis = parse_list(a.psi_csv, "--psi");
  auto Ls = parse_range(a.L_range, "--L-range");

  auto csv = open_csv(man, "sweep_L.csv",
                      "psi,L,R_opt,h_opt,tau_opt,tau_opt_milli");
  for (double psi : psis) {
    fhaci_nm_options opt;
    fhaci_nm_options_default(&opt);
    opt.init.psi = psi;
    opt.frozen[3] = 1;  // pin psi; profile pins L
    if (a.max_iters > 0) opt.max_iters = a.max_iters;
    StringOut out;
    check(fhaci_profile_curve(model.m, table.t, 0, Ls.data(),
                              static_cast<int>(Ls.size()), &opt, &out.s),
          "sweep-L");
    json rows = json::parse(out.s);
    for (const auto& row : rows) {
      const auto& th = row["theta"];
      csv << fmt(psi) << ',' << fmt(row["value"].get<double>()) << ','
          << fmt(th["R"].get<double>()) << ',' << fmt(th["h"].get<double>())
          << ',' << fmt(row["tau"].get<double>()) << ','
          << fmt(row["tau"].get<double>() * 1e3) << "\n";
    }
  }
  man.write();
  std::cout << "sweep_L.csv written (" << psis.size() << " psi values, "
            << Ls.size() << " L values)\n";
  return kExitOk;
}

struct SweepPsiArgs {
  Common c;
  std::string table_path;
  std::string psi_range = "0.905:0.005:0.995";
  std::string models_csv = "mixed,nakagami,rayleigh";
  int max_iters = 0;
};

struct FadingModel {
  const char* name;
  int m0;
  double mi;
};

const FadingModel kFadingModels[] = {
    {"rayleigh", 1, 1.0}, {"nakagami", 4, 4.0}, {"mixed", 4, 1.0}};

const FadingModel& fading_model(const std::string& name) {
  for (const auto& m : kFadingModels)
    if (name == m.name) return m;
  fail(kExitConfig, "unknown fading model '" + name +
                        "' (expected rayleigh, nakagami or mixed)");
}

int cmd_sweep_psi(const SweepPsiArgs& a) {
  Manifest man("sweep-psi", a.c);
  json base = patch_evaluation(load_config_json(a.c), a.c);
  Table table = load_table(a.table_path);
  auto psis = parse_range(a.psi_range, "--psi-range");

  auto csv = open_csv(
      man, "sweep_psi.csv",
      "model,m0,m_i,psi,L_opt,R_opt,h_opt,tau_opt,tau_opt_milli");
  std::stringstream ss(a.models_csv);
  std::string name;
  bool first_model = true;
  while (std::getline(ss, name, ',')) {
    const FadingModel& fm = fading_model(name);
    json cfg = base;
    cfg["system"]["m0"] = fm.m0;
    cfg["system"]["m_i"] = fm.mi;
    Model model = make_model(a.c, cfg);
    if (first_model) {
      man.echo_model(model);  // echo of the first variant; rows list the rest
      first_model = false;
    }
    fhaci_nm_options opt;
    fhaci_nm_options_default(&opt);
    if (a.max_iters > 0) opt.max_iters = a.max_iters;
    StringOut out;
    check(fhaci_profile_curve(model.m, table.t, 3, psis.data(),
                              static_cast<int>(psis.size()), &opt, &out.s),
          "sweep-psi");
    json rows = json::parse(out.s);
    for (const auto& row : rows) {
      const auto& th = row["theta"];
      csv << fm.name << ',' << fm.m0 << ',' << fmt(fm.mi) << ','
          << fmt(row["value"].get<double>()) << ','
          << fmt(th["L"].get<double>()) << ',' << fmt(th["R"].get<double>())
          << ',' << fmt(th["h"].get<double>()) << ','
          << fmt(row["tau"].get<double>()) << ','
          << fmt(row["tau"].get<double>() * 1e3) << "\n";
    }
  }
  man.write();
  std::cout << "sweep_psi.csv written\n";
  return kExitOk;
}

struct CapacityTableArgs {
  Common c;
  std::string table_path;
  std::int64_t draws = 0;  // 0 = keep config shadow_draws
  int max_iters = 0;
};

int cmd_capacity_table(const CapacityTableArgs& a) {
  Manifest man("capacity-table", a.c);
  json base = patch_evaluation(load_config_json(a.c), a.c);
  Table table = load_table(a.table_path);

  auto csv = open_csv(man, "capacity_table.csv",
                      "r_net,sigma_s_db,model,m0,m_i,L,R,h,psi,tau_opt,"
                      "tau_opt_milli");
  bool first = true;
  for (double r_net : {2.0, 4.0}) {
    for (double sigma : {0.0, 8.0}) {
      for (const auto& fm : kFadingModels) {
        json cfg = base;
        cfg["system"]["r_net"] = r_net;
        cfg["system"]["sigma_s_db"] = sigma;
        cfg["system"]["m0"] = fm.m0;
        cfg["system"]["m_i"] = fm.mi;
        if (a.draws > 0)
          cfg["evaluation"]["shadow_draws"] = a.draws;
        Model model = make_model(a.c, cfg);
        if (first) {
          man.echo_model(model);
          first = false;
        }
        fhaci_nm_options opt;
        fhaci_nm_options_default(&opt);
        if (a.max_iters > 0) opt.max_iters = a.max_iters;
        Optrun run;
        check(fhaci_optimize_nm(model.m, table.t, &opt, &run.r),
              "capacity-table");
        fhaci_waveform theta{};
        double tau = 0;
        check(fhaci_optrun_best(run.r, &theta, &tau), "capacity-table");
        csv << fmt(r_net) << ',' << fmt(sigma) << ',' << fm.name << ','
            << fm.m0 << ',' << fmt(fm.mi) << ',' << fmt(theta.L) << ','
            << fmt(theta.R) << ',' << fmt(theta.h) << ',' << fmt(theta.psi)
            << ',' << fmt(tau) << ',' << fmt(tau * 1e3) << "\n";
        std::cout << "row r_net=" << r_net << " sigma=" << sigma << " "
                  << fm.name << ": tau_milli=" << fmt(tau * 1e3) << "\n";
      }
    }
  }
  man.write();
  std::cout << "capacity_table.csv written\n";
  return kExitOk;
}

struct PsiDistanceArgs {
  Common c;
  std::string table_path;
  std::string r_csv = "0.2,0.4,0.6,0.8,1.0";
  std::string alpha_csv = "3,3.5,4";
  int max_iters = 0;
};

int cmd_psi_distance(const PsiDistanceArgs& a) {
  Manifest man("psi-distance", a.c);
  json cfg = patch_evaluation(load_config_json(a.c), a.c);
  Model model = make_model(a.c, cfg);
  man.echo_model(model);
  Table table = load_table(a.table_path);
  auto rs = parse_list(a.r_csv, "--r");
  auto alphas = parse_list(a.alpha_csv, "--alpha");

  fhaci_nm_options opt;
  fhaci_nm_options_default(&opt);
  if (a.max_iters > 0) opt.max_iters = a.max_iters;
  StringOut out;
  check(fhaci_psi_vs_distance(model.m, table.t, rs.data(),
                              static_cast<int>(rs.size()), alphas.data(),
                              static_cast<int>(alphas.size()), &opt, &out.s),
        "psi-distance");
  json rows = json::parse(out.s);
  auto csv = open_csv(man, "psi_distance.csv",
                      "r_frac,alpha,L,R,h,psi_opt,tau_opt,tau_opt_milli");
  for (const auto& row : rows) {
    const auto& th = row["theta"];
    csv << fmt(row["r_frac"].get<double>()) << ','
        << fmt(row["alpha"].get<double>()) << ','
        << fmt(th["L"].get<double>()) << ',' << fmt(th["R"].get<double>())
        << ',' << fmt(th["h"].get<double>()) << ','
        << fmt(th["psi"].get<double>()) << ','
        << fmt(row["tau"].get<double>()) << ','
        << fmt(row["tau"].get<double>() * 1e3) << "\n";
  }
  man.write();
  std::cout << "psi_distance.csv written\n";
  return kExitOk;
}

struct ValidateArgs {
  Common c;
  std::string suite = "all";
  double trial_scale = 1.0;
};

int cmd_validate(const ValidateArgs& a) {
  Manifest man("validate", a.c);
  std::vector<std::string> suites;
  if (a.suite == "all")
    suites = {"numerics", "specialization", "oracle"};
  else
    suites = {a.suite};

  json report = json::array();
  bool ok = true;
  for (const auto& s : suites) {
    StringOut out;
    int pass = 0;
    check(fhaci_validate(s.c_str(), a.trial_scale, &out.s, &pass), "validate");
    json rep = json::parse(out.s);
    for (const auto& chk : rep["checks"]) {
      std::cout << (chk["pass"].get<bool>() ? "[PASS] " : "[FAIL] ") << s
                << "/" << chk["name"].get<std::string>() << ": "
                << chk["detail"].get<std::string>() << "\n";
    }
    ok = ok && pass;
    report.push_back(std::move(rep));
  }
  write_json_result(man, "validate.json", json{{"suites", report}, {"all_pass", ok}});
  man.write();
  std::cout << (ok ? "validation passed" : "validation FAILED") << "\n";
  return ok ? kExitOk : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fhaci: outage probability, transmission capacity and waveform "
      "optimization for frequency-hopping networks with adjacent-channel "
      "interference"};
  app.require_subcommand(1);

  OutageArgs oa;
  auto* s_out = app.add_subcommand("outage", "evaluate outage probability");
  add_common(s_out, oa.c, true);
  s_out->add_option("--method", oa.c.method,
                    "conditional | unshadowed | shadowed | mc")
      ->check(CLI::IsMember({"conditional", "unshadowed", "shadowed", "mc", ""}));
  s_out->add_option("--beta", oa.beta, "SINR threshold (linear); overrides --table");
  s_out->add_option("--table", oa.table_path, "threshold table for beta = C^-1(R)");
  s_out->add_option("--omegas", oa.omegas_csv,
                    "conditional powers Omega_0,Omega_1,... (comma list)");
  s_out->add_option("--waveform", oa.waveform_csv, "override waveform L,R,h,psi");
  s_out->add_option("--trials", oa.trials, "Monte Carlo trials for --method mc");
  s_out->add_option("--resample", oa.resample,
                    "mc resample mask (1 positions, 2 shadowing, 4 fading, 8 collisions)");
  s_out->add_flag("--explicit-channels", oa.explicit_channels,
                  "mc: sample hop indices instead of collision probabilities");
  s_out->add_flag("--no-aci", oa.c.no_aci, "neglect adjacent-channel splatter");

  BuildTableArgs ba;
  auto* s_bt = app.add_subcommand("build-table",
                                  "build and save the SINR threshold table");
  add_common(s_bt, ba.c, false);
  s_bt->add_option("--out-file", ba.out_file, "table file name");
  s_bt->add_option("--h-range", ba.h_range, "modulation-index grid lo:step:hi");
  s_bt->add_option("--snr-range", ba.snr_range, "SNR grid (dB) lo:step:hi");
  s_bt->add_option("--trials", ba.trials, "Monte Carlo trials per grid point");
  s_bt->add_option("--table-seed", ba.seed, "table build seed");

  OptimizeArgs pa;
  auto* s_opt = app.add_subcommand("optimize",
                                   "maximize capacity over (L, R, h, psi)");
  add_common(s_opt, pa.c, true);
  s_opt->add_option("--table", pa.table_path, "threshold table file")->required();
  s_opt->add_option("--method", pa.method, "nm | grid");
  s_opt->add_option("--init", pa.init_csv, "simplex start L,R,h,psi");
  s_opt->add_option("--freeze", pa.freeze_csv, "coordinates to pin, e.g. psi,L");
  s_opt->add_option("--max-iters", pa.max_iters, "simplex iteration cap");
  s_opt->add_option("--diam-tol", pa.diam_tol, "simplex diameter tolerance");
  s_opt->add_option("--grid-L", pa.grid_L, "grid lo:step:hi");
  s_opt->add_option("--grid-R", pa.grid_R, "grid lo:step:hi");
  s_opt->add_option("--grid-h", pa.grid_h, "grid lo:step:hi");
  s_opt->add_option("--grid-psi", pa.grid_psi, "grid lo:step:hi");
  s_opt->add_flag("--no-aci", pa.c.no_aci, "neglect adjacent-channel splatter");

  SweepLArgs la;
  auto* s_l = app.add_subcommand(
      "sweep-L", "optimal capacity versus channel count, one curve per psi");
  add_common(s_l, la.c, true);
  s_l->add_option("--table", la.table_path, "threshold table file")->required();
  s_l->add_option("--psi", la.psi_csv, "psi values (comma list)");
  s_l->add_option("--L-range", la.L_range, "channel counts lo:step:hi");
  s_l->add_option("--max-iters", la.max_iters, "simplex iteration cap");
  s_l->add_flag("--no-aci", la.c.no_aci, "neglect adjacent-channel splatter");

  SweepPsiArgs sa;
  auto* s_psi = app.add_subcommand(
      "sweep-psi", "optimal capacity versus psi for each fading model");
  add_common(s_psi, sa.c, true);
  s_psi->add_option("--table", sa.table_path, "threshold table file")->required();
  s_psi->add_option("--psi-range", sa.psi_range, "psi grid lo:step:hi");
  s_psi->add_option("--models", sa.models_csv,
                    "fading models (rayleigh,nakagami,mixed)");
  s_psi->add_option("--max-iters", sa.max_iters, "simplex iteration cap");

  CapacityTableArgs ca;
  auto* s_ct = app.add_subcommand(
      "capacity-table",
      "optimized capacity across network radius / shadowing / fading rows");
  add_common(s_ct, ca.c, true);
  s_ct->add_option("--table", ca.table_path, "threshold table file")->required();
  s_ct->add_option("--draws", ca.draws, "shadowed-evaluation outer draws");
  s_ct->add_option("--max-iters", ca.max_iters, "simplex iteration cap");

  PsiDistanceArgs da;
  auto* s_pd = app.add_subcommand(
      "psi-distance",
      "optimal psi versus source distance and path-loss exponent");
  add_common(s_pd, da.c, true);
  s_pd->add_option("--table", da.table_path, "threshold table file")->required();
  s_pd->add_option("--r", da.r_csv, "source distances as fractions of r_net");
  s_pd->add_option("--alpha", da.alpha_csv, "path-loss exponents");
  s_pd->add_option("--max-iters", da.max_iters, "simplex iteration cap");

  ValidateArgs va;
  auto* s_val = app.add_subcommand("validate", "run built-in self-check suites");
  add_common(s_val, va.c, false);
  s_val->add_option("--suite", va.suite,
                    "numerics | specialization | oracle | all");
  s_val->add_option("--trial-scale", va.trial_scale,
                    "Monte Carlo scale factor in (0, 1]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (s_out->parsed()) return cmd_outage(oa);
    if (s_bt->parsed()) return cmd_build_table(ba);
    if (s_opt->parsed()) return cmd_optimize(pa);
    if (s_l->parsed()) return cmd_sweep_L(la);
    if (s_psi->parsed()) return cmd_sweep_psi(sa);
    if (s_ct->parsed()) return cmd_capacity_table(ca);
    if (s_pd->parsed()) return cmd_psi_distance(da);
    if (s_val->parsed()) return cmd_validate(va);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
