// C API implementation: thin exception-to-status bridge over the core.  No
// exception may cross the extern "C" boundary; every failure lands in the
// thread-local last-error string plus a status code.
#include "fhaci.h"

#include <cstdio>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "json.hpp"

#include "core/capacity.hpp"
#include "core/channel.hpp"
#include "core/config_json.hpp"
#include "core/cpfsk.hpp"
#include "core/error.hpp"
#include "core/model.hpp"
#include "core/optimize.hpp"
#include "core/outage.hpp"
#include "core/simkit.hpp"
#include "core/validate.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// Exceptions map onto the coarse C statuses: configuration/domain problems
// (bad inputs the caller can fix) versus numeric failures (the model could
// not be evaluated at a legal point).
fhaci_status status_from_exception() {
  try {
    throw;
  } catch (const fhaci::config_error& e) {
    set_error(e.what());
    return FHACI_ECONFIG;
  } catch (const fhaci::domain_error& e) {
    set_error(e.what());
    return FHACI_ECONFIG;
  } catch (const fhaci::numeric_error& e) {
    set_error(e.what());
    return FHACI_ENUMERIC;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return FHACI_ENUMERIC;
  } catch (const std::exception& e) {
    set_error(e.what());
    return FHACI_ENUMERIC;
  } catch (...) {
    set_error("unknown failure");
    return FHACI_ENUMERIC;
  }
}

template <typename Fn>
fhaci_status guarded(Fn&& fn) {
  try {
    fn();
    return FHACI_OK;
  } catch (...) {
    return status_from_exception();
  }
}

fhaci_status einval(const char* what) {
  set_error(std::string("invalid argument: ") + what);
  return FHACI_EINVAL;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void copy_method(const std::string& m, char (&dst)[32]) {
  std::snprintf(dst, sizeof dst, "%s", m.c_str());
}

fhaci::WaveformParams to_core(const fhaci_waveform& w) {
  return fhaci::WaveformParams{w.L, w.R, w.h, w.psi};
}

fhaci_waveform from_core(const fhaci::WaveformParams& w) {
  return fhaci_waveform{w.L, w.R, w.h, w.psi};
}

}  // namespace

struct fhaci_model {
  fhaci::FileConfig config;
  fhaci::EvalOptions eval() const {
    return config.evaluation ? *config.evaluation : fhaci::EvalOptions{};
  }
};

struct fhaci_table {
  fhaci::ThresholdTable table;
};

struct fhaci_optrun {
  fhaci::OptimizationResult result;
};

extern "C" {

const char* fhaci_version(void) { return "1.0.0"; }

const char* fhaci_last_error(void) { return g_last_error.c_str(); }

void fhaci_string_free(char* s) { delete[] s; }

/* --------------------------------------------------------------- model */

fhaci_status fhaci_model_create_json(const char* json_text,
                                     fhaci_model** out) {
  if (!json_text || !out) return einval("fhaci_model_create_json");
  *out = nullptr;
  return guarded([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
      throw fhaci::config_error(std::string("config error: invalid JSON: ") +
                                e.what());
    }
    auto m = std::make_unique<fhaci_model>();
    m->config = fhaci::parse_config(j);
    *out = m.release();
  });
}

fhaci_status fhaci_model_create_file(const char* path, fhaci_model** out) {
  if (!path || !out) return einval("fhaci_model_create_file");
  *out = nullptr;
  return guarded([&] {
    auto m = std::make_unique<fhaci_model>();
    m->config = fhaci::load_config_file(path);
    *out = m.release();
  });
}

void fhaci_model_destroy(fhaci_model* m) { delete m; }

fhaci_status fhaci_model_echo_json(const fhaci_model* m, char** out_json) {
  if (!m || !out_json) return einval("fhaci_model_echo_json");
  return guarded([&] {
    nlohmann::json j;
    j["system"] = fhaci::system_to_json(m->config.system);
    if (m->config.waveform)
      j["waveform"] = fhaci::waveform_to_json(*m->config.waveform);
    j["evaluation"] = fhaci::eval_options_to_json(m->eval());
    *out_json = dup_string(j.dump(2));
  });
}

namespace {

// Dotted-path field dispatch shared by get and set.  `value` is null for
// reads.  Throws config_error for unknown paths.
double field_rw(fhaci_model& m, const std::string& field, const double* value) {
  auto& sys = m.config.system;
  auto dot = field.find('.');
  const std::string head = field.substr(0, dot);
  const std::string key = dot == std::string::npos ? "" : field.substr(dot + 1);
  auto bad = [&]() -> double {
    throw fhaci::config_error("config error at " + field + ": unknown field");
  };
  auto rw = [&](double& slot) {
    if (value) slot = *value;
    return slot;
  };
  if (head == "system") {
    if (key == "M") {
      if (value) sys.M = static_cast<int>(*value);
      return sys.M;
    }
    if (key == "r_ex") return rw(sys.r_ex);
    if (key == "r_net") return rw(sys.r_net);
    if (key == "alpha") return rw(sys.alpha);
    if (key == "snr_db") return rw(sys.snr_db);
    if (key == "duty_factor") return rw(sys.duty_factor);
    if (key == "sigma_s_db") return rw(sys.sigma_s_db);
    if (key == "m0") {
      if (value) sys.m0 = static_cast<int>(*value);
      return sys.m0;
    }
    if (key == "x0_distance") return rw(sys.x0_distance);
    return bad();
  }
  if (head == "waveform") {
    if (!m.config.waveform) m.config.waveform = fhaci::WaveformParams{};
    auto& wf = *m.config.waveform;
    if (key == "L") return rw(wf.L);
    if (key == "R") return rw(wf.R);
    if (key == "h") return rw(wf.h);
    if (key == "psi") return rw(wf.psi);
    return bad();
  }
  if (head == "evaluation") {
    if (!m.config.evaluation) m.config.evaluation = fhaci::EvalOptions{};
    auto& ev = *m.config.evaluation;
    if (key == "shadow_draws") {
      if (value) ev.shadow_draws = static_cast<long>(*value);
      return static_cast<double>(ev.shadow_draws);
    }
    if (key == "seed") {
      if (value) ev.seed = static_cast<std::uint64_t>(*value);
      return static_cast<double>(ev.seed);
    }
    if (key == "no_aci") {
      if (value) ev.no_aci = (*value != 0.0);
      return ev.no_aci ? 1.0 : 0.0;
    }
    if (key == "workers") {
      if (value) ev.workers = static_cast<int>(*value);
      return ev.workers;
    }
    return bad();
  }
  return bad();
}

}  // namespace

fhaci_status fhaci_model_set(fhaci_model* m, const char* field, double value) {
  if (!m || !field) return einval("fhaci_model_set");
  return guarded([&] { field_rw(*m, field, &value); });
}

fhaci_status fhaci_model_get(const fhaci_model* m, const char* field,
                             double* out) {
  if (!m || !field || !out) return einval("fhaci_model_get");
  return guarded([&] {
    *out = field_rw(*const_cast<fhaci_model*>(m), field, nullptr);
  });
}

fhaci_status fhaci_model_waveform(const fhaci_model* m, fhaci_waveform* out) {
  if (!m || !out) return einval("fhaci_model_waveform");
  return guarded([&] {
    fhaci::WaveformParams wf =
        m->config.waveform ? *m->config.waveform : fhaci::WaveformParams{};
    *out = from_core(wf);
  });
}

/* ------------------------------------------------- spectrum and rate */

fhaci_status fhaci_cpfsk_psd(double h, double fT, double* out) {
  if (!out) return einval("fhaci_cpfsk_psd");
  return guarded([&] { *out = fhaci::cpfsk_psd(h, fT); });
}

fhaci_status fhaci_bandwidth(double h, double psi, double* out) {
  if (!out) return einval("fhaci_bandwidth");
  return guarded([&] { *out = fhaci::fractional_power_bandwidth(h, psi); });
}

fhaci_status fhaci_spectral_efficiency(double h, double psi, double* out) {
  if (!out) return einval("fhaci_spectral_efficiency");
  return guarded([&] { *out = fhaci::spectral_efficiency(h, psi); });
}

fhaci_status fhaci_symmetric_rate(double snr_linear, double h,
                                  long long trials, uint64_t seed,
                                  double* value, double* std_err) {
  if (!value) return einval("fhaci_symmetric_rate");
  return guarded([&] {
    auto r = fhaci::symmetric_rate(snr_linear, h, static_cast<long>(trials),
                                   seed);
    *value = r.value;
    if (std_err) *std_err = r.std_err;
  });
}

/* ----------------------------------------------------- threshold table */

fhaci_status fhaci_table_build(const double* h_grid, int nh,
                               const double* snr_db_grid, int ns,
                               long long trials, uint64_t seed, int workers,
                               fhaci_table** out) {
  if (!h_grid || !snr_db_grid || !out || nh <= 0 || ns <= 0)
    return einval("fhaci_table_build");
  *out = nullptr;
  return guarded([&] {
    fhaci::ThresholdTable::BuildSpec spec;
    spec.h_grid.assign(h_grid, h_grid + nh);
    spec.snr_db_grid.assign(snr_db_grid, snr_db_grid + ns);
    spec.trials = static_cast<long>(trials);
    spec.seed = seed;
    spec.workers = workers;
    auto t = std::make_unique<fhaci_table>();
    t->table = fhaci::ThresholdTable::build(spec);
    *out = t.release();
  });
}

fhaci_status fhaci_table_build_default(long long trials, uint64_t seed,
                                       int workers, fhaci_table** out) {
  if (!out) return einval("fhaci_table_build_default");
  *out = nullptr;
  return guarded([&] {
    auto spec = fhaci::ThresholdTable::BuildSpec::defaults();
    if (trials > 0) spec.trials = static_cast<long>(trials);
    if (seed) spec.seed = seed;
    if (workers > 0) spec.workers = workers;
    auto t = std::make_unique<fhaci_table>();
    t->table = fhaci::ThresholdTable::build(spec);
    *out = t.release();
  });
}

fhaci_status fhaci_table_load(const char* path, fhaci_table** out) {
  if (!path || !out) return einval("fhaci_table_load");
  *out = nullptr;
  return guarded([&] {
    auto t = std::make_unique<fhaci_table>();
    t->table = fhaci::ThresholdTable::load(path);
    *out = t.release();
  });
}

fhaci_status fhaci_table_save(const fhaci_table* t, const char* path) {
  if (!t || !path) return einval("fhaci_table_save");
  return guarded([&] { t->table.save(path); });
}

void fhaci_table_destroy(fhaci_table* t) { delete t; }

fhaci_status fhaci_table_rate(const fhaci_table* t, double snr_db, double h,
                              double* out) {
  if (!t || !out) return einval("fhaci_table_rate");
  return guarded([&] { *out = t->table.rate(snr_db, h); });
}

fhaci_status fhaci_table_threshold(const fhaci_table* t, double code_rate,
                                   double h, double* out) {
  if (!t || !out) return einval("fhaci_table_threshold");
  return guarded([&] { *out = t->table.threshold(code_rate, h); });
}

/* --------------------------------------------------------------- outage */

fhaci_status fhaci_outage(const fhaci_model* m, const fhaci_table* t,
                          const fhaci_waveform* wf, double beta,
                          fhaci_outage_result* out) {
  if (!m || !wf || !out) return einval("fhaci_outage");
  if (beta <= 0 && !t)
    return einval("fhaci_outage: beta <= 0 requires a table");
  return guarded([&] {
    fhaci::EvalOptions opt = m->eval();
    opt.validate();
    fhaci::WaveformParams w = to_core(*wf);
    w.validate();
    m->config.system.validate();
    fhaci::OutageResult r;
    if (beta <= 0) {
      fhaci::Objective obj(m->config.system, t->table, opt);
      double b = obj.threshold(w);
      r = obj.outage(w, b);
    } else {
      const bool shadowed =
          opt.outage_method == "shadowed" ||
          (opt.outage_method == "auto" && m->config.system.sigma_s_db > 0.0);
      if (shadowed) {
        r = fhaci::avg_outage_shadowed(m->config.system, w, beta,
                                       opt.shadow_draws, opt.quad, opt.seed,
                                       opt.no_aci);
      } else {
        r = fhaci::avg_outage_unshadowed(m->config.system, w, beta,
                                         opt.no_aci);
      }
    }
    out->value = r.value;
    out->std_err = r.std_err;
    out->draws = r.draws;
    copy_method(r.method, out->method);
  });
}

namespace {

fhaci::ConditionalContext make_conditional(const fhaci_model& m,
                                           const fhaci::WaveformParams& wf,
                                           const double* omegas, int n,
                                           double beta) {
  const auto& sys = m.config.system;
  fhaci::ConditionalContext ctx;
  ctx.omegas.assign(omegas, omegas + n);
  ctx.beta = beta;
  ctx.psi = wf.psi;
  ctx.snr_linear = sys.snr_linear();
  ctx.m0 = sys.m0;
  ctx.m_i = sys.m_i;
  ctx.collision =
      fhaci::collision_probabilities(wf.L, sys.duty_factor, wf.psi);
  return ctx;
}

}  // namespace

fhaci_status fhaci_conditional_outage(const fhaci_model* m,
                                      const fhaci_waveform* wf,
                                      const double* omegas, int n_omegas,
                                      double beta, double* out) {
  if (!m || !wf || !omegas || n_omegas < 1 || !out)
    return einval("fhaci_conditional_outage");
  return guarded([&] {
    fhaci::WaveformParams w = to_core(*wf);
    w.validate();
    auto ctx = make_conditional(*m, w, omegas, n_omegas, beta);
    ctx.validate();
    *out = fhaci::conditional_outage(ctx, m->eval().no_aci);
  });
}

fhaci_status fhaci_simulate_conditional(const fhaci_model* m,
                                        const fhaci_waveform* wf,
                                        const double* omegas, int n_omegas,
                                        double beta, long long trials,
                                        uint64_t seed,
                                        fhaci_outage_result* out) {
  if (!m || !wf || !omegas || n_omegas < 1 || trials < 1 || !out)
    return einval("fhaci_simulate_conditional");
  return guarded([&] {
    fhaci::WaveformParams w = to_core(*wf);
    w.validate();
    auto ctx = make_conditional(*m, w, omegas, n_omegas, beta);
    ctx.validate();
    auto r = fhaci::simulate_conditional_outage(ctx, trials, seed,
                                                m->eval().workers);
    out->value = r.epsilon_hat();
    out->std_err = r.std_err();
    out->draws = r.trials;
    copy_method("conditional-mc", out->method);
  });
}

fhaci_status fhaci_simulate_network(const fhaci_model* m,
                                    const fhaci_waveform* wf, double beta,
                                    long long trials, uint64_t seed,
                                    unsigned resample_mask,
                                    int explicit_channels,
                                    fhaci_outage_result* out) {
  if (!m || !wf || trials < 1 || !out) return einval("fhaci_simulate_network");
  return guarded([&] {
    fhaci::WaveformParams w = to_core(*wf);
    w.validate();
    m->config.system.validate();
    auto opt = m->eval();
    auto r = fhaci::simulate_network_outage(
        m->config.system, w, beta, trials, seed, resample_mask, opt.workers,
        opt.no_aci, explicit_channels != 0);
    out->value = r.epsilon_hat();
    out->std_err = r.std_err();
    out->draws = r.trials;
    copy_method("network-mc", out->method);
  });
}

/* ------------------------------------------------------------- capacity */

fhaci_status fhaci_link_rate(const fhaci_model* m, const fhaci_waveform* wf,
                             double* out) {
  if (!m || !wf || !out) return einval("fhaci_link_rate");
  return guarded([&] {
    fhaci::WaveformParams w = to_core(*wf);
    w.validate();
    auto opt = m->eval();
    const double psi_eta = opt.no_aci ? 0.99 : w.psi;
    *out = fhaci::link_rate_norm(w, m->config.system.duty_factor, psi_eta);
  });
}

fhaci_status fhaci_mctc(const fhaci_model* m, const fhaci_table* t,
                        const fhaci_waveform* wf,
                        fhaci_capacity_result* out) {
  if (!m || !t || !wf || !out) return einval("fhaci_mctc");
  return guarded([&] {
    fhaci::WaveformParams w = to_core(*wf);
    w.validate();
    auto opt = m->eval();
    opt.validate();
    fhaci::Objective obj(m->config.system, t->table, opt);
    auto d = obj.evaluate(w);
    out->tau = d.cap.tau;
    out->epsilon = d.cap.epsilon;
    out->link_rate = d.cap.link_rate;
    out->density = d.cap.density;
    out->beta = d.beta;
  });
}

/* ----------------------------------------------------------- optimizers */

void fhaci_nm_options_default(fhaci_nm_options* opt) {
  if (!opt) return;
  fhaci::NmOptions d;
  opt->init = from_core(d.init);
  for (int i = 0; i < 4; ++i) {
    opt->offsets[i] = d.offsets[i];
    opt->frozen[i] = d.frozen[i] ? 1 : 0;
    opt->lo[i] = d.bounds.lo[i];
    opt->hi[i] = d.bounds.hi[i];
  }
  opt->diam_tol = d.diam_tol;
  opt->spread_tol = d.spread_tol;
  opt->max_iters = d.max_iters;
}

namespace {

fhaci::NmOptions to_core(const fhaci_nm_options& o) {
  fhaci::NmOptions d;
  d.init = to_core(o.init);
  for (int i = 0; i < 4; ++i) {
    d.offsets[i] = o.offsets[i];
    d.frozen[i] = o.frozen[i] != 0;
    d.bounds.lo[i] = o.lo[i];
    d.bounds.hi[i] = o.hi[i];
  }
  d.diam_tol = o.diam_tol;
  d.spread_tol = o.spread_tol;
  d.max_iters = o.max_iters;
  return d;
}

fhaci::TauFn objective_fn(const fhaci_model& m, const fhaci_table& t,
                          std::shared_ptr<fhaci::Objective>& keep) {
  auto opt = m.eval();
  opt.validate();
  m.config.system.validate();
  keep = std::make_shared<fhaci::Objective>(m.config.system, t.table, opt);
  auto obj = keep;
  return [obj](const fhaci::WaveformParams& w) { return obj->tau(w); };
}

}  // namespace

fhaci_status fhaci_optimize_nm(const fhaci_model* m, const fhaci_table* t,
                               const fhaci_nm_options* opt,
                               fhaci_optrun** out) {
  if (!m || !t || !out) return einval("fhaci_optimize_nm");
  *out = nullptr;
  return guarded([&] {
    std::shared_ptr<fhaci::Objective> keep;
    auto tau = objective_fn(*m, *t, keep);
    fhaci::NmOptions nm = opt ? to_core(*opt) : fhaci::NmOptions{};
    auto r = std::make_unique<fhaci_optrun>();
    r->result = fhaci::nelder_mead(tau, nm);
    *out = r.release();
  });
}

fhaci_status fhaci_optimize_grid(const fhaci_model* m, const fhaci_table* t,
                                 const double* Ls, int nL, const double* Rs,
                                 int nR, const double* hs, int nh,
                                 const double* psis, int npsi,
                                 fhaci_optrun** out) {
  if (!m || !t || !Ls || !Rs || !hs || !psis || nL <= 0 || nR <= 0 ||
      nh <= 0 || npsi <= 0 || !out)
    return einval("fhaci_optimize_grid");
  *out = nullptr;
  return guarded([&] {
    std::shared_ptr<fhaci::Objective> keep;
    auto tau = objective_fn(*m, *t, keep);
    fhaci::GridSpec grid;
    grid.L.assign(Ls, Ls + nL);
    grid.R.assign(Rs, Rs + nR);
    grid.h.assign(hs, hs + nh);
    grid.psi.assign(psis, psis + npsi);
    auto r = std::make_unique<fhaci_optrun>();
    r->result = fhaci::grid_search(tau, grid);
    *out = r.release();
  });
}

void fhaci_optrun_destroy(fhaci_optrun* r) { delete r; }

fhaci_status fhaci_optrun_best(const fhaci_optrun* r, fhaci_waveform* theta,
                               double* tau) {
  if (!r) return einval("fhaci_optrun_best");
  if (theta) *theta = from_core(r->result.theta);
  if (tau) *tau = r->result.tau;
  return FHACI_OK;
}

fhaci_status fhaci_optrun_stats(const fhaci_optrun* r, long long* evaluations,
                                int* iterations, long long* failures,
                                int* restarted) {
  if (!r) return einval("fhaci_optrun_stats");
  if (evaluations) *evaluations = r->result.evaluations;
  if (iterations) *iterations = r->result.iterations;
  if (failures) *failures = r->result.failures;
  if (restarted) *restarted = r->result.restarted ? 1 : 0;
  return FHACI_OK;
}

fhaci_status fhaci_optrun_trace_size(const fhaci_optrun* r, int* n) {
  if (!r || !n) return einval("fhaci_optrun_trace_size");
  *n = static_cast<int>(r->result.trace.size());
  return FHACI_OK;
}

fhaci_status fhaci_optrun_trace_get(const fhaci_optrun* r, int i,
                                    fhaci_waveform* theta, double* tau) {
  if (!r || i < 0 || i >= static_cast<int>(r->result.trace.size()))
    return einval("fhaci_optrun_trace_get");
  if (theta) *theta = from_core(r->result.trace[static_cast<size_t>(i)].theta);
  if (tau) *tau = r->result.trace[static_cast<size_t>(i)].tau;
  return FHACI_OK;
}

namespace {

nlohmann::json run_to_json(const fhaci::OptimizationResult& r) {
  nlohmann::json j;
  j["theta"] = fhaci::waveform_to_json(r.theta);
  j["tau"] = r.tau;
  j["theta_raw"] = fhaci::waveform_to_json(r.theta_raw);
  j["tau_raw"] = r.tau_raw;
  j["evaluations"] = r.evaluations;
  j["iterations"] = r.iterations;
  j["restarted"] = r.restarted;
  j["method"] = r.method;
  return j;
}

}  // namespace

fhaci_status fhaci_profile_curve(const fhaci_model* m, const fhaci_table* t,
                                 int coord, const double* values, int n,
                                 const fhaci_nm_options* opt,
                                 char** out_json) {
  if (!m || !t || !values || n <= 0 || coord < 0 || coord > 3 || !out_json)
    return einval("fhaci_profile_curve");
  return guarded([&] {
    std::shared_ptr<fhaci::Objective> keep;
    auto tau = objective_fn(*m, *t, keep);
    fhaci::NmOptions nm = opt ? to_core(*opt) : fhaci::NmOptions{};
    std::vector<double> vals(values, values + n);
    auto runs = fhaci::profile_curve(
        tau, static_cast<fhaci::WaveformCoord>(coord), vals, nm);
    nlohmann::json arr = nlohmann::json::array();
    for (int i = 0; i < n; ++i) {
      nlohmann::json row = run_to_json(runs[static_cast<size_t>(i)]);
      row["value"] = vals[static_cast<size_t>(i)];
      arr.push_back(std::move(row));
    }
    *out_json = dup_string(arr.dump(2));
  });
}

fhaci_status fhaci_psi_vs_distance(const fhaci_model* m, const fhaci_table* t,
                                   const double* r_fracs, int nr,
                                   const double* alphas, int na,
                                   const fhaci_nm_options* opt,
                                   char** out_json) {
  if (!m || !t || !r_fracs || nr <= 0 || !alphas || na <= 0 || !out_json)
    return einval("fhaci_psi_vs_distance");
  return guarded([&] {
    auto eopt = m->eval();
    eopt.validate();
    m->config.system.validate();
    fhaci::NmOptions nm = opt ? to_core(*opt) : fhaci::NmOptions{};
    std::vector<double> rf(r_fracs, r_fracs + nr);
    std::vector<double> al(alphas, alphas + na);
    auto pts = fhaci::psi_vs_distance(m->config.system, t->table, eopt, rf,
                                      al, nm);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : pts) {
      nlohmann::json row = run_to_json(p.run);
      row["r_frac"] = p.r_frac;
      row["alpha"] = p.alpha;
      arr.push_back(std::move(row));
    }
    *out_json = dup_string(arr.dump(2));
  });
}

/* ------------------------------------------------------------ validation */

fhaci_status fhaci_validate(const char* suite, double trial_scale,
                            char** out_json, int* all_pass) {
  if (!suite || !all_pass) return einval("fhaci_validate");
  return guarded([&] {
    auto rep = fhaci::run_validate_suite(suite, trial_scale);
    *all_pass = rep.all_pass() ? 1 : 0;
    if (out_json) {
      nlohmann::json j;
      j["suite"] = rep.suite;
      j["all_pass"] = rep.all_pass();
      nlohmann::json checks = nlohmann::json::array();
      for (const auto& c : rep.checks) {
        checks.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"detail", c.detail}});
      }
      j["checks"] = std::move(checks);
      *out_json = dup_string(j.dump(2));
    }
  });
}

}  // extern "C"
