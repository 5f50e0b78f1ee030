#include "core/model.hpp"

#include <cmath>

#include "core/error.hpp"

namespace fhaci {
namespace {

constexpr double kNoAciPsiForEta = 0.99;  // containment used when splatter is neglected

inline long long quant(double x) { return std::llround(x * 1e12); }

}  // namespace

void EvalOptions::validate() const {
  if (outage_method != "auto" && outage_method != "unshadowed" &&
      outage_method != "shadowed")
    throw domain_error("options.outage_method: must be auto|unshadowed|shadowed");
  if (shadow_draws < 2)
    throw domain_error("options.shadow_draws: must be >= 2");
  if (workers < 1) throw domain_error("options.workers: must be >= 1");
}

Objective::Objective(const SystemConfig& cfg, const ThresholdTable& table,
                     const EvalOptions& opt)
    : cfg_(cfg), table_(&table), opt_(opt) {
  cfg_.validate();
  opt_.validate();
}

double Objective::eta_cached(double h, double psi) const {
  const auto key = std::make_pair(quant(h), quant(psi));
  auto it = eta_cache_.find(key);
  if (it != eta_cache_.end()) return it->second;
  if (eta_cache_.size() > 200000) eta_cache_.clear();
  const double v = spectral_efficiency(h, psi);
  eta_cache_.emplace(key, v);
  return v;
}

double Objective::beta_cached(double R, double h) const {
  const auto key = std::make_pair(quant(R), quant(h));
  auto it = beta_cache_.find(key);
  if (it != beta_cache_.end()) return it->second;
  if (beta_cache_.size() > 200000) beta_cache_.clear();
  const double v = table_->threshold(R, h);
  beta_cache_.emplace(key, v);
  return v;
}

double Objective::threshold(const WaveformParams& wf) const {
  wf.validate();
  return beta_cached(wf.R, wf.h);
}

OutageResult Objective::outage(const WaveformParams& wf, double beta) const {
  const bool shadowed = opt_.outage_method == "shadowed" ||
                        (opt_.outage_method == "auto" && cfg_.sigma_s_db > 0.0);
  if (shadowed)
    return avg_outage_shadowed(cfg_, wf, beta, opt_.shadow_draws, opt_.quad,
                               opt_.seed, opt_.no_aci);
  return avg_outage_unshadowed(cfg_, wf, beta, opt_.no_aci);
}

Objective::Detail Objective::evaluate(const WaveformParams& wf) const {
  wf.validate();
  Detail d;
  d.beta = beta_cached(wf.R, wf.h);
  d.out = outage(wf, d.beta);
  const double psi_eta = opt_.no_aci ? kNoAciPsiForEta : wf.psi;
  // Route eta through the cache, then assemble the capacity directly so the
  // cached value is actually used.
  const double eta = eta_cached(wf.h, psi_eta);
  d.cap.epsilon = d.out.value;
  d.cap.density = cfg_.density();
  d.cap.link_rate = wf.R * cfg_.duty_factor * eta / wf.L;
  d.cap.tau = d.cap.density * d.cap.link_rate * (1.0 - d.out.value);
  return d;
}

}  // namespace fhaci
