#include "core/capacity.hpp"

#include "core/cpfsk.hpp"
#include "core/error.hpp"

namespace fhaci {

double link_rate_norm(const WaveformParams& wf, double duty_factor,
                      double psi_for_eta) {
  wf.validate();
  if (!(duty_factor > 0.0 && duty_factor <= 1.0))
    throw domain_error("link_rate_norm: duty_factor must be in (0, 1]");
  const double psi_eta = psi_for_eta > 0.0 ? psi_for_eta : wf.psi;
  return wf.R * duty_factor * spectral_efficiency(wf.h, psi_eta) / wf.L;
}

CapacityResult mctc(const SystemConfig& cfg, const WaveformParams& wf,
                    double epsilon, double psi_for_eta) {
  cfg.validate();
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw domain_error("mctc: epsilon must be in [0, 1]");
  CapacityResult r;
  r.epsilon = epsilon;
  r.density = cfg.density();
  r.link_rate = link_rate_norm(wf, cfg.duty_factor, psi_for_eta);
  r.tau = r.density * r.link_rate * (1.0 - epsilon);
  return r;
}

}  // namespace fhaci
