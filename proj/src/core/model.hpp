#pragma once
#include <cstdint>
#include <map>
#include <string>

#include "core/capacity.hpp"
#include "core/channel.hpp"
#include "core/cpfsk.hpp"
#include "core/outage.hpp"

namespace fhaci {

// How a model evaluation resolves the outage probability and its knobs.
struct EvalOptions {
  std::string outage_method = "auto";  // auto | unshadowed | shadowed
  long shadow_draws = 10000;           // outer draws of the shadowed hybrid
  QuadratureSpec quad;
  std::uint64_t seed = 1;              // common random numbers for optimizers
  bool no_aci = false;                 // neglect adjacent-channel splatter
  int workers = 1;

  void validate() const;
};

// Maps waveform coordinates theta = (L, R, h, psi) to the capacity objective
// tau(theta) for a fixed system configuration and threshold table, caching
// the spectral-efficiency and SINR-threshold lookups that grid sweeps and
// simplex walks revisit.  Stateless across calls apart from the caches, and
// deterministic for a fixed EvalOptions.seed.
class Objective {
 public:
  Objective(const SystemConfig& cfg, const ThresholdTable& table,
            const EvalOptions& opt);

  // SINR threshold beta = C^-1(R) at the waveform's (R, h).
  double threshold(const WaveformParams& wf) const;

  // Outage probability at an explicit beta.
  OutageResult outage(const WaveformParams& wf, double beta) const;

  // Full evaluation: beta, outage and capacity.
  struct Detail {
    double beta = 0.0;
    OutageResult out;
    CapacityResult cap;
  };
  Detail evaluate(const WaveformParams& wf) const;

  // The scalar objective.  Throws domain_error / numeric_error on points the
  // model cannot evaluate (e.g. code rate beyond the achievable range).
  double tau(const WaveformParams& wf) const { return evaluate(wf).cap.tau; }

  const SystemConfig& config() const { return cfg_; }
  const EvalOptions& options() const { return opt_; }
  const ThresholdTable& table() const { return *table_; }

 private:
  double eta_cached(double h, double psi) const;
  double beta_cached(double R, double h) const;

  SystemConfig cfg_;
  const ThresholdTable* table_;
  EvalOptions opt_;
  mutable std::map<std::pair<long long, long long>, double> eta_cache_;
  mutable std::map<std::pair<long long, long long>, double> beta_cache_;
};

}  // namespace fhaci
