#pragma once
#include <cstdint>
#include <vector>

#include "core/channel.hpp"
#include "core/outage.hpp"
#include "core/rng.hpp"

namespace fhaci {

// Which random components the network simulator re-draws every trial.
// Components left out are drawn once up front (positions, fading, collisions)
// or disabled (shadowing), so conditional and semi-static experiments are
// expressible with the same entry point.
enum ResampleFlags : unsigned {
  RS_POSITIONS = 1u << 0,
  RS_SHADOWING = 1u << 1,
  RS_FADING = 1u << 2,
  RS_COLLISIONS = 1u << 3,
  RS_ALL = 0xFu,
};

struct TrialBatchResult {
  long long outages = 0;
  long long trials = 0;
  double epsilon_hat() const {
    return trials ? static_cast<double>(outages) / trials : 0.0;
  }
  double std_err() const {
    if (!trials) return 0.0;
    const double p = epsilon_hat();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  }
};

// Radius of a point placed uniformly (by area) on the annulus [r_ex, r_net].
double sample_annulus_radius(double r_ex, double r_net, rng_stream& rs);

// Unit-mean Nakagami-m power gain: Gamma(m, 1/m).
double sample_nakagami_gain(double m, rng_stream& rs);

// Monte Carlo outage frequency for fixed Omega: re-draws fading and collision
// states each trial.  Per-trial substreams make the count independent of
// worker partitioning.
TrialBatchResult simulate_conditional_outage(const ConditionalContext& ctx,
                                             long long trials,
                                             std::uint64_t seed,
                                             int workers = 1);

// Monte Carlo outage frequency for the full network model: annulus placement,
// shadowing, Nakagami fading and collision states, re-drawing exactly the
// components in `resample` each trial.  With explicit_channels the collision
// state is derived from sampled hop indices on L channels instead of the
// collision probabilities (L is rounded to an integer >= 2 in that case).
TrialBatchResult simulate_network_outage(const SystemConfig& cfg,
                                         const WaveformParams& wf, double beta,
                                         long long trials, std::uint64_t seed,
                                         unsigned resample = RS_ALL,
                                         int workers = 1, bool no_aci = false,
                                         bool explicit_channels = false);

}  // namespace fhaci
