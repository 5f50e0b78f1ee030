#include "core/simkit.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace fhaci {

double sample_annulus_radius(double r_ex, double r_net, rng_stream& rs) {
  if (!(r_ex >= 0.0 && r_net > r_ex))
    throw domain_error("sample_annulus_radius: need 0 <= r_ex < r_net");
  const double u = rs.u01();
  return std::sqrt(u * (r_net * r_net - r_ex * r_ex) + r_ex * r_ex);
}

double sample_nakagami_gain(double m, rng_stream& rs) {
  return rs.gamma(m) / m;
}

namespace {

// Runs `trials` single-trial predicates split into fixed-size blocks; block
// b holds trials [b*2^16, ...).  Per-trial substreams make each trial's draws
// independent of the partition, and the per-block tallies are summed in block
// order, so the result is identical for any worker count.
template <typename TrialFn>
TrialBatchResult run_blocks(long long trials, int workers, const TrialFn& fn) {
  constexpr long long kBlock = 1 << 16;
  const long long nblocks = (trials + kBlock - 1) / kBlock;
  std::vector<long long> counts(static_cast<size_t>(nblocks), 0);
  const int nw = std::max(1, workers);
  auto work = [&](int w) {
    for (long long b = w; b < nblocks; b += nw) {
      const long long lo = b * kBlock;
      const long long hi = std::min(trials, lo + kBlock);
      long long c = 0;
      for (long long t = lo; t < hi; ++t) c += fn(t) ? 1 : 0;
      counts[static_cast<size_t>(b)] = c;
    }
  };
  if (nw == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nw; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  TrialBatchResult res;
  res.trials = trials;
  for (long long b = 0; b < nblocks; ++b)
    res.outages += counts[static_cast<size_t>(b)];
  return res;
}

}  // namespace

TrialBatchResult simulate_conditional_outage(const ConditionalContext& ctx,
                                             long long trials,
                                             std::uint64_t seed, int workers) {
  ctx.validate();
  if (trials < 1)
    throw domain_error("simulate_conditional_outage: trials must be >= 1");
  const size_t M = ctx.omegas.size() - 1;
  const double inv_snr = 1.0 / ctx.snr_linear;
  const double pc = ctx.collision.p_c;
  const double pca = ctx.collision.p_c + ctx.collision.p_a;
  const double ks = ctx.collision.K_s;
  const double m0 = static_cast<double>(ctx.m0);

  auto trial = [&](long long t) {
    rng_stream rs(seed, RNG_COND_SIM, static_cast<std::uint64_t>(t));
    const double g0 = rs.gamma(m0) / m0;
    double den = inv_snr;
    for (size_t i = 0; i < M; ++i) {
      const double u = rs.u01();
      double w;
      if (u < pc) w = ctx.psi;
      else if (u < pca) w = ks;
      else w = 0.0;
      if (w > 0.0) {
        const double m = ctx.m_i.size() == 1 ? ctx.m_i[0] : ctx.m_i[i];
        den += w * (rs.gamma(m) / m) * ctx.omegas[i + 1];
      }
    }
    return ctx.psi * g0 * ctx.omegas[0] / den <= ctx.beta;
  };
  return run_blocks(trials, workers, trial);
}

TrialBatchResult simulate_network_outage(const SystemConfig& cfg,
                                         const WaveformParams& wf, double beta,
                                         long long trials, std::uint64_t seed,
                                         unsigned resample, int workers,
                                         bool no_aci, bool explicit_channels) {
  cfg.validate();
  wf.validate();
  if (!(beta > 0.0))
    throw domain_error("simulate_network_outage: beta must be > 0");
  if (trials < 1)
    throw domain_error("simulate_network_outage: trials must be >= 1");

  const CollisionModel cm =
      collision_probabilities(wf.L, cfg.duty_factor, wf.psi);
  const double ks = no_aci ? 0.0 : cm.K_s;
  const int M = cfg.M;
  const double inv_snr = 1.0 / cfg.snr_linear();
  const double omega0_base = std::pow(cfg.x0_distance, -cfg.alpha);
  long L_int = 0;
  if (explicit_channels) {
    L_int = std::llround(wf.L);
    if (L_int < 2)
      throw domain_error(
          "simulate_network_outage: explicit_channels needs integer L >= 2");
  }

  // Components not being resampled are drawn once from dedicated frozen
  // substreams (shadowing is simply disabled when not resampled).
  std::vector<double> frozen_omega(M), frozen_w(M), frozen_g(M);
  double frozen_g0 = 1.0;
  if (!(resample & RS_POSITIONS)) {
    rng_stream rs(seed, RNG_NET_FROZEN, 0);
    for (int i = 0; i < M; ++i) {
      const double r = sample_annulus_radius(cfg.r_ex, cfg.r_net, rs);
      frozen_omega[i] = cfg.ci_of(i) * std::pow(r, -cfg.alpha);
    }
  }
  if (!(resample & RS_FADING)) {
    rng_stream rs(seed, RNG_NET_FROZEN, 2);
    frozen_g0 = sample_nakagami_gain(cfg.m0, rs);
    for (int i = 0; i < M; ++i)
      frozen_g[i] = sample_nakagami_gain(cfg.mi_of(i), rs);
  }
  if (!(resample & RS_COLLISIONS)) {
    rng_stream rs(seed, RNG_NET_FROZEN, 3);
    for (int i = 0; i < M; ++i) {
      const double u = rs.u01();
      frozen_w[i] = u < cm.p_c ? wf.psi : (u < cm.p_c + cm.p_a ? ks : 0.0);
    }
  }

  auto trial = [&](long long t) {
    rng_stream rs(seed, RNG_NET_SIM, static_cast<std::uint64_t>(t));
    const double g0 =
        (resample & RS_FADING) ? sample_nakagami_gain(cfg.m0, rs) : frozen_g0;
    double omega0 = omega0_base;
    if ((resample & RS_SHADOWING) && cfg.sigma_s_db > 0.0)
      omega0 *= std::pow(10.0, cfg.sigma_s_db * rs.normal() / 10.0);
    long ch0 = 0;
    if (explicit_channels)
      ch0 = static_cast<long>(rs.u01() * static_cast<double>(L_int));
    double den = inv_snr;
    for (int i = 0; i < M; ++i) {
      double omega;
      if (resample & RS_POSITIONS) {
        const double r = sample_annulus_radius(cfg.r_ex, cfg.r_net, rs);
        omega = cfg.ci_of(i) * std::pow(r, -cfg.alpha);
      } else {
        omega = frozen_omega[i];
      }
      if ((resample & RS_SHADOWING) && cfg.sigma_s_db > 0.0)
        omega *= std::pow(10.0, cfg.sigma_s_db * rs.normal() / 10.0);
      double w;
      if (resample & RS_COLLISIONS) {
        if (explicit_channels) {
          w = 0.0;
          if (rs.u01() < cfg.duty_factor) {
            const long ch =
                static_cast<long>(rs.u01() * static_cast<double>(L_int));
            const long dist = std::labs(ch - ch0);
            if (dist == 0) w = wf.psi;
            else if (dist == 1) w = ks;
          }
        } else {
          const double u = rs.u01();
          w = u < cm.p_c ? wf.psi : (u < cm.p_c + cm.p_a ? ks : 0.0);
        }
      } else {
        w = frozen_w[i];
      }
      if (w > 0.0) {
        const double g = (resample & RS_FADING)
                             ? sample_nakagami_gain(cfg.mi_of(i), rs)
                             : frozen_g[i];
        den += w * g * omega;
      }
    }
    return wf.psi * g0 * omega0 / den <= beta;
  };
  return run_blocks(trials, workers, trial);
}

}  // namespace fhaci
