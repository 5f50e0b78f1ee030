#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "core/channel.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/simkit.hpp"

using namespace fhaci;

TEST_CASE("annulus radius sampling follows the area law") {
  const double re = 0.25, rn = 2.0;
  rng_stream rs(5, RNG_TEST, 0);
  const int n = 200000;
  // empirical CDF against F(r) = (r^2 - re^2) / (rn^2 - re^2) at 3 quantiles
  const double probes[] = {0.7, 1.1, 1.6};
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < n; ++i) {
    const double r = rs.u01() >= 0.0 ? sample_annulus_radius(re, rn, rs) : 0.0;
    REQUIRE(r >= re);
    REQUIRE(r <= rn);
    for (int k = 0; k < 3; ++k)
      if (r <= probes[k]) ++counts[k];
  }
  for (int k = 0; k < 3; ++k) {
    const double want =
        (probes[k] * probes[k] - re * re) / (rn * rn - re * re);
    const double got = double(counts[k]) / n;
    const double se = std::sqrt(want * (1 - want) / n);
    CHECK(std::abs(got - want) < 5.0 * se);
  }
}

TEST_CASE("nakagami power gain has unit mean and variance 1/m") {
  for (double m : {0.5, 1.0, 2.0, 4.0}) {
    CAPTURE(m);
    rng_stream rs(6, RNG_TEST, static_cast<std::uint64_t>(m * 4));
    const int n = 200000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      const double g = sample_nakagami_gain(m, rs);
      REQUIRE(g >= 0.0);
      s += g;
      s2 += g * g;
    }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::abs(mean - 1.0) < 6.0 / std::sqrt(m * n));
    CHECK(std::abs(var - 1.0 / m) / (1.0 / m) < 0.05);
  }
}

namespace {

ConditionalContext small_ctx() {
  ConditionalContext ctx;
  ctx.omegas = {1.0, 0.9, 0.15, 2.4};
  ctx.beta = 2.3;
  ctx.psi = 0.96;
  ctx.snr_linear = 10.0;
  ctx.m0 = 4;
  ctx.m_i = {1.0};
  ctx.collision = collision_probabilities(38.0, 1.0, 0.96);
  return ctx;
}

SystemConfig small_cfg() {
  SystemConfig cfg;
  cfg.M = 12;
  cfg.m0 = 2;
  cfg.m_i = {1.0};
  return cfg;
}

}  // namespace

TEST_CASE("conditional simulator is invariant to worker partitioning") {
  const auto ctx = small_ctx();
  const auto one = simulate_conditional_outage(ctx, 100000, 42, 1);
  const auto three = simulate_conditional_outage(ctx, 100000, 42, 3);
  CHECK(one.trials == 100000);
  CHECK(one.outages == three.outages);
  // and deterministic in the seed
  const auto again = simulate_conditional_outage(ctx, 100000, 42, 1);
  CHECK(again.outages == one.outages);
  const auto other = simulate_conditional_outage(ctx, 100000, 43, 1);
  CHECK(other.outages != one.outages);
}

TEST_CASE("network simulator is invariant to worker partitioning") {
  const auto cfg = small_cfg();
  WaveformParams wf{15.0, 0.6, 0.7, 0.96};
  const auto one = simulate_network_outage(cfg, wf, 2.0, 80000, 7, RS_ALL, 1);
  const auto two = simulate_network_outage(cfg, wf, 2.0, 80000, 7, RS_ALL, 2);
  CHECK(one.outages == two.outages);
  CHECK(one.trials == 80000);
}

TEST_CASE("resampling nothing repeats one frozen draw") {
  const auto cfg = small_cfg();
  WaveformParams wf{15.0, 0.6, 0.7, 0.96};
  const auto r = simulate_network_outage(cfg, wf, 2.0, 512, 11, 0u, 1);
  // with every component frozen, all trials share one outcome
  CHECK((r.outages == 0 || r.outages == r.trials));
}

TEST_CASE("partial resampling stays within the all-resample spread") {
  const auto cfg = small_cfg();
  WaveformParams wf{15.0, 0.6, 0.7, 0.96};
  // fading-only resampling still mixes (nonzero variance across trials)
  const auto fade =
      simulate_network_outage(cfg, wf, 2.0, 60000, 13, RS_FADING, 1);
  CHECK(fade.outages > 0);
  CHECK(fade.outages < fade.trials);
}

TEST_CASE("explicit hop indices reproduce the collision-probability model") {
  const auto cfg = small_cfg();
  WaveformParams wf{7.0, 0.6, 0.7, 0.96};
  const double beta = 2.0;
  const auto prob =
      simulate_network_outage(cfg, wf, beta, 300000, 21, RS_ALL, 1, false, false);
  const auto expl =
      simulate_network_outage(cfg, wf, beta, 300000, 22, RS_ALL, 1, false, true);
  const double se = std::sqrt(prob.std_err() * prob.std_err() +
                              expl.std_err() * expl.std_err());
  CHECK(std::abs(prob.epsilon_hat() - expl.epsilon_hat()) < 4.0 * se);

  // explicit channels need at least two channels after rounding
  CHECK_THROWS_AS(
      simulate_network_outage(cfg, WaveformParams{1.0, 0.6, 0.7, 0.96}, beta,
                              100, 1, RS_ALL, 1, false, true),
      domain_error);
}

TEST_CASE("splatter-free limit and splatter-neglect agree in the simulator") {
  const auto cfg = small_cfg();
  // psi = 1 leaves no adjacent-channel power, so the splatter-neglecting
  // run consumes identical randomness and must match bit for bit
  WaveformParams unity{9.0, 0.6, 0.7, 1.0};
  const auto full =
      simulate_network_outage(cfg, unity, 2.2, 50000, 33, RS_ALL, 1, false);
  const auto neglect =
      simulate_network_outage(cfg, unity, 2.2, 50000, 33, RS_ALL, 1, true);
  CHECK(full.outages == neglect.outages);

  // away from psi = 1, neglecting splatter can only lower the outage rate
  WaveformParams wf{9.0, 0.6, 0.7, 0.93};
  const auto with_aci =
      simulate_network_outage(cfg, wf, 2.2, 200000, 33, RS_ALL, 1, false);
  const auto no_aci =
      simulate_network_outage(cfg, wf, 2.2, 200000, 34, RS_ALL, 1, true);
  const double se = std::sqrt(with_aci.std_err() * with_aci.std_err() +
                              no_aci.std_err() * no_aci.std_err());
  CHECK(no_aci.epsilon_hat() < with_aci.epsilon_hat() + 4.0 * se);
}

TEST_CASE("shadowing resample flag controls the lognormal component") {
  auto cfg = small_cfg();
  cfg.sigma_s_db = 8.0;
  WaveformParams wf{15.0, 0.6, 0.7, 0.96};
  const auto with_shadow =
      simulate_network_outage(cfg, wf, 2.0, 100000, 5, RS_ALL, 1);
  const auto frozen_shadow = simulate_network_outage(
      cfg, wf, 2.0, 100000, 5, RS_ALL & ~RS_SHADOWING, 1);
  // disabling shadowing reproduces the sigma = 0 system exactly
  auto plain = cfg;
  plain.sigma_s_db = 0.0;
  const auto unshadowed =
      simulate_network_outage(plain, wf, 2.0, 100000, 5, RS_ALL, 1);
  CHECK(frozen_shadow.outages == unshadowed.outages);
  CHECK(with_shadow.outages != frozen_shadow.outages);
}

TEST_CASE("trial batch statistics") {
  TrialBatchResult r;
  r.outages = 25;
  r.trials = 100;
  CHECK(r.epsilon_hat() == doctest::Approx(0.25));
  CHECK(r.std_err() ==
        doctest::Approx(std::sqrt(0.25 * 0.75 / 100.0)).epsilon(1e-12));
  TrialBatchResult empty;
  CHECK(empty.epsilon_hat() == 0.0);
  CHECK(empty.std_err() == 0.0);
}
