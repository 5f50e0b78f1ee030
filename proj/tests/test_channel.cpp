#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "core/channel.hpp"
#include "core/error.hpp"

using namespace fhaci;

TEST_CASE("collision probabilities: closed forms and exact complement") {
  for (double L : {1.0, 2.0, 25.0, 38.0, 199.5}) {
    for (double D : {0.25, 1.0}) {
      for (double psi : {0.8, 0.96, 1.0}) {
        CAPTURE(L);
        CAPTURE(D);
        CAPTURE(psi);
        const auto cm = collision_probabilities(L, D, psi);
        CHECK(cm.p_c == doctest::Approx(D / L).epsilon(1e-15));
        CHECK(cm.p_a ==
              doctest::Approx(2.0 * D * (L - 1.0) / (L * L)).epsilon(1e-15));
        CHECK(cm.K_s == doctest::Approx((1.0 - psi) / 2.0).epsilon(1e-15));
        // exact floating-point complement, not merely approximate
        CHECK(cm.p_n == 1.0 - (cm.p_c + cm.p_a));
        CHECK(cm.p_c >= 0.0);
        CHECK(cm.p_a >= 0.0);
        CHECK(cm.p_n >= 0.0);
      }
    }
  }
  // single channel: every active interferer collides co-channel
  const auto one = collision_probabilities(1.0, 1.0, 0.96);
  CHECK(one.p_c == 1.0);
  CHECK(one.p_a == 0.0);
  CHECK(one.p_n == 0.0);
  // full in-band power leaves no splatter
  CHECK(collision_probabilities(10, 1.0, 1.0).K_s == 0.0);
}

TEST_CASE("collision probability domain errors") {
  CHECK_THROWS_AS(collision_probabilities(0.5, 1.0, 0.96), domain_error);
  CHECK_THROWS_AS(collision_probabilities(10, 0.0, 0.96), domain_error);
  CHECK_THROWS_AS(collision_probabilities(10, 1.5, 0.96), domain_error);
  CHECK_THROWS_AS(collision_probabilities(10, 1.0, 0.5), domain_error);
}

TEST_CASE("instantaneous SINR arithmetic") {
  // gamma = psi g0 Omega0 / (1/Gamma + sum w_i g_i Omega_i)
  std::vector<InterfererState> ifs{{0.96, 2.0, 0.5},   // co-channel
                                   {0.02, 1.0, 3.0},   // adjacent splatter
                                   {0.0, 7.0, 9.0}};   // no collision
  const double psi = 0.96, g0 = 1.5, om0 = 1.0, snr = 10.0;
  const double denom = 1.0 / snr + 0.96 * 2.0 * 0.5 + 0.02 * 1.0 * 3.0;
  const double want = psi * g0 * om0 / denom;
  CHECK(instantaneous_sinr(g0, om0, psi, snr, ifs) ==
        doctest::Approx(want).epsilon(1e-14));
  // no interferers: pure SNR scaling
  CHECK(instantaneous_sinr(1.0, 2.0, 0.9, 4.0, {}) ==
        doctest::Approx(0.9 * 2.0 * 4.0).epsilon(1e-14));
}

TEST_CASE("system config accessors") {
  SystemConfig cfg;
  cfg.M = 4;
  cfg.m_i = {1.0, 2.0, 3.0, 4.0};
  cfg.power_ratios = {0.5};
  CHECK(cfg.area() == doctest::Approx(M_PI * (4.0 - 0.0625)).epsilon(1e-14));
  CHECK(cfg.density() == doctest::Approx(4.0 / cfg.area()).epsilon(1e-14));
  CHECK(cfg.snr_linear() == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(cfg.mi_of(2) == 3.0);
  CHECK(cfg.ci_of(3) == 0.5);
  CHECK_FALSE(cfg.identical_interferers());
  cfg.m_i = {2.0};
  CHECK(cfg.mi_of(3) == 2.0);
  CHECK(cfg.identical_interferers());
  cfg.power_ratios.clear();
  CHECK(cfg.ci_of(0) == 1.0);
  cfg.validate();  // defaults with these edits remain valid
}

TEST_CASE("validation errors name the offending field") {
  auto message_of = [](auto&& fn) -> std::string {
    try {
      fn();
    } catch (const domain_error& e) {
      return e.what();
    }
    return "";
  };

  SystemConfig cfg;
  cfg.alpha = 2.0;
  auto msg = message_of([&] { cfg.validate(); });
  CHECK(msg.find("system.alpha") != std::string::npos);

  SystemConfig cfg2;
  cfg2.m_i = {1.0, 1.0, 1.0};  // M = 50, so neither 1 nor M entries
  msg = message_of([&] { cfg2.validate(); });
  CHECK(msg.find("system.m_i") != std::string::npos);

  SystemConfig cfg3;
  cfg3.r_net = 0.1;  // below r_ex
  msg = message_of([&] { cfg3.validate(); });
  CHECK(msg.find("system.r_net") != std::string::npos);

  WaveformParams wf;
  wf.R = 1.0;
  msg = message_of([&] { wf.validate(); });
  CHECK(msg.find("waveform.R") != std::string::npos);

  WaveformParams wf2;
  wf2.psi = 0.4;
  msg = message_of([&] { wf2.validate(); });
  CHECK(msg.find("waveform.psi") != std::string::npos);
}

TEST_CASE("waveform defaults are valid") {
  WaveformParams wf;
  wf.validate();
  SystemConfig cfg;
  cfg.validate();
}
