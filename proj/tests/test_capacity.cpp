#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "core/capacity.hpp"
#include "core/cpfsk.hpp"
#include "core/error.hpp"

using namespace fhaci;

TEST_CASE("link rate is R D eta / L") {
  WaveformParams wf{38.0, 0.64, 0.81, 0.96};
  const double eta = spectral_efficiency(wf.h, wf.psi);
  CHECK(link_rate_norm(wf, 1.0) ==
        doctest::Approx(wf.R * eta / wf.L).epsilon(1e-14));
  CHECK(link_rate_norm(wf, 0.4) ==
        doctest::Approx(0.4 * wf.R * eta / wf.L).epsilon(1e-14));

  // containment override redirects only the bandwidth lookup
  const double eta99 = spectral_efficiency(wf.h, 0.99);
  CHECK(link_rate_norm(wf, 1.0, 0.99) ==
        doctest::Approx(wf.R * eta99 / wf.L).epsilon(1e-14));

  CHECK_THROWS_AS(link_rate_norm(wf, 0.0), domain_error);
  CHECK_THROWS_AS(link_rate_norm(wf, 1.2), domain_error);
}

TEST_CASE("capacity assembles density, throughput and success probability") {
  SystemConfig cfg;  // M = 50, annulus area pi (4 - 1/16)
  WaveformParams wf{38.0, 0.64, 0.81, 0.96};
  const double eps = 0.1;
  const auto cap = mctc(cfg, wf, eps);
  const double eta = spectral_efficiency(wf.h, wf.psi);
  const double lambda = cfg.M / cfg.area();
  CHECK(cap.density == doctest::Approx(lambda).epsilon(1e-14));
  CHECK(cap.link_rate == doctest::Approx(wf.R * eta / wf.L).epsilon(1e-14));
  CHECK(cap.epsilon == eps);
  CHECK(cap.tau ==
        doctest::Approx(lambda * wf.R * eta / wf.L * (1.0 - eps))
            .epsilon(1e-14));

  // epsilon bounds
  CHECK(mctc(cfg, wf, 0.0).tau == doctest::Approx(lambda * cap.link_rate));
  CHECK(mctc(cfg, wf, 1.0).tau == 0.0);
  CHECK_THROWS_AS(mctc(cfg, wf, -0.1), domain_error);
  CHECK_THROWS_AS(mctc(cfg, wf, 1.1), domain_error);
}

TEST_CASE("capacity tracks duty factor through both rate and density use") {
  SystemConfig cfg;
  cfg.duty_factor = 0.5;
  WaveformParams wf{20.0, 0.5, 0.5, 0.96};
  const auto cap = mctc(cfg, wf, 0.2);
  const double eta = spectral_efficiency(wf.h, wf.psi);
  CHECK(cap.link_rate ==
        doctest::Approx(wf.R * 0.5 * eta / wf.L).epsilon(1e-14));
  CHECK(cap.tau == doctest::Approx(cfg.density() * cap.link_rate * 0.8)
                       .epsilon(1e-14));
}
