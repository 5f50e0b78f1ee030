#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "core/cpfsk.hpp"
#include "core/error.hpp"
#include "core/numerics.hpp"

using namespace fhaci;

namespace {

// Independent limiting spectrum at h = 1/2 (minimum-shift keying), with the
// removable singularity at |fT| = 1/4 filled by its limit: the ratio
// cos(2 pi fT) / (1 - 16 fT^2) -> pi/4 there, so the density tends to
// (16/pi^2)(pi/4)^2 = 1.
double msk_psd(double fT) {
  const double den = 1.0 - 16.0 * fT * fT;
  if (std::abs(den) < 1e-9) return 1.0;
  const double c = std::cos(2.0 * M_PI * fT);
  return 16.0 / (M_PI * M_PI) * c * c / (den * den);
}

}  // namespace

TEST_CASE("psd is symmetric, finite and non-negative") {
  for (double h : {0.1, 0.3, 0.5, 0.7, 0.92}) {
    for (double fT = 0.0; fT <= 4.0; fT += 0.03125) {
      CAPTURE(h);
      CAPTURE(fT);
      const double v = cpfsk_psd(h, fT);
      REQUIRE(std::isfinite(v));
      REQUIRE(v >= -1e-12);
      CHECK(v == doctest::Approx(cpfsk_psd(h, -fT)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(cpfsk_psd(0.0, 0.1), domain_error);
  CHECK_THROWS_AS(cpfsk_psd(1.0, 0.1), domain_error);
}

TEST_CASE("psd matches the h = 1/2 limiting spectrum") {
  for (double fT : {0.0, 0.1, 0.2499, 0.25, 0.2501, 0.4, 0.75, 1.3, 2.0}) {
    CAPTURE(fT);
    CHECK(cpfsk_psd(0.5, fT) == doctest::Approx(msk_psd(fT)).epsilon(1e-9));
  }
}

TEST_CASE("psd integrates to one") {
  for (double h : {0.3, 0.5, 0.7}) {
    CAPTURE(h);
    // two-sided: 2 * integral over (0, inf); tail beyond 40 symbol rates is
    // negligible at this tolerance
    const double total =
        2.0 * adaptive_simpson([&](double f) { return cpfsk_psd(h, f); }, 0.0,
                               40.0, 1e-10);
    CHECK(total == doctest::Approx(1.0).epsilon(2e-6));
  }
}

TEST_CASE("bandwidth anchor and monotonicity") {
  // frozen anchor for the h = 1/2 spectrum at 99% containment
  CHECK(fractional_power_bandwidth(0.5, 0.99) ==
        doctest::Approx(1.1818).epsilon(5e-3));

  // bandwidth grows with requested containment
  double prev = 0.0;
  for (double psi : {0.90, 0.95, 0.96, 0.99, 0.995}) {
    const double w = fractional_power_bandwidth(0.5, psi);
    CHECK(w > prev);
    prev = w;
  }

  // and grows with modulation index at fixed containment
  prev = 0.0;
  for (double h : {0.2, 0.4, 0.6, 0.8}) {
    const double w = fractional_power_bandwidth(h, 0.96);
    CHECK(w > prev);
    prev = w;
  }

  // direct verification: the returned W really contains psi of the power
  const double h = 0.7, psi = 0.96;
  const double W = fractional_power_bandwidth(h, psi);
  const double inband =
      2.0 * adaptive_simpson([&](double f) { return cpfsk_psd(h, f); }, 0.0,
                             W / 2.0, 1e-11);
  CHECK(inband == doctest::Approx(psi).epsilon(1e-5));

  CHECK(spectral_efficiency(h, psi) == doctest::Approx(1.0 / W).epsilon(1e-12));
}

TEST_CASE("bandwidth at the h = 1 endpoint uses the documented convention") {
  const double w1 = fractional_power_bandwidth(1.0, 0.96);
  const double w2 = fractional_power_bandwidth(1.0 - 1e-4, 0.96);
  CHECK(w1 == doctest::Approx(w2).epsilon(1e-12));
  CHECK(std::isfinite(w1));
  CHECK(w1 > 0.0);
}

TEST_CASE("symmetric rate: limits, monotonicity, anchor") {
  // very high SNR: binary channel saturates at 1 bit per channel use
  auto hi = symmetric_rate(1e6, 0.8, 20000, 11);
  CHECK(hi.value > 0.98);
  // zero SNR: both branches see pure identical noise, rate collapses
  auto lo = symmetric_rate(0.0, 0.8, 20000, 12);
  CHECK(lo.value < 0.05);

  // monotone (within Monte Carlo noise) in SNR
  double prev = -1.0;
  for (double snr_db : {-5.0, 0.0, 5.0, 10.0}) {
    auto r = symmetric_rate(std::pow(10.0, snr_db / 10.0), 0.8, 40000,
                            static_cast<std::uint64_t>(100 + snr_db));
    CHECK(r.value > prev - 4.0 * r.std_err);
    prev = r.value;
  }

  // operating anchor: full-deviation modulation at ~3.7 dB crosses rate 1/2
  auto mid = symmetric_rate(std::pow(10.0, 0.37), 1.0, 100000, 41);
  CHECK(std::abs(mid.value - 0.5) < 0.012);
  CHECK(mid.std_err < 0.01);

  // deterministic in the seed
  auto again = symmetric_rate(std::pow(10.0, 0.37), 1.0, 100000, 41);
  CHECK(again.value == mid.value);

  CHECK_THROWS_AS(symmetric_rate(-1.0, 0.5, 100, 1), domain_error);
  CHECK_THROWS_AS(symmetric_rate(1.0, 1.5, 100, 1), domain_error);
}

TEST_CASE("threshold table: build, query, persist") {
  ThresholdTable::BuildSpec spec;
  spec.h_grid = {0.4, 0.7, 1.0};
  spec.snr_db_grid = {-6, -4, -2, 0, 2, 4, 6, 8, 10, 12, 14};
  spec.trials = 4000;
  spec.seed = 777;
  spec.workers = 2;
  auto table = ThresholdTable::build(spec);

  // fitted columns are non-decreasing in SNR
  for (const auto& col : table.fitted()) {
    for (size_t i = 1; i < col.size(); ++i) CHECK(col[i] >= col[i - 1]);
  }

  // rate() is non-decreasing in snr for a fixed h, clamped off-grid
  double prev = -1.0;
  for (double s = -8.0; s <= 16.0; s += 0.5) {
    const double r = table.rate(s, 0.7);
    CHECK(r >= prev - 1e-12);
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
    prev = r;
  }
  CHECK(table.rate(-100.0, 0.7) == doctest::Approx(table.rate(-6.0, 0.7)));
  CHECK(table.rate(100.0, 0.7) == doctest::Approx(table.rate(14.0, 0.7)));

  // h outside the grid clamps to the nearest column
  CHECK(table.rate(5.0, 0.1) == doctest::Approx(table.rate(5.0, 0.4)));
  CHECK(table.rate(5.0, 1.0) == doctest::Approx(table.rate(5.0, 1.0)));

  // threshold inverts rate: rate(threshold_dB) == requested code rate
  const double beta = table.threshold(0.5, 0.7);
  CHECK(beta > 0.0);
  const double beta_db = 10.0 * std::log10(beta);
  CHECK(table.rate(beta_db, 0.7) == doctest::Approx(0.5).epsilon(1e-4));

  // threshold is monotone in the code rate
  CHECK(table.threshold(0.3, 0.7) < table.threshold(0.6, 0.7));

  // unachievable rates are domain errors that name the range
  try {
    table.threshold(0.999999, 0.7);
    FAIL("expected domain_error");
  } catch (const domain_error& e) {
    CHECK(std::string(e.what()).find("achievable") != std::string::npos);
  }

  // save / load round-trip preserves every query
  const auto tmp =
      std::filesystem::temp_directory_path() / "fhaci_test_table.json";
  table.save(tmp.string());
  auto loaded = ThresholdTable::load(tmp.string());
  for (double s : {-5.0, 0.0, 3.0, 9.5})
    for (double h : {0.4, 0.55, 1.0})
      CHECK(loaded.rate(s, h) == table.rate(s, h));
  CHECK(loaded.threshold(0.5, 0.7) == table.threshold(0.5, 0.7));
  std::filesystem::remove(tmp);

  // loading garbage is a config error
  const auto bad =
      std::filesystem::temp_directory_path() / "fhaci_bad_table.json";
  {
    std::FILE* f = std::fopen(bad.string().c_str(), "w");
    std::fputs("{\"format\": \"something-else\"}", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(ThresholdTable::load(bad.string()), config_error);
  std::filesystem::remove(bad);
  CHECK_THROWS_AS(ThresholdTable::load("/nonexistent/nowhere.json"),
                  config_error);
}

TEST_CASE("threshold table build rejects bad specs") {
  ThresholdTable::BuildSpec spec;
  spec.h_grid = {0.5};
  spec.snr_db_grid = {-5, 0, 5};
  spec.trials = 1000;
  CHECK_THROWS_AS(ThresholdTable::build(spec), domain_error);
  spec.h_grid = {0.5, 0.4};
  CHECK_THROWS_AS(ThresholdTable::build(spec), domain_error);
  spec.h_grid = {0.5, 1.0};
  spec.trials = 10;
  CHECK_THROWS_AS(ThresholdTable::build(spec), domain_error);
}

TEST_CASE("default build spec matches the documented grid") {
  const auto d = ThresholdTable::BuildSpec::defaults();
  REQUIRE(d.h_grid.size() == 20);
  CHECK(d.h_grid.front() == doctest::Approx(0.05));
  CHECK(d.h_grid.back() == doctest::Approx(1.0));
  REQUIRE(d.snr_db_grid.size() == 61);
  CHECK(d.snr_db_grid.front() == doctest::Approx(-10.0));
  CHECK(d.snr_db_grid.back() == doctest::Approx(20.0));
  CHECK(d.trials == 100000);
}
