#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "core/error.hpp"
#include "core/optimize.hpp"

using namespace fhaci;

namespace {

// Smooth concave objective with a known interior maximum, so the simplex has
// a unique target to find.  Weights mirror the very different sensitivities
// of the real surface (flat in L, steep in psi).
struct Quadratic {
  WaveformParams target{30.0, 0.6, 0.7, 0.95};
  std::array<double, 4> w{0.01, 50.0, 50.0, 2000.0};
  double peak = 10.0;
  double operator()(const WaveformParams& p) const {
    const std::array<double, 4> d{p.L - target.L, p.R - target.R,
                                  p.h - target.h, p.psi - target.psi};
    double v = peak;
    for (int i = 0; i < 4; ++i) v -= w[i] * d[i] * d[i];
    return v;
  }
};

}  // namespace

TEST_CASE("simplex finds an interior quadratic maximum") {
  Quadratic f;
  NmOptions opt;  // default init (20, 0.5, 0.5, 0.975)
  const auto res = nelder_mead([&](const WaveformParams& p) { return f(p); },
                               opt);
  CHECK(res.method == "nelder-mead");
  CHECK(res.theta.L == 30.0);  // rounded report lands on the integer
  CHECK(std::abs(res.theta.R - 0.6) < 0.01);
  CHECK(std::abs(res.theta.h - 0.7) < 0.01);
  CHECK(std::abs(res.theta.psi - 0.95) < 0.005);
  CHECK(res.tau > 9.985);
  CHECK(res.tau <= f.peak + 1e-12);
  CHECK(res.evaluations > 5);
  CHECK(res.iterations >= 1);
  CHECK_FALSE(res.restarted);

  // Best-so-far trace: one point per iteration plus the final state, with the
  // objective never decreasing along it.
  CHECK(res.trace.size() == static_cast<size_t>(res.iterations) + 1);
  for (size_t i = 1; i < res.trace.size(); ++i)
    CHECK(res.trace[i].tau >= res.trace[i - 1].tau);
}

TEST_CASE("frozen coordinates are never moved") {
  Quadratic f;
  NmOptions opt;
  opt.frozen[WF_L] = true;
  opt.frozen[WF_PSI] = true;
  const auto res = nelder_mead([&](const WaveformParams& p) { return f(p); },
                               opt);
  CHECK(res.theta.L == 20.0);      // exactly the init, no rounding applied
  CHECK(res.theta.psi == 0.975);
  CHECK(std::abs(res.theta.R - 0.6) < 0.01);
  CHECK(std::abs(res.theta.h - 0.7) < 0.01);
  const double expect =
      f.peak - 0.01 * 10.0 * 10.0 - 2000.0 * 0.025 * 0.025;
  CHECK(res.tau == doctest::Approx(expect).epsilon(1e-3));

  NmOptions all;
  all.frozen = {true, true, true, true};
  CHECK_THROWS_AS(
      nelder_mead([&](const WaveformParams& p) { return f(p); }, all),
      domain_error);
}

TEST_CASE("search bounds cap the optimum") {
  Quadratic f;
  f.target.psi = 1.05;  // pull toward a point outside the box
  NmOptions opt;
  const auto res = nelder_mead([&](const WaveformParams& p) { return f(p); },
                               opt);
  CHECK(res.theta.psi <= opt.bounds.hi[WF_PSI] + 1e-12);
  CHECK(res.theta.psi > 0.98);  // pushed against the upper bound
  for (const auto& tp : res.trace) {
    CHECK(tp.theta.psi <= opt.bounds.hi[WF_PSI] + 1e-12);
    CHECK(std::isfinite(tp.tau));
  }
}

TEST_CASE("an infeasible starting simplex is rejected up front") {
  NmOptions opt;  // corner at R = 0.525 trips the objective below
  auto f = [](const WaveformParams& p) -> double {
    if (p.R > 0.51) throw domain_error("R blocked");
    return -p.R;
  };
  CHECK_THROWS_WITH_AS(nelder_mead(f, opt),
                       doctest::Contains("initial corner"), domain_error);
}

TEST_CASE("channel count is reported rounded half-up") {
  Quadratic f;
  f.target.L = 42.3;
  NmOptions opt;
  opt.init = {40.4, 0.6, 0.7, 0.95};
  opt.frozen = {false, true, true, true};
  const auto res = nelder_mead([&](const WaveformParams& p) { return f(p); },
                               opt);
  CHECK(std::abs(res.theta_raw.L - 42.3) < 0.1);
  CHECK(res.theta.L == 42.0);
  CHECK(res.tau == doctest::Approx(f.peak - 0.01 * 0.3 * 0.3).epsilon(1e-12));
  CHECK(res.tau_raw >= res.tau);
}

TEST_CASE("rounding falls back to the raw point when the integer fails") {
  Quadratic f;
  f.target.L = 42.3;
  auto guarded = [&](const WaveformParams& p) -> double {
    if (std::abs(p.L - std::round(p.L)) < 1e-9)
      throw domain_error("integer L rejected");
    return f(p);
  };
  NmOptions opt;
  opt.init = {40.4, 0.6, 0.7, 0.95};
  opt.frozen = {false, true, true, true};
  const auto res = nelder_mead(guarded, opt);
  CHECK(std::abs(res.theta.L - std::round(res.theta.L)) >= 1e-9);
  CHECK(res.theta.L == res.theta_raw.L);
  CHECK(res.tau == res.tau_raw);
}

TEST_CASE("grid range is inclusive and endpoint-safe") {
  const auto a = grid_range(10.0, 60.0, 5.0);
  REQUIRE(a.size() == 11);
  CHECK(a.front() == 10.0);
  CHECK(a.back() == 60.0);

  // (0.74 - 0.54) / 0.02 lands just below 10 in floating point; the range
  // must still include the upper endpoint.
  const auto b = grid_range(0.54, 0.74, 0.02);
  REQUIRE(b.size() == 11);
  CHECK(b.back() == doctest::Approx(0.74).epsilon(1e-12));

  CHECK(grid_range(5.0, 5.0, 1.0) == std::vector<double>{5.0});
  CHECK_THROWS_AS(grid_range(1.0, 0.0, 0.5), domain_error);
  CHECK_THROWS_AS(grid_range(0.0, 1.0, 0.0), domain_error);
  CHECK_THROWS_AS(grid_range(0.0, 1.0, -0.1), domain_error);
}

TEST_CASE("exhaustive scan returns the exact argmax") {
  Quadratic f;
  f.target = {20.0, 0.6, 0.7, 0.95};
  GridSpec grid;
  grid.L = {10.0, 20.0, 30.0};
  grid.R = {0.4, 0.6};
  grid.h = {0.5, 0.7};
  grid.psi = {0.94, 0.95, 0.96};
  const auto res =
      grid_search([&](const WaveformParams& p) { return f(p); }, grid);
  CHECK(res.method == "grid");
  CHECK(res.theta.L == 20.0);
  CHECK(res.theta.R == 0.6);
  CHECK(res.theta.h == 0.7);
  CHECK(res.theta.psi == 0.95);
  CHECK(res.tau == f.peak);
  CHECK(res.evaluations == 36);
  CHECK(res.failures == 0);
  CHECK(res.trace.size() == 1);

  GridSpec empty = grid;
  empty.h.clear();
  CHECK_THROWS_AS(
      grid_search([&](const WaveformParams& p) { return f(p); }, empty),
      domain_error);
}

TEST_CASE("grid ties keep the lexicographically earliest point") {
  GridSpec grid;
  grid.L = {10.0, 20.0};
  grid.R = {0.4, 0.6};
  grid.h = {0.5, 0.7};
  grid.psi = {0.94, 0.96};
  const auto res =
      grid_search([](const WaveformParams&) { return 1.0; }, grid);
  CHECK(res.theta.L == 10.0);
  CHECK(res.theta.R == 0.4);
  CHECK(res.theta.h == 0.5);
  CHECK(res.theta.psi == 0.94);
}

TEST_CASE("grid failure budget is one percent of the points") {
  GridSpec grid;  // 3 * 10 * 10 * 1 = 300 points, scanned in a fixed order
  grid.L = {10.0, 20.0, 30.0};
  grid.R = grid_range(0.1, 0.55, 0.05);
  grid.h = grid_range(0.05, 0.95, 0.1);
  grid.psi = {0.96};
  REQUIRE(grid.R.size() == 10);
  REQUIRE(grid.h.size() == 10);

  long calls = 0;
  auto failing = [&](long n_fail) {
    calls = 0;
    return [&calls, n_fail](const WaveformParams&) -> double {
      if (calls++ < n_fail) throw domain_error("unreachable point");
      return 1.0;
    };
  };

  // Exactly 1% failing is tolerated and reported.
  const auto ok = grid_search(failing(3), grid);
  CHECK(ok.failures == 3);
  CHECK(ok.evaluations == 300);
  CHECK(ok.tau == 1.0);

  // One more pushes past the budget.
  CHECK_THROWS_WITH_AS(grid_search(failing(4), grid),
                       doctest::Contains("> 1%"), numeric_error);
  try {
    grid_search(failing(4), grid);
  } catch (const numeric_error& e) {
    CHECK(e.has_estimate);
    CHECK(e.best_estimate == 1.0);
  }
}

TEST_CASE("a grid with no feasible value is an error") {
  GridSpec grid;
  grid.L = {10.0};
  grid.R = {0.5};
  grid.h = {0.5};
  grid.psi = {0.96};
  auto bottomless = [](const WaveformParams&) {
    return -std::numeric_limits<double>::infinity();
  };
  CHECK_THROWS_WITH_AS(grid_search(bottomless, grid),
                       doctest::Contains("no feasible"), numeric_error);
}

TEST_CASE("profile curve pins the chosen coordinate at each value") {
  Quadratic f;
  NmOptions base;
  const std::vector<double> psis{0.93, 0.96};
  const auto runs = profile_curve(
      [&](const WaveformParams& p) { return f(p); }, WF_PSI, psis, base);
  REQUIRE(runs.size() == 2);
  CHECK(runs[0].theta.psi == 0.93);
  CHECK(runs[1].theta.psi == 0.96);
  for (const auto& r : runs) {
    CHECK(r.theta.L == 30.0);
    CHECK(std::abs(r.theta.R - 0.6) < 0.01);
    CHECK(std::abs(r.theta.h - 0.7) < 0.01);
  }
  // 0.96 sits closer to the psi target, so its restricted optimum is higher.
  CHECK(runs[1].tau > runs[0].tau);
  CHECK(runs[0].tau ==
        doctest::Approx(f.peak - 2000.0 * 0.02 * 0.02).epsilon(1e-3));

  CHECK_FALSE(base.frozen[WF_PSI]);  // caller options are left untouched
  CHECK_THROWS_AS(profile_curve([&](const WaveformParams& p) { return f(p); },
                                WF_PSI, {}, base),
                  domain_error);
}
