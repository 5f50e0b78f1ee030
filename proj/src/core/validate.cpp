#include "core/validate.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "core/capacity.hpp"
#include "core/cpfsk.hpp"
#include "core/error.hpp"
#include "core/numerics.hpp"
#include "core/outage.hpp"
#include "core/simkit.hpp"

namespace fhaci {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void check(SuiteReport& rep, const std::string& name,
           const std::function<bool(std::string&)>& body) {
  CheckResult c;
  c.name = name;
  try {
    c.pass = body(c.detail);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  rep.checks.push_back(std::move(c));
}

bool close_rel(double got, double want, double tol, std::string& detail) {
  const double err = std::abs(got - want) / std::max(1e-300, std::abs(want));
  detail = "got " + fmt(got) + ", want " + fmt(want) + ", rel err " + fmt(err);
  return err <= tol;
}

bool close_abs(double got, double want, double tol, std::string& detail) {
  const double err = std::abs(got - want);
  detail = "got " + fmt(got) + ", want " + fmt(want) + ", abs err " + fmt(err);
  return err <= tol;
}

double msk_psd(double x) {
  // Limiting h = 1/2 spectrum, with the removable singularity at |x| = 1/4.
  const double den = 1.0 - 16.0 * x * x;
  if (std::abs(den) < 1e-9) return 0.25;
  const double c = std::cos(2.0 * M_PI * x);
  return 16.0 / (M_PI * M_PI) * c * c / (den * den);
}

SuiteReport suite_numerics() {
  SuiteReport rep;
  rep.suite = "numerics";
  check(rep, "gauss_2f1 degenerate c=a", [](std::string& d) {
    return close_rel(gauss_2f1(2.5, 1.5, 2.5, -4.0), 0.0894427190999915879,
                     1e-10, d);
  });
  check(rep, "gauss_2f1 log identity", [](std::string& d) {
    return close_rel(gauss_2f1(1.0, 1.0, 2.0, -1.0), 0.6931471805599453094,
                     1e-10, d);
  });
  check(rep, "gauss_2f1 series branch", [](std::string& d) {
    return close_rel(gauss_2f1(3.0, 1.4, 2.9, -0.75), 0.4459702549929084721,
                     1e-10, d);
  });
  check(rep, "gauss_2f1 transform branch", [](std::string& d) {
    return close_rel(gauss_2f1(3.0, 1.4, 2.9, -6.5), 0.0559816887874456691,
                     1e-10, d);
  });
  check(rep, "gauss_2f1 inverse-argument branch", [](std::string& d) {
    const double b = 1.6667;
    return close_rel(gauss_2f1(4.0, b, b + 1.0, -45.0),
                     5.24204023908356528e-4, 1e-10, d);
  });
  check(rep, "gauss_2f1 inverse-argument branch 2", [](std::string& d) {
    const double b = 2.6667;
    return close_rel(gauss_2f1(2.5, b, b + 1.0, -120.0),
                     4.34998881028109183e-5, 1e-10, d);
  });
  check(rep, "simpson sin", [](std::string& d) {
    const double v = simpson([](double x) { return std::sin(x); }, 0.0, M_PI);
    return close_abs(v, 2.0, 1e-9, d);
  });
  check(rep, "simpson exp", [](std::string& d) {
    const double v = simpson([](double x) { return std::exp(x); }, 0.0, 1.0);
    return close_rel(v, std::exp(1.0) - 1.0, 1e-8, d);
  });
  check(rep, "erf references", [](std::string& d) {
    return close_abs(erf_accurate(0.5), 0.5204998778130465377, 1e-12, d) &&
           close_abs(erf_accurate(1.5), 0.9661051464753107271, 1e-12, d) &&
           close_abs(erf_accurate(3.0), 0.9999779095030014146, 1e-12, d);
  });
  check(rep, "ln_i0 references", [](std::string& d) {
    return close_rel(ln_i0(0.1), 0.002498439233876243381, 1e-10, d) &&
           close_rel(ln_i0(2.0), 0.823993541482956282931, 1e-10, d) &&
           close_rel(ln_i0(17.5), 15.1573213461947232259, 1e-10, d) &&
           close_rel(ln_i0(250.0), 246.320832012057087533, 1e-10, d);
  });
  check(rep, "log_gamma_ratio recurrence", [](std::string& d) {
    const double m = 2.7;
    for (long l = 0; l < 6; ++l) {
      const double lhs = log_gamma_ratio(l + 1, m);
      const double rhs = log_gamma_ratio(l, m) * (l + m) / (l + 1.0);
      if (!close_rel(lhs, rhs, 1e-12, d)) return false;
    }
    return true;
  });
  return rep;
}

SuiteReport suite_specialization(double scale) {
  SuiteReport rep;
  rep.suite = "specialization";
  check(rep, "conditional splatter-free limit", [](std::string& d) {
    ConditionalContext ctx;
    ctx.omegas = {1.0, 0.9, 0.15, 2.4};
    ctx.beta = 2.3;
    ctx.psi = 1.0;
    ctx.snr_linear = 10.0;
    ctx.m0 = 4;
    ctx.m_i = {1.0};
    ctx.collision = collision_probabilities(38.0, 1.0, ctx.psi);
    return close_rel(conditional_outage(ctx, false),
                     conditional_outage(ctx, true), 1e-12, d);
  });
  check(rep, "unshadowed splatter-free limit", [](std::string& d) {
    SystemConfig cfg;
    cfg.M = 20;
    cfg.m0 = 1;
    cfg.m_i = {1.0};
    WaveformParams wf{38.0, 0.64, 0.81, 1.0};
    const double a = avg_outage_unshadowed(cfg, wf, 2.3, false).value;
    const double b = avg_outage_unshadowed(cfg, wf, 2.3, true).value;
    return close_rel(a, b, 1e-12, d);
  });
  check(rep, "shadowed splatter-free limit", [scale](std::string& d) {
    SystemConfig cfg;
    cfg.M = 10;
    cfg.sigma_s_db = 8.0;
    cfg.m0 = 2;
    cfg.m_i = {1.0};
    WaveformParams wf{30.0, 0.6, 0.8, 1.0};
    const long draws = std::max(50L, static_cast<long>(500 * scale));
    QuadratureSpec q;
    const double a =
        avg_outage_shadowed(cfg, wf, 2.0, draws, q, 7, false).value;
    const double b =
        avg_outage_shadowed(cfg, wf, 2.0, draws, q, 7, true).value;
    return close_rel(a, b, 1e-12, d);
  });
  return rep;
}

SuiteReport suite_oracle(double scale) {
  SuiteReport rep;
  rep.suite = "oracle";
  check(rep, "annulus coefficient closed vs quadrature", [](std::string& d) {
    QuadratureSpec q;
    q.abs_tol = 1e-12;
    q.rel_tol = 1e-10;
    const struct {
      double chi, m, c, beta0, alpha, re, rn;
      long l;
    } cases[] = {
        {0.96, 1.0, 1.0, 2.3, 3.0, 0.25, 2.0, 0},
        {0.02, 1.0, 1.0, 2.3, 3.0, 0.25, 2.0, 0},
        {0.96, 4.0, 1.0, 9.2, 3.5, 0.25, 2.0, 2},
        {0.5, 2.5, 1.7, 0.4, 4.0, 0.1, 1.5, 3},
        {0.96, 0.7, 1.0, 30.0, 3.0, 0.5, 4.0, 1},
    };
    for (const auto& cs : cases) {
      const double closed = eg_phi_closed(cs.chi, cs.l, cs.m, cs.c, cs.beta0,
                                          cs.alpha, cs.re, cs.rn);
      const double quad = eg_phi_quadrature(cs.chi, cs.l, cs.m, cs.c, cs.beta0,
                                            cs.alpha, cs.re, cs.rn, q);
      if (!close_rel(closed, quad, 1e-8, d)) return false;
    }
    return true;
  });
  check(rep, "conditional closed vs simulation", [scale](std::string& d) {
    ConditionalContext ctx;
    ctx.omegas = {1.0, 0.9, 0.15, 2.4};
    ctx.beta = 2.3;
    ctx.psi = 0.96;
    ctx.snr_linear = 10.0;
    ctx.m0 = 4;
    ctx.m_i = {1.0};
    ctx.collision = collision_probabilities(38.0, 1.0, ctx.psi);
    const double eps = conditional_outage(ctx);
    const long long trials = std::max(10000LL, (long long)(200000 * scale));
    const auto sim = simulate_conditional_outage(ctx, trials, 123);
    const double gap = std::abs(sim.epsilon_hat() - eps);
    d = "analytic " + fmt(eps) + ", sim " + fmt(sim.epsilon_hat()) +
        " (se " + fmt(sim.std_err()) + ")";
    return gap <= 4.0 * sim.std_err() + 1e-9;
  });
  check(rep, "unshadowed closed vs network simulation", [scale](std::string& d) {
    SystemConfig cfg;
    cfg.M = 50;
    cfg.m0 = 4;
    cfg.m_i = {1.0};
    WaveformParams wf{38.0, 0.64, 0.81, 0.96};
    const double beta = 2.4;
    const double eps = avg_outage_unshadowed(cfg, wf, beta).value;
    const long long trials = std::max(10000LL, (long long)(200000 * scale));
    const auto sim = simulate_network_outage(cfg, wf, beta, trials, 17);
    const double gap = std::abs(sim.epsilon_hat() - eps);
    d = "analytic " + fmt(eps) + ", sim " + fmt(sim.epsilon_hat()) +
        " (se " + fmt(sim.std_err()) + ")";
    return gap <= 4.0 * sim.std_err() + 1e-9;
  });
  check(rep, "shadowed hybrid vs network simulation", [scale](std::string& d) {
    SystemConfig cfg;
    cfg.M = 50;
    cfg.sigma_s_db = 8.0;
    cfg.m0 = 4;
    cfg.m_i = {1.0};
    WaveformParams wf{38.0, 0.64, 0.81, 0.96};
    const double beta = 2.4;
    QuadratureSpec q;
    const long draws = std::max(500L, static_cast<long>(4000 * scale));
    const auto hyb = avg_outage_shadowed(cfg, wf, beta, draws, q, 29);
    const long long trials = std::max(20000LL, (long long)(400000 * scale));
    const auto sim = simulate_network_outage(cfg, wf, beta, trials, 31);
    const double se =
        std::sqrt(hyb.std_err * hyb.std_err + sim.std_err() * sim.std_err());
    const double gap = std::abs(sim.epsilon_hat() - hyb.value);
    d = "hybrid " + fmt(hyb.value) + " (se " + fmt(hyb.std_err) + "), sim " +
        fmt(sim.epsilon_hat()) + " (se " + fmt(sim.std_err()) + ")";
    return gap <= 4.0 * se + 1e-9;
  });
  check(rep, "spectrum normalization", [](std::string& d) {
    const double half = adaptive_simpson(
        [](double x) { return cpfsk_psd(0.7, x); }, 0.0, 40.0, 1e-10, 48);
    return close_abs(2.0 * half, 1.0, 1e-6, d);
  });
  check(rep, "half-index spectrum matches MSK closed form", [](std::string& d) {
    for (double x : {0.0, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0, 1.6}) {
      if (!close_abs(cpfsk_psd(0.5, x), msk_psd(x), 1e-10, d)) return false;
    }
    return true;
  });
  check(rep, "99% bandwidth anchor", [](std::string& d) {
    return close_abs(fractional_power_bandwidth(0.5, 0.99), 1.1818, 5e-3, d);
  });
  check(rep, "orthogonal-index rate at its threshold", [scale](std::string& d) {
    const long trials = std::max(20000L, static_cast<long>(100000 * scale));
    const auto r = symmetric_rate(std::pow(10.0, 0.37), 1.0, trials, 41);
    d = "C = " + fmt(r.value) + " (se " + fmt(r.std_err) + ")";
    return std::abs(r.value - 0.5) <= 0.012;
  });
  return rep;
}

}  // namespace

std::vector<std::string> validate_suite_names() {
  return {"numerics", "specialization", "oracle"};
}

SuiteReport run_validate_suite(const std::string& name, double trial_scale) {
  if (!(trial_scale > 0.0 && trial_scale <= 1.0))
    throw domain_error("run_validate_suite: trial_scale must be in (0, 1]");
  if (name == "numerics") return suite_numerics();
  if (name == "specialization") return suite_specialization(trial_scale);
  if (name == "oracle") return suite_oracle(trial_scale);
  throw domain_error("run_validate_suite: unknown suite '" + name +
                     "' (expected numerics|specialization|oracle)");
}

}  // namespace fhaci
