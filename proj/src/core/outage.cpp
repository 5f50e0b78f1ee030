#include "core/outage.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace fhaci {
namespace {

// x^p where p = m + l is integral for integer-valued m; falls back to pow.
inline double pow_maybe_int(double x, double p) {
  const long pi = static_cast<long>(p);
  if (static_cast<double>(pi) == p && pi >= 0 && pi < 1024)
    return pow_int(x, pi);
  return std::pow(x, p);
}

// phi_l(chi, omega) = (chi omega / m)^l (chi beta0 omega / m + 1)^-(m+l):
// the fading-averaged contribution of one interferer in collision state chi.
inline double phi_l(double chi, long l, double m, double beta0, double omega) {
  if (chi == 0.0) return l == 0 ? 1.0 : 0.0;
  const double t = chi * omega / m;
  const double base = 1.0 / (beta0 * t + 1.0);
  double v = pow_maybe_int(base, m + static_cast<double>(l));
  if (l > 0) v *= pow_int(t, l);
  return v;
}

// Coefficient Gamma(l+m) / (l! Gamma(m)) for l = 0..m0-1 by recurrence.
std::vector<double> gamma_ratio_row(int m0, double m) {
  std::vector<double> r(m0);
  r[0] = 1.0;
  for (int l = 0; l + 1 < m0; ++l) r[l + 1] = r[l] * (l + m) / (l + 1.0);
  return r;
}

// Per-interferer coefficient polynomial G_0..G_{m0-1} for fixed omega.
std::vector<double> g_poly_conditional(double omega, double m, int m0,
                                       const CollisionModel& cm, double psi,
                                       double beta0, bool no_aci) {
  const std::vector<double> coef = gamma_ratio_row(m0, m);
  std::vector<double> g(m0, 0.0);
  for (int l = 0; l < m0; ++l) {
    double v = coef[l] * cm.p_c * phi_l(psi, l, m, beta0, omega);
    if (!no_aci && cm.K_s > 0.0)
      v += coef[l] * cm.p_a * phi_l(cm.K_s, l, m, beta0, omega);
    g[l] = v;
  }
  // The no-collision mass -- and the adjacent mass when splatter carries no
  // power -- contributes the degenerate l = 0 term.
  g[0] += cm.p_n;
  if (no_aci || cm.K_s == 0.0) g[0] += cm.p_a;
  return g;
}

std::vector<double> poly_mul_trunc(const std::vector<double>& a,
                                   const std::vector<double>& b, int m0) {
  std::vector<double> out(m0, 0.0);
  for (int k = 0; k < m0; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += a[j] * b[k - j];
    out[k] = acc;
  }
  return out;
}

std::vector<double> poly_pow_trunc(const std::vector<double>& p, int count,
                                   int m0) {
  std::vector<double> out(m0, 0.0);
  out[0] = 1.0;
  for (int i = 0; i < count; ++i) out = poly_mul_trunc(out, p, m0);
  return out;
}

double epsilon_from_fbar(double fbar, const char* who) {
  const double eps = 1.0 - fbar;
  if (eps < -1e-12 || eps > 1.0 + 1e-12) {
    std::ostringstream os;
    os << who << ": outage " << eps << " outside [0, 1]";
    throw numeric_error(os.str(), std::clamp(eps, 0.0, 1.0));
  }
  return std::clamp(eps, 0.0, 1.0);
}

}  // namespace

void ConditionalContext::validate() const {
  if (omegas.empty()) throw domain_error("conditional.omegas: must include Omega_0");
  for (double w : omegas)
    if (!(w > 0.0)) throw domain_error("conditional.omegas: entries must be > 0");
  if (!(beta > 0.0)) throw domain_error("conditional.beta: must be > 0");
  if (!(psi > 0.5 && psi <= 1.0))
    throw domain_error("conditional.psi: must be in (0.5, 1]");
  if (!(snr_linear > 0.0))
    throw domain_error("conditional.snr_linear: must be > 0");
  if (m0 < 1) throw domain_error("conditional.m0: must be a positive integer");
  const size_t M = omegas.size() - 1;
  if (m_i.size() != 1 && m_i.size() != M)
    throw domain_error("conditional.m_i: must hold 1 or M entries");
  for (double m : m_i)
    if (!(m > 0.0)) throw domain_error("conditional.m_i: entries must be > 0");
}

double conditional_outage(const ConditionalContext& ctx, bool no_aci) {
  ctx.validate();
  const double beta0 = ctx.beta * ctx.m0 / (ctx.psi * ctx.omegas[0]);
  const double z = 1.0 / ctx.snr_linear;
  const size_t M = ctx.omegas.size() - 1;
  std::vector<double> H(ctx.m0, 0.0);
  H[0] = 1.0;
  for (size_t i = 0; i < M; ++i) {
    const double m = ctx.m_i.size() == 1 ? ctx.m_i[0] : ctx.m_i[i];
    const auto g = g_poly_conditional(ctx.omegas[i + 1], m, ctx.m0,
                                      ctx.collision, ctx.psi, beta0, no_aci);
    H = poly_mul_trunc(H, g, ctx.m0);
  }
  return epsilon_from_fbar(fbar_from_coeffs(H, beta0, z), "conditional_outage");
}

std::vector<double> hk_fold(const std::vector<std::vector<double>>& per_interferer,
                            int m0) {
  if (m0 < 1) throw domain_error("hk_fold: m0 must be >= 1");
  std::vector<double> H(m0, 0.0);
  H[0] = 1.0;
  for (const auto& g : per_interferer) {
    if (g.size() != static_cast<size_t>(m0))
      throw domain_error("hk_fold: every polynomial must hold m0 coefficients");
    H = poly_mul_trunc(H, g, m0);
  }
  return H;
}

double fbar_from_coeffs(const std::vector<double>& H, double beta0, double z) {
  const int m0 = static_cast<int>(H.size());
  double total = 0.0, b0k = 1.0;
  const double bz = beta0 * z;
  for (int k = 0; k < m0; ++k) {
    double term = 1.0, acc = 1.0;
    for (int s = 1; s <= m0 - 1 - k; ++s) {
      term *= bz / s;
      acc += term;
    }
    total += b0k * H[k] * acc;
    b0k *= beta0;
  }
  return std::exp(-bz) * total;
}

// --------------------------------------------- annulus-averaged coefficients

double eg_phi_closed(double chi, long l, double m, double c, double beta0,
                     double alpha, double r_ex, double r_net) {
  if (chi == 0.0) return l == 0 ? 1.0 : 0.0;
  if (!(r_ex > 0.0 && r_net > r_ex))
    throw domain_error("eg_phi_closed: need 0 < r_ex < r_net");
  const double b = m + 2.0 / alpha;
  const double area = M_PI * (r_net * r_net - r_ex * r_ex);
  const double pref = 2.0 * M_PI * std::pow(m, m) /
                      (alpha * area * std::pow(beta0, m + l));
  auto I = [&](double x) {
    return gauss_2f1(m + l, b, b + 1.0, -m / (x * beta0)) /
           (std::pow(x, m) * b);
  };
  const double x_net = chi * c * std::pow(r_net, -alpha);
  const double x_ex = chi * c * std::pow(r_ex, -alpha);
  return pref * (r_net * r_net * I(x_net) - r_ex * r_ex * I(x_ex));
}

double eg_phi_quadrature(double chi, long l, double m, double c, double beta0,
                         double alpha, double r_ex, double r_net,
                         const QuadratureSpec& quad) {
  if (chi == 0.0) return l == 0 ? 1.0 : 0.0;
  if (!(r_ex > 0.0 && r_net > r_ex))
    throw domain_error("eg_phi_quadrature: need 0 < r_ex < r_net");
  const double area = M_PI * (r_net * r_net - r_ex * r_ex);
  const double lo = c * std::pow(r_net, -alpha);
  const double hi = c * std::pow(r_ex, -alpha);
  const double norm = 2.0 * M_PI * std::pow(c, 2.0 / alpha) / (area * alpha);
  // Integrate in u = ln(omega): the power-law pdf becomes gentle.
  auto f = [&](double u) {
    const double w = std::exp(u);
    const double pdf = norm * std::pow(w, -2.0 / alpha - 1.0);
    return phi_l(chi, l, m, beta0, w) * pdf * w;
  };
  return simpson(f, std::log(lo), std::log(hi), quad);
}

namespace {

// Full annulus-averaged coefficient E{G_l} for one interferer (no shadowing).
double eg_unshadowed(long l, double m, double c, double beta0,
                     const CollisionModel& cm, double psi, double alpha,
                     double r_ex, double r_net, bool no_aci, double coef_l) {
  double v = coef_l * cm.p_c *
             eg_phi_closed(psi, l, m, c, beta0, alpha, r_ex, r_net);
  if (!no_aci && cm.K_s > 0.0)
    v += coef_l * cm.p_a *
         eg_phi_closed(cm.K_s, l, m, c, beta0, alpha, r_ex, r_net);
  if (l == 0) {
    v += cm.p_n;
    if (no_aci || cm.K_s == 0.0) v += cm.p_a;
  }
  return v;
}

}  // namespace

OutageResult avg_outage_unshadowed(const SystemConfig& cfg,
                                   const WaveformParams& wf, double beta,
                                   bool no_aci) {
  cfg.validate();
  wf.validate();
  if (!(beta > 0.0)) throw domain_error("avg_outage_unshadowed: beta must be > 0");
  if (cfg.sigma_s_db != 0.0)
    throw domain_error(
        "avg_outage_unshadowed: sigma_s_db must be 0 (use the shadowed path)");
  const CollisionModel cm =
      collision_probabilities(wf.L, cfg.duty_factor, wf.psi);
  const double omega0 = std::pow(cfg.x0_distance, -cfg.alpha);
  const double beta0 = beta * cfg.m0 / (wf.psi * omega0);
  const double z = 1.0 / cfg.snr_linear();

  // Group interferers sharing (m, c): their coefficient polynomials are
  // identical and the fold is a truncated power.
  std::map<std::pair<double, double>, int> groups;
  for (int i = 0; i < cfg.M; ++i)
    ++groups[{cfg.mi_of(i), cfg.ci_of(i)}];

  std::vector<double> H(cfg.m0, 0.0);
  H[0] = 1.0;
  for (const auto& [key, count] : groups) {
    const auto [m, c] = key;
    const std::vector<double> coef = gamma_ratio_row(cfg.m0, m);
    std::vector<double> g(cfg.m0);
    for (int l = 0; l < cfg.m0; ++l)
      g[l] = eg_unshadowed(l, m, c, beta0, cm, wf.psi, cfg.alpha, cfg.r_ex,
                           cfg.r_net, no_aci, coef[l]);
    H = poly_mul_trunc(H, poly_pow_trunc(g, count, cfg.m0), cfg.m0);
  }
  OutageResult res;
  res.value = epsilon_from_fbar(fbar_from_coeffs(H, beta0, z),
                                "avg_outage_unshadowed");
  res.method = "unshadowed-closed";
  return res;
}

// ------------------------------------------------------ shadowed evaluator

namespace {

// Difference of standard normal CDFs Phi(b) - Phi(a) for b >= a without
// cancellation in either tail.
double normal_cdf_diff(double a, double b) {
  if (a > 0.0)
    return 0.5 * (std::erfc(a * M_SQRT1_2) - std::erfc(b * M_SQRT1_2));
  if (b < 0.0)
    return 0.5 * (std::erfc(-b * M_SQRT1_2) - std::erfc(-a * M_SQRT1_2));
  return 0.5 * (std::erf(b * M_SQRT1_2) + std::erf(-a * M_SQRT1_2));
}

}  // namespace

double shadowed_omega_pdf(double omega, double c, double alpha, double r_ex,
                          double r_net, double sigma_s_db) {
  if (!(sigma_s_db > 0.0))
    throw domain_error("shadowed_omega_pdf: sigma_s_db must be > 0");
  if (!(r_ex > 0.0 && r_net > r_ex))
    throw domain_error("shadowed_omega_pdf: need 0 < r_ex < r_net");
  if (!(omega > 0.0)) return 0.0;
  const double sx = sigma_s_db * M_LN10 / 10.0;  // lognormal sigma in nats
  const double area = M_PI * (r_net * r_net - r_ex * r_ex);
  auto t_of = [&](double r) {
    const double z = omega * std::pow(r, alpha) / c;
    return std::log(z) / sx - 2.0 * sx / alpha;
  };
  const double t_ex = t_of(r_ex), t_net = t_of(r_net);
  const double bracket = normal_cdf_diff(t_ex, t_net);
  return 2.0 * M_PI / (alpha * area) * std::pow(c, 2.0 / alpha) *
         std::exp(2.0 * sx * sx / (alpha * alpha)) *
         std::pow(omega, -2.0 / alpha - 1.0) * bracket;
}

namespace {

// Quadrature nodes for one (m, c) interferer group: abscissae omega_j and
// composite-Simpson weights already multiplied by the shadowed pdf and the
// map Jacobian, so expectations reduce to dot products.
struct ShadowNodes {
  double m = 1.0;
  int count = 0;                 // interferers in this group
  std::vector<double> omega;
  std::vector<double> w;
};

// Integrand values on the map omega = s t / (1 - t), t in (0, 1); endpoints
// carry zero density.
void fill_nodes(ShadowNodes& n, int panels, double s, double c,
                const SystemConfig& cfg) {
  const int nn = panels + 1;
  n.omega.assign(nn, 0.0);
  n.w.assign(nn, 0.0);
  const double ht = 1.0 / panels;
  for (int j = 1; j < panels; ++j) {
    const double t = j * ht;
    const double om = s * t / (1.0 - t);
    const double jac = s / ((1.0 - t) * (1.0 - t));
    const double simp = (j % 2) ? 4.0 : 2.0;
    n.omega[j] = om;
    n.w[j] = simp * ht / 3.0 * jac *
             shadowed_omega_pdf(om, c, cfg.alpha, cfg.r_ex, cfg.r_net,
                                cfg.sigma_s_db);
  }
}

// Expectation of phi_l over the group's nodes at a given beta0 and chi.
double nodes_phi(const ShadowNodes& n, double chi, long l, double beta0) {
  if (chi == 0.0) return l == 0 ? 1.0 : 0.0;
  double acc = 0.0;
  for (size_t j = 0; j < n.omega.size(); ++j) {
    if (n.w[j] == 0.0) continue;
    acc += n.w[j] * phi_l(chi, l, n.m, beta0, n.omega[j]);
  }
  return acc;
}

ShadowNodes build_shadow_nodes(const SystemConfig& cfg, double m, double c,
                               int count, double psi, double beta0_mid,
                               const QuadratureSpec& quad) {
  ShadowNodes nodes;
  nodes.m = m;
  nodes.count = count;
  const double s =
      c * std::pow(cfg.r_net * cfg.r_ex, -cfg.alpha / 2.0);  // pivot power
  // Calibrate the panel count on probe functionals spanning the source
  // shadowing swing, then freeze the nodes for the whole evaluation.
  const double swing = std::pow(10.0, 3.0 * cfg.sigma_s_db / 10.0);
  const std::vector<double> probes = {beta0_mid / swing, beta0_mid,
                                      beta0_mid * swing};
  int panels = std::max(quad.panels, 2);
  if (panels % 2) ++panels;
  fill_nodes(nodes, panels, s, c, cfg);
  std::vector<double> prev(probes.size());
  for (size_t p = 0; p < probes.size(); ++p)
    prev[p] = nodes_phi(nodes, psi, 0, probes[p]);
  while (true) {
    if (panels * 2 > quad.panel_cap) {
      std::ostringstream os;
      os << "avg_outage_shadowed: node calibration hit panel cap "
         << quad.panel_cap;
      throw numeric_error(os.str(), prev[1]);
    }
    panels *= 2;
    fill_nodes(nodes, panels, s, c, cfg);
    bool ok = true;
    for (size_t p = 0; p < probes.size(); ++p) {
      const double cur = nodes_phi(nodes, psi, 0, probes[p]);
      if (std::abs(cur - prev[p]) >
          std::max(quad.abs_tol, quad.rel_tol * std::abs(cur)))
        ok = false;
      prev[p] = cur;
    }
    if (ok) break;
  }
  return nodes;
}

}  // namespace

OutageResult avg_outage_shadowed(const SystemConfig& cfg,
                                 const WaveformParams& wf, double beta,
                                 long mc_draws, const QuadratureSpec& quad,
                                 std::uint64_t seed, bool no_aci) {
  cfg.validate();
  wf.validate();
  if (!(beta > 0.0)) throw domain_error("avg_outage_shadowed: beta must be > 0");
  if (!(cfg.sigma_s_db > 0.0))
    throw domain_error(
        "avg_outage_shadowed: sigma_s_db must be > 0 (use the unshadowed path)");
  if (mc_draws < 2)
    throw domain_error("avg_outage_shadowed: mc_draws must be >= 2");

  const CollisionModel cm =
      collision_probabilities(wf.L, cfg.duty_factor, wf.psi);
  const double omega0_mean = std::pow(cfg.x0_distance, -cfg.alpha);
  const double beta0_mid = beta * cfg.m0 / (wf.psi * omega0_mean);
  const double z = 1.0 / cfg.snr_linear();

  std::map<std::pair<double, double>, int> groups;
  for (int i = 0; i < cfg.M; ++i)
    ++groups[{cfg.mi_of(i), cfg.ci_of(i)}];
  std::vector<ShadowNodes> nodes;
  for (const auto& [key, count] : groups)
    nodes.push_back(build_shadow_nodes(cfg, key.first, key.second, count,
                                       wf.psi, beta0_mid, quad));

  const double sx_db = cfg.sigma_s_db;
  double sum = 0.0, sumsq = 0.0;
  for (long d = 0; d < mc_draws; ++d) {
    rng_stream rs(seed, RNG_SHADOW_OUTER, static_cast<std::uint64_t>(d));
    const double xi0 = sx_db * rs.normal();
    const double omega0 = omega0_mean * std::pow(10.0, xi0 / 10.0);
    const double beta0 = beta * cfg.m0 / (wf.psi * omega0);

    std::vector<double> H(cfg.m0, 0.0);
    H[0] = 1.0;
    for (const auto& n : nodes) {
      const std::vector<double> coef = gamma_ratio_row(cfg.m0, n.m);
      std::vector<double> g(cfg.m0);
      for (int l = 0; l < cfg.m0; ++l) {
        double v = coef[l] * cm.p_c * nodes_phi(n, wf.psi, l, beta0);
        if (!no_aci && cm.K_s > 0.0)
          v += coef[l] * cm.p_a * nodes_phi(n, cm.K_s, l, beta0);
        if (l == 0) {
          v += cm.p_n;
          if (no_aci || cm.K_s == 0.0) v += cm.p_a;
        }
        g[l] = v;
      }
      H = poly_mul_trunc(H, poly_pow_trunc(g, n.count, cfg.m0), cfg.m0);
    }
    const double eps = epsilon_from_fbar(fbar_from_coeffs(H, beta0, z),
                                         "avg_outage_shadowed");
    sum += eps;
    sumsq += eps * eps;
  }
  const double nD = static_cast<double>(mc_draws);
  OutageResult res;
  res.value = sum / nD;
  res.std_err =
      std::sqrt(std::max(0.0, sumsq / nD - res.value * res.value) / nD);
  res.draws = mc_draws;
  res.method = "shadowed-hybrid";
  return res;
}

}  // namespace fhaci
