#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "core/channel.hpp"
#include "core/numerics.hpp"

namespace fhaci {

// Everything needed to evaluate the outage probability of one hop when the
// despread interferer powers Omega are fixed (conditioned on topology and
// shadowing).  omegas[0] is the source power Omega_0; omegas[1..] are the M
// interferers.
struct ConditionalContext {
  std::vector<double> omegas;   // size M + 1
  double beta = 1.0;            // SINR threshold (linear)
  double psi = 0.96;            // fractional in-band power
  double snr_linear = 10.0;     // unfaded SNR Gamma
  int m0 = 1;                   // source Nakagami parameter (integer >= 1)
  std::vector<double> m_i{1.0}; // interferer Nakagami m; size 1 or M
  CollisionModel collision{};

  void validate() const;
};

struct OutageResult {
  double value = 0.0;
  double std_err = 0.0;     // 0 for deterministic paths
  long long draws = 0;      // Monte Carlo draws/trials consumed
  std::string method;
};

// Exact outage probability for fixed Omega: the complementary CDF of the
// SINR mixture evaluated at beta.  `no_aci` folds the adjacent-channel event
// into the no-collision mass (splatter neglected).
double conditional_outage(const ConditionalContext& ctx, bool no_aci = false);

// Truncated product of the per-interferer coefficient polynomials
// sum_l G_l y^l (mod y^m0): returns H_0..H_{m0-1}.  Each inner vector must
// hold m0 coefficients.
std::vector<double> hk_fold(const std::vector<std::vector<double>>& per_interferer,
                            int m0);

// Complementary outage CDF value from folded coefficients:
// exp(-b0 z) sum_k b0^k H_k sum_{s=0}^{m0-1-k} (b0 z)^s / s!, with z = 1/Gamma.
double fbar_from_coeffs(const std::vector<double>& H, double beta0, double z);

// E{ (chi Omega / m)^l (chi beta0 Omega / m + 1)^-(m+l) } over the annulus
// distance distribution without shadowing, for one interferer with Nakagami m
// and power ratio c: closed hypergeometric form and an independent 1-D
// quadrature of the same expectation against the Omega pdf.  chi >= 0
// (chi = 0 returns the degenerate limit: 1 for l = 0, else 0).
double eg_phi_closed(double chi, long l, double m, double c, double beta0,
                     double alpha, double r_ex, double r_net);
double eg_phi_quadrature(double chi, long l, double m, double c, double beta0,
                         double alpha, double r_ex, double r_net,
                         const QuadratureSpec& quad);

// Spatially averaged outage probability with no shadowing (sigma_s_db must be
// 0), by the closed-form interferer-power expectation.  Deterministic.
OutageResult avg_outage_unshadowed(const SystemConfig& cfg,
                                   const WaveformParams& wf, double beta,
                                   bool no_aci = false);

// Density of the despread interferer power Omega_i under annulus placement
// plus lognormal shadowing of sigma_s_db dB, for power ratio c.  Integrates
// to 1 over (0, inf).
double shadowed_omega_pdf(double omega, double c, double alpha, double r_ex,
                          double r_net, double sigma_s_db);

// Spatially averaged outage probability with lognormal shadowing
// (sigma_s_db > 0 required): interferer powers are integrated analytically
// against shadowed_omega_pdf on cached quadrature nodes, while the source's
// own shadowing coefficient is averaged by Monte Carlo over mc_draws draws.
// std_err reports the outer Monte Carlo error.  Deterministic in (seed).
OutageResult avg_outage_shadowed(const SystemConfig& cfg,
                                 const WaveformParams& wf, double beta,
                                 long mc_draws, const QuadratureSpec& quad,
                                 std::uint64_t seed, bool no_aci = false);

}  // namespace fhaci
