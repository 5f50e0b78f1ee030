#pragma once
#include <cmath>
#include <cstddef>
#include <vector>

namespace fhaci {

// Static description of one network under study: a source-reference receiver
// pair plus M potentially interfering transmitters drawn uniformly on an
// annulus around the receiver.
struct SystemConfig {
  int M = 50;                  // number of potential interferers
  double r_ex = 0.25;          // exclusion-zone radius around the receiver
  double r_net = 2.0;          // network radius
  double alpha = 3.0;          // path-loss exponent (> 2)
  double snr_db = 10.0;        // unfaded SNR Gamma at the reference distance
  double duty_factor = 1.0;    // per-interferer transmit probability D
  double sigma_s_db = 0.0;     // lognormal shadowing std dev (dB); 0 = none
  int m0 = 4;                  // source Nakagami parameter (positive integer)
  std::vector<double> m_i{1.0};        // interferer Nakagami m; size 1 or M
  std::vector<double> power_ratios{};  // P_i / P_0; empty = all 1; size 1 or M
  double x0_distance = 1.0;    // source-to-receiver distance |X_0|

  double snr_linear() const { return std::pow(10.0, snr_db / 10.0); }
  double area() const { return M_PI * (r_net * r_net - r_ex * r_ex); }
  double density() const { return M / area(); }
  double mi_of(int i) const {  // i in [0, M)
    return m_i.size() == 1 ? m_i[0] : m_i[static_cast<size_t>(i)];
  }
  double ci_of(int i) const {
    if (power_ratios.empty()) return 1.0;
    return power_ratios.size() == 1 ? power_ratios[0]
                                    : power_ratios[static_cast<size_t>(i)];
  }
  // True when every interferer shares one (m, c) pair, enabling closed-form
  // fast paths that raise a single-interferer result to the M-th power.
  bool identical_interferers() const {
    return m_i.size() <= 1 && power_ratios.size() <= 1;
  }

  void validate() const;  // throws domain_error naming the offending field
};

// The four waveform coordinates being optimized.  L is real-valued during
// optimization; reported values round it to the nearest integer.
struct WaveformParams {
  double L = 20.0;   // number of hopping channels, >= 1
  double R = 0.5;    // code rate, in (0, 1)
  double h = 0.5;    // modulation index, in (0, 1]
  double psi = 0.96; // fractional in-band power, in (0.5, 1]

  void validate() const;
};

// Hop-collision probabilities for one interferer, from the channel count L,
// duty factor D and splatter ratio K_s = (1 - psi) / 2.
struct CollisionModel {
  double p_c;  // co-channel collision
  double p_a;  // adjacent-channel collision
  double p_n;  // no collision; p_n = 1 - (p_c + p_a) exactly
  double K_s;  // fraction of adjacent-channel power leaking in-band
};

CollisionModel collision_probabilities(double L, double D, double psi);

// One resolved interferer for the conditioned SINR of a single hop.
struct InterfererState {
  double weight;  // psi (co-channel), K_s (adjacent) or 0 (no collision)
  double gain;    // fading power gain g_i
  double omega;   // normalized mean despread power Omega_i
};

// Instantaneous SINR at the reference receiver given resolved fading and
// collision states.
double instantaneous_sinr(double g0, double omega0, double psi,
                          double snr_linear,
                          const std::vector<InterfererState>& interferers);

}  // namespace fhaci
