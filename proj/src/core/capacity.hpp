#pragma once
#include "core/channel.hpp"

namespace fhaci {

struct CapacityResult {
  double tau = 0.0;        // modulation-constrained transmission capacity
  double epsilon = 0.0;    // outage probability used
  double link_rate = 0.0;  // normalized per-link throughput b = R D eta / L
  double density = 0.0;    // interferer density lambda = M / A
};

// Normalized single-link throughput b = R * D * eta(h, psi_for_eta) / L in
// bits per second per unit bandwidth.  psi_for_eta defaults to wf.psi; the
// splatter-neglecting variant evaluates the bandwidth at a fixed 0.99
// containment instead (pass it explicitly).
double link_rate_norm(const WaveformParams& wf, double duty_factor,
                      double psi_for_eta = -1.0);

// Modulation-constrained transmission capacity
// tau = lambda * b * (1 - epsilon): area spectral efficiency of successful
// transmissions.  Reported tables conventionally scale tau by 1e3.
CapacityResult mctc(const SystemConfig& cfg, const WaveformParams& wf,
                    double epsilon, double psi_for_eta = -1.0);

}  // namespace fhaci
