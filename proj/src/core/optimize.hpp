#pragma once
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "core/cpfsk.hpp"
#include "core/model.hpp"

namespace fhaci {

// Coordinate order everywhere: 0 = L, 1 = R, 2 = h, 3 = psi.
enum WaveformCoord { WF_L = 0, WF_R = 1, WF_H = 2, WF_PSI = 3 };

struct SearchBounds {
  std::array<double, 4> lo{1.0, 0.01, 0.01, 0.90};
  std::array<double, 4> hi{400.0, 0.99, 0.999, 0.999};
};

struct NmOptions {
  WaveformParams init{20.0, 0.5, 0.5, 0.975};
  std::array<double, 4> offsets{1.0, 0.025, 0.025, 0.005};
  std::array<bool, 4> frozen{false, false, false, false};
  SearchBounds bounds;
  double diam_tol = 1e-3;    // scaled simplex diameter
  double spread_tol = 1e-6;  // best-to-worst cost spread
  int max_iters = 500;
  double restart_volume_ratio = 1e-12;  // degenerate-simplex restart trigger
};

struct TracePoint {
  WaveformParams theta;
  double tau = 0.0;
};

struct OptimizationResult {
  WaveformParams theta;      // reported optimum (L rounded half-up)
  double tau = 0.0;          // objective at the reported theta
  WaveformParams theta_raw;  // unrounded optimizer state
  double tau_raw = 0.0;
  long evaluations = 0;
  int iterations = 0;
  long failures = 0;         // infeasible/failed points (grid)
  bool restarted = false;    // degenerate-simplex restart fired
  std::string method;
  std::vector<TracePoint> trace;  // best-so-far per iteration, non-decreasing tau
};

using TauFn = std::function<double(const WaveformParams&)>;

// Downhill-simplex ascent of tau over the non-frozen coordinates, following
// the reflect / expand / contract / shrink-toward-best schedule with bound
// violations rejected by infinite cost.  The objective must evaluate finitely
// at every initial corner.  Deterministic for a deterministic objective.
OptimizationResult nelder_mead(const TauFn& tau, const NmOptions& opt);

struct GridSpec {
  std::vector<double> L, R, h, psi;  // each non-empty, ascending
};

// Inclusive range helper with endpoint-safe stepping.
std::vector<double> grid_range(double lo, double hi, double step);

// Exhaustive scan in ascending coordinate order (L outer, psi inner).  Points
// where the objective throws are recorded as failures and skipped; more than
// 1% failures aborts.  Ties keep the earliest point, i.e. the smallest
// (L, R, h, psi) in lexicographic order.
OptimizationResult grid_search(const TauFn& tau, const GridSpec& grid);

// Repeated simplex runs with one coordinate pinned to each value in turn
// (e.g. tau_opt(psi) profiles).  Results are in the order of `values`.
std::vector<OptimizationResult> profile_curve(const TauFn& tau,
                                              WaveformCoord coord,
                                              const std::vector<double>& values,
                                              const NmOptions& base);

struct PsiVsDistancePoint {
  double r_frac = 0.0;  // source distance as a fraction of r_net
  double alpha = 0.0;
  OptimizationResult run;  // full 4-coordinate optimum at this (r, alpha)
};

// Optimal psi as the source-receiver distance and path-loss exponent vary:
// one full optimization per (r_frac, alpha) pair, r_frac outer.
std::vector<PsiVsDistancePoint> psi_vs_distance(
    const SystemConfig& base, const ThresholdTable& table,
    const EvalOptions& eopt, const std::vector<double>& r_fracs,
    const std::vector<double>& alphas, const NmOptions& nm);

}  // namespace fhaci
