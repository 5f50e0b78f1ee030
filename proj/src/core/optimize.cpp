#include "core/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "core/error.hpp"

namespace fhaci {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::array<double, 4> to_arr(const WaveformParams& w) {
  return {w.L, w.R, w.h, w.psi};
}

WaveformParams to_wf(const std::array<double, 4>& a) {
  return {a[0], a[1], a[2], a[3]};
}

bool in_bounds(const std::array<double, 4>& a, const SearchBounds& b) {
  for (int d = 0; d < 4; ++d)
    if (a[d] < b.lo[d] || a[d] > b.hi[d]) return false;
  return true;
}

// Cost is -tau; failures and bound violations count as +inf so they are
// never accepted over a feasible corner.
double cost_of(const TauFn& tau, const std::array<double, 4>& a,
               const SearchBounds& b, long& evals) {
  if (!in_bounds(a, b)) return kInf;
  ++evals;
  try {
    const double v = tau(to_wf(a));
    return std::isfinite(v) ? -v : kInf;
  } catch (const domain_error&) {
    return kInf;
  } catch (const numeric_error&) {
    return kInf;
  }
}

// |det| of the scaled edge matrix over the active dims: the simplex volume
// up to the constant 1/n!.
double scaled_volume(const std::vector<std::array<double, 4>>& pts,
                     const std::vector<int>& dims,
                     const std::array<double, 4>& scale) {
  const size_t n = dims.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      m[i][j] = (pts[i + 1][dims[j]] - pts[0][dims[j]]) / scale[dims[j]];
  double det = 1.0;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (m[piv][col] == 0.0) return 0.0;
    std::swap(m[piv], m[col]);
    det *= m[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return std::abs(det);
}

}  // namespace

OptimizationResult nelder_mead(const TauFn& tau, const NmOptions& opt) {
  std::vector<int> dims;
  for (int d = 0; d < 4; ++d)
    if (!opt.frozen[d]) dims.push_back(d);
  if (dims.empty()) throw domain_error("nelder_mead: all coordinates frozen");
  const size_t n = dims.size();

  OptimizationResult res;
  res.method = "nelder-mead";

  auto make_simplex = [&](const std::array<double, 4>& center,
                          double offset_scale) {
    std::vector<std::array<double, 4>> pts(n + 1, center);
    for (size_t j = 0; j < n; ++j) {
      const int d = dims[j];
      double v = center[d] + opt.offsets[d] * offset_scale;
      // Keep initial corners feasible even when the center hugs a bound.
      if (v > opt.bounds.hi[d])
        v = center[d] - opt.offsets[d] * offset_scale;
      pts[j + 1][d] = v;
    }
    return pts;
  };

  std::array<double, 4> scale;
  for (int d = 0; d < 4; ++d)
    scale[d] = std::max(1.0, std::abs(to_arr(opt.init)[d]));

  auto pts = make_simplex(to_arr(opt.init), 1.0);
  std::vector<double> cost(n + 1);
  for (size_t i = 0; i <= n; ++i) {
    cost[i] = cost_of(tau, pts[i], opt.bounds, res.evaluations);
    if (!std::isfinite(cost[i])) {
      std::ostringstream os;
      os << "nelder_mead: objective not finite at initial corner " << i;
      throw domain_error(os.str());
    }
  }
  const double init_vol = scaled_volume(pts, dims, scale);

  auto order = [&] {
    std::vector<size_t> idx(n + 1);
    for (size_t i = 0; i <= n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](size_t a, size_t b) { return cost[a] < cost[b]; });
    std::vector<std::array<double, 4>> p2;
    std::vector<double> c2;
    for (size_t i : idx) {
      p2.push_back(pts[i]);
      c2.push_back(cost[i]);
    }
    pts = std::move(p2);
    cost = std::move(c2);
  };

  for (int iter = 0; iter < opt.max_iters; ++iter) {
    order();
    res.iterations = iter + 1;
    res.trace.push_back({to_wf(pts[0]), -cost[0]});

    double diam = 0.0;
    for (size_t i = 1; i <= n; ++i)
      for (int d : dims)
        diam = std::max(diam, std::abs(pts[i][d] - pts[0][d]) / scale[d]);
    if (diam < opt.diam_tol) break;
    if (cost[n] - cost[0] < opt.spread_tol) break;

    const double vol = scaled_volume(pts, dims, scale);
    if (init_vol > 0.0 && vol < opt.restart_volume_ratio * init_vol) {
      if (res.restarted) break;
      res.restarted = true;
      pts = make_simplex(pts[0], 0.1);
      for (size_t i = 0; i <= n; ++i)
        cost[i] = cost_of(tau, pts[i], opt.bounds, res.evaluations);
      continue;
    }

    // Centroid of all corners but the worst.
    std::array<double, 4> cen = pts[0];
    for (int d : dims) {
      double s = 0.0;
      for (size_t i = 0; i < n; ++i) s += pts[i][d];
      cen[d] = s / static_cast<double>(n);
    }
    const auto& worst = pts[n];
    std::array<double, 4> refl = cen;
    for (int d : dims) refl[d] = 2.0 * cen[d] - worst[d];
    const double c_refl = cost_of(tau, refl, opt.bounds, res.evaluations);

    if (c_refl < cost[0]) {
      // Expand: double the distance from the face.
      std::array<double, 4> expd = cen;
      for (int d : dims) expd[d] = cen[d] + 2.0 * (refl[d] - cen[d]);
      const double c_expd = cost_of(tau, expd, opt.bounds, res.evaluations);
      if (c_expd < c_refl) {
        pts[n] = expd;
        cost[n] = c_expd;
      } else {
        pts[n] = refl;
        cost[n] = c_refl;
      }
    } else if (c_refl < cost[n - 1]) {
      pts[n] = refl;
      cost[n] = c_refl;
    } else {
      // Contract toward the better of the worst corner and its reflection.
      const bool use_refl = c_refl < cost[n];
      const auto& base = use_refl ? refl : worst;
      const double c_base = use_refl ? c_refl : cost[n];
      std::array<double, 4> ctr = cen;
      for (int d : dims) ctr[d] = cen[d] + 0.5 * (base[d] - cen[d]);
      const double c_ctr = cost_of(tau, ctr, opt.bounds, res.evaluations);
      if (c_ctr < c_base) {
        pts[n] = ctr;
        cost[n] = c_ctr;
      } else {
        // Shrink every non-best corner toward the best.
        for (size_t i = 1; i <= n; ++i) {
          for (int d : dims) pts[i][d] = pts[0][d] + 0.5 * (pts[i][d] - pts[0][d]);
          cost[i] = cost_of(tau, pts[i], opt.bounds, res.evaluations);
        }
      }
    }
  }
  order();
  res.trace.push_back({to_wf(pts[0]), -cost[0]});

  res.theta_raw = to_wf(pts[0]);
  res.tau_raw = -cost[0];
  res.theta = res.theta_raw;
  res.tau = res.tau_raw;
  if (!opt.frozen[WF_L]) {
    WaveformParams rounded = res.theta_raw;
    rounded.L = std::max(1.0, std::floor(res.theta_raw.L + 0.5));
    try {
      ++res.evaluations;
      const double t = tau(rounded);
      res.theta = rounded;
      res.tau = t;
    } catch (const std::exception&) {
      // Keep the raw optimum if the rounded point is infeasible.
    }
  }
  return res;
}

std::vector<double> grid_range(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo)
    throw domain_error("grid_range: need step > 0 and hi >= lo");
  std::vector<double> v;
  const long n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) v.push_back(lo + i * step);
  return v;
}

OptimizationResult grid_search(const TauFn& tau, const GridSpec& grid) {
  if (grid.L.empty() || grid.R.empty() || grid.h.empty() || grid.psi.empty())
    throw domain_error("grid_search: every coordinate grid must be non-empty");
  OptimizationResult res;
  res.method = "grid";
  double best = -kInf;
  const long total = static_cast<long>(grid.L.size()) * grid.R.size() *
                     grid.h.size() * grid.psi.size();
  for (double L : grid.L)
    for (double R : grid.R)
      for (double h : grid.h)
        for (double psi : grid.psi) {
          const WaveformParams wf{L, R, h, psi};
          ++res.evaluations;
          double v;
          try {
            v = tau(wf);
          } catch (const domain_error&) {
            ++res.failures;
            continue;
          } catch (const numeric_error&) {
            ++res.failures;
            continue;
          }
          if (v > best) {  // strict: ties keep the earliest (smallest) point
            best = v;
            res.theta_raw = wf;
          }
        }
  if (res.failures * 100 > total) {
    std::ostringstream os;
    os << "grid_search: " << res.failures << " of " << total
       << " points failed (> 1%)";
    throw numeric_error(os.str(), best);
  }
  if (best == -kInf)
    throw numeric_error("grid_search: no feasible grid point", 0.0);
  res.tau_raw = best;
  res.theta = res.theta_raw;
  res.tau = best;
  res.trace.push_back({res.theta, res.tau});
  return res;
}

std::vector<OptimizationResult> profile_curve(const TauFn& tau,
                                              WaveformCoord coord,
                                              const std::vector<double>& values,
                                              const NmOptions& base) {
  if (values.empty()) throw domain_error("profile_curve: values must be non-empty");
  std::vector<OptimizationResult> out;
  NmOptions opt = base;
  opt.frozen[coord] = true;
  for (double v : values) {
    auto arr = to_arr(opt.init);
    arr[coord] = v;
    opt.init = to_wf(arr);
    out.push_back(nelder_mead(tau, opt));
  }
  return out;
}

std::vector<PsiVsDistancePoint> psi_vs_distance(
    const SystemConfig& base, const ThresholdTable& table,
    const EvalOptions& eopt, const std::vector<double>& r_fracs,
    const std::vector<double>& alphas, const NmOptions& nm) {
  if (r_fracs.empty() || alphas.empty())
    throw domain_error("psi_vs_distance: need at least one r and alpha");
  std::vector<PsiVsDistancePoint> out;
  for (double rf : r_fracs) {
    if (!(rf > 0.0 && rf <= 1.0))
      throw domain_error("psi_vs_distance: r fractions must be in (0, 1]");
    for (double al : alphas) {
      SystemConfig cfg = base;
      cfg.alpha = al;
      cfg.x0_distance = rf * cfg.r_net;
      Objective obj(cfg, table, eopt);
      PsiVsDistancePoint pt;
      pt.r_frac = rf;
      pt.alpha = al;
      pt.run = nelder_mead([&](const WaveformParams& w) { return obj.tau(w); },
                           nm);
      out.push_back(std::move(pt));
    }
  }
  return out;
}

}  // namespace fhaci
