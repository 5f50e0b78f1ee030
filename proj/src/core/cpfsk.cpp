#include "core/cpfsk.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "core/error.hpp"
#include "core/rng.hpp"

namespace fhaci {
namespace {

inline double sinc(double t) {
  if (t == 0.0) return 1.0;
  const double pt = M_PI * t;
  return std::sin(pt) / pt;
}

}  // namespace

double cpfsk_psd(double h, double fT) {
  if (!(h > 0.0 && h < 1.0))
    throw domain_error("cpfsk_psd: h must lie strictly in (0, 1)");
  const double a1 = sinc(fT + 0.5 * h);
  const double a2 = sinc(fT - 0.5 * h);
  const double psit = std::cos(M_PI * h);
  const double c2pf = std::cos(2.0 * M_PI * fT);
  const double denom = 1.0 + psit * psit - 2.0 * psit * c2pf;
  const double cph = std::cos(M_PI * h);  // cos(alpha_11) = cos(alpha_22)
  const double sph = std::sin(M_PI * h);
  const double s2pf = std::sin(2.0 * M_PI * fT);
  // B_nm = (cos(2 pi fT - alpha_nm) - psit cos(alpha_nm)) / denom with
  // alpha_11 = -pi h, alpha_22 = +pi h, alpha_12 = 0.
  const double b11 = (c2pf * cph - s2pf * sph - psit * cph) / denom;
  const double b22 = (c2pf * cph + s2pf * sph - psit * cph) / denom;
  const double b12 = (c2pf - psit) / denom;
  const double sq1 = a1 * a1, sq2 = a2 * a2;
  return 0.5 * (sq1 + sq2) + 0.5 * (b11 * sq1 + b22 * sq2 + 2.0 * b12 * a1 * a2);
}

namespace {

// Cumulative one-sided spectrum table for a fixed h, cached per h.  The node
// layout resolves the quasi-line the spectrum develops at fT = 1/2 as h -> 1.
struct SpectrumEntry {
  std::vector<double> node;  // ascending, node.front() = 0
  std::vector<double> cum;   // cum[k] = integral of psd over [0, node[k]]
  double total = 0.0;        // 2 * cum.back(): full two-sided power
};

std::vector<double> spectrum_nodes() {
  std::vector<double> n;
  for (int i = 0; i <= 128; ++i) n.push_back(i / 16.0);        // 0..8
  for (int i = 1; i <= 96; ++i) n.push_back(8.0 + i / 4.0);    // ..32
  for (int k = 1; k <= 20; ++k) {                              // peak at 0.5
    n.push_back(0.5 - std::ldexp(1.0 / 16.0, -k));
    n.push_back(0.5 + std::ldexp(1.0 / 16.0, -k));
  }
  std::sort(n.begin(), n.end());
  n.erase(std::unique(n.begin(), n.end()), n.end());
  return n;
}

SpectrumEntry build_spectrum_entry(double h) {
  SpectrumEntry e;
  e.node = spectrum_nodes();
  e.cum.assign(e.node.size(), 0.0);
  auto f = [h](double x) { return cpfsk_psd(h, x); };
  for (size_t k = 1; k < e.node.size(); ++k)
    e.cum[k] = e.cum[k - 1] +
               adaptive_simpson(f, e.node[k - 1], e.node[k], 2e-12, 48);
  e.total = 2.0 * e.cum.back();
  return e;
}

class SpectrumCache {
 public:
  const SpectrumEntry& get(double h) {
    const std::int64_t key = std::llround(h * 1e12);
    std::lock_guard<std::mutex> lk(mu_);
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
    if (map_.size() > 20000) map_.clear();
    return map_.emplace(key, build_spectrum_entry(h)).first->second;
  }

 private:
  std::mutex mu_;
  std::map<std::int64_t, SpectrumEntry> map_;
};

SpectrumCache g_spectrum_cache;

}  // namespace

double fractional_power_bandwidth(double h, double psi) {
  if (!(h > 0.0 && h <= 1.0))
    throw domain_error("fractional_power_bandwidth: h must be in (0, 1]");
  if (!(psi > 0.5 && psi < 1.0))
    throw domain_error("fractional_power_bandwidth: psi must be in (0.5, 1)");
  const double he = std::min(h, 1.0 - 1e-4);
  const SpectrumEntry& e = g_spectrum_cache.get(he);
  const double target = 0.5 * psi * e.total;  // one-sided share
  // Locate the bracketing segment, then bisect inside it.
  size_t k = 1;
  while (k < e.cum.size() && e.cum[k] < target) ++k;
  if (k == e.cum.size())
    throw numeric_error("fractional_power_bandwidth: target beyond table span",
                        2.0 * e.node.back());
  auto f = [he](double x) { return cpfsk_psd(he, x); };
  double lo = e.node[k - 1], hi = e.node[k];
  double base = e.cum[k - 1];
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double cmid = base + adaptive_simpson(f, e.node[k - 1], mid, 1e-13, 48);
    if (cmid < target) lo = mid;
    else hi = mid;
    if ((hi - lo) <= 1e-7 * std::max(1e-3, 0.5 * (hi + lo))) break;
  }
  return 2.0 * 0.5 * (lo + hi);
}

double spectral_efficiency(double h, double psi) {
  return 1.0 / fractional_power_bandwidth(h, psi);
}

RateEstimate symmetric_rate(double snr_linear, double h, long trials,
                            std::uint64_t seed) {
  if (!(snr_linear >= 0.0))
    throw domain_error("symmetric_rate: snr_linear must be >= 0");
  if (!(h > 0.0 && h <= 1.0))
    throw domain_error("symmetric_rate: h must be in (0, 1]");
  if (trials < 1) throw domain_error("symmetric_rate: trials must be >= 1");
  const double rho = std::abs(sinc(h));
  const double orth = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  const double amp = std::sqrt(snr_linear);
  double sum = 0.0, sumsq = 0.0;
  for (long t = 0; t < trials; ++t) {
    rng_stream rs(seed, RNG_RATE_SIM, static_cast<std::uint64_t>(t));
    const double theta = 2.0 * M_PI * rs.u01();
    const double sre = amp * std::cos(theta), sim = amp * std::sin(theta);
    const double z1r = rs.normal() * M_SQRT1_2, z1i = rs.normal() * M_SQRT1_2;
    const double z2r = rs.normal() * M_SQRT1_2, z2i = rs.normal() * M_SQRT1_2;
    // Matched branch and mismatched branch observables; the mismatched branch
    // sees the signal and noise attenuated by the correlation rho.
    const double r1r = sre + z1r, r1i = sim + z1i;
    const double r2r = rho * (sre + z1r) + orth * z2r;
    const double r2i = rho * (sim + z1i) + orth * z2i;
    const double a_good = 2.0 * amp * std::hypot(r1r, r1i);
    const double a_bad = 2.0 * amp * std::hypot(r2r, r2i);
    const double d = ln_i0(a_bad) - ln_i0(a_good);
    // mi = 1 - log2(1 + e^d), computed without overflow.
    double mi;
    if (d > 35.0) mi = 1.0 - d * M_LOG2E;
    else mi = 1.0 - std::log1p(std::exp(d)) * M_LOG2E;
    sum += mi;
    sumsq += mi * mi;
  }
  const double n = static_cast<double>(trials);
  const double mean = sum / n;
  const double var = std::max(0.0, sumsq / n - mean * mean);
  return {mean, std::sqrt(var / n)};
}

// ---------------------------------------------------------------- table

ThresholdTable::BuildSpec ThresholdTable::BuildSpec::defaults() {
  BuildSpec s;
  for (int i = 1; i <= 20; ++i) s.h_grid.push_back(i * 0.05);
  for (int i = 0; i <= 60; ++i) s.snr_db_grid.push_back(-10.0 + i * 0.5);
  return s;
}

namespace {

// Independent seed for each table grid point, derived through the block
// cipher so points never share rate-simulation substreams.
std::uint64_t point_seed(std::uint64_t seed, std::uint32_t ih, std::uint32_t ig) {
  const auto blk = philox4x32_block(
      {ih, ig, 0x7ab1eu, 0u},
      {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
  return blk[0] | (static_cast<std::uint64_t>(blk[1]) << 32);
}

}  // namespace

ThresholdTable ThresholdTable::build(const BuildSpec& spec) {
  if (spec.h_grid.size() < 2 || spec.snr_db_grid.size() < 2)
    throw domain_error("ThresholdTable: grids need >= 2 points");
  if (!std::is_sorted(spec.h_grid.begin(), spec.h_grid.end()) ||
      !std::is_sorted(spec.snr_db_grid.begin(), spec.snr_db_grid.end()))
    throw domain_error("ThresholdTable: grids must be ascending");
  for (double h : spec.h_grid)
    if (!(h > 0.0 && h <= 1.0))
      throw domain_error("ThresholdTable: h_grid entries must be in (0, 1]");
  if (spec.trials < 100)
    throw domain_error("ThresholdTable: trials must be >= 100");

  ThresholdTable t;
  t.spec_ = spec;
  const size_t nh = spec.h_grid.size(), ng = spec.snr_db_grid.size();
  t.raw_.assign(nh, std::vector<double>(ng, 0.0));
  t.se_.assign(nh, std::vector<double>(ng, 0.0));

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t idx = next.fetch_add(1);
      if (idx >= nh * ng) return;
      const size_t ih = idx / ng, ig = idx % ng;
      const double gamma =
          std::pow(10.0, spec.snr_db_grid[ig] / 10.0);
      const RateEstimate est =
          symmetric_rate(gamma, spec.h_grid[ih], spec.trials,
                         point_seed(spec.seed, static_cast<std::uint32_t>(ih),
                                    static_cast<std::uint32_t>(ig)));
      t.raw_[ih][ig] = est.value;
      t.se_[ih][ig] = est.std_err;
    }
  };
  const int nw = std::max(1, spec.workers);
  if (nw == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  t.finalize();
  return t;
}

void ThresholdTable::finalize() {
  const size_t nh = spec_.h_grid.size();
  fit_.clear();
  col_.clear();
  for (size_t ih = 0; ih < nh; ++ih) {
    std::vector<double> f = isotonic_nondecreasing(raw_[ih]);
    for (double& v : f) v = std::clamp(v, 0.0, 1.0);
    fit_.push_back(f);
    col_.emplace_back(spec_.snr_db_grid, std::move(f));
  }
}

double ThresholdTable::rate(double snr_db, double h) const {
  const auto& hg = spec_.h_grid;
  if (h <= hg.front()) return col_.front()(snr_db);
  if (h >= hg.back()) return col_.back()(snr_db);
  const size_t hi = std::upper_bound(hg.begin(), hg.end(), h) - hg.begin();
  const size_t i = hi - 1;
  const double t = (h - hg[i]) / (hg[i + 1] - hg[i]);
  return (1.0 - t) * col_[i](snr_db) + t * col_[i + 1](snr_db);
}

double ThresholdTable::threshold(double code_rate, double h) const {
  if (!(code_rate > 0.0 && code_rate < 1.0))
    throw domain_error("ThresholdTable::threshold: code rate must be in (0, 1)");
  double lo = spec_.snr_db_grid.front(), hi = spec_.snr_db_grid.back();
  const double rlo = rate(lo, h), rhi = rate(hi, h);
  if (!(code_rate > rlo && code_rate < rhi)) {
    std::ostringstream os;
    os << "ThresholdTable::threshold: code rate " << code_rate
       << " is outside the achievable range [" << rlo << ", " << rhi
       << "] for h=" << h << " within the table SNR span";
    throw domain_error(os.str());
  }
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (rate(mid, h) < code_rate) lo = mid;
    else hi = mid;
  }
  return std::pow(10.0, 0.5 * (lo + hi) / 10.0);
}

void ThresholdTable::save(const std::string& path) const {
  nlohmann::json j;
  j["format"] = "fhaci-threshold-table";
  j["version"] = 1;
  j["h_grid"] = spec_.h_grid;
  j["snr_db_grid"] = spec_.snr_db_grid;
  j["trials"] = spec_.trials;
  j["seed"] = spec_.seed;
  j["rate"] = raw_;
  j["std_err"] = se_;
  std::ofstream out(path);
  if (!out) throw config_error("ThresholdTable::save: cannot open " + path);
  out << j.dump(1) << "\n";
  if (!out.good())
    throw config_error("ThresholdTable::save: write failed for " + path);
}

ThresholdTable ThresholdTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("ThresholdTable::load: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw config_error(std::string("ThresholdTable::load: bad JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "fhaci-threshold-table")
      throw config_error("ThresholdTable::load: unrecognized format tag");
    if (j.at("version").get<int>() != 1)
      throw config_error("ThresholdTable::load: unsupported version");
    ThresholdTable t;
    t.spec_.h_grid = j.at("h_grid").get<std::vector<double>>();
    t.spec_.snr_db_grid = j.at("snr_db_grid").get<std::vector<double>>();
    t.spec_.trials = j.at("trials").get<long>();
    t.spec_.seed = j.at("seed").get<std::uint64_t>();
    t.raw_ = j.at("rate").get<std::vector<std::vector<double>>>();
    t.se_ = j.at("std_err").get<std::vector<std::vector<double>>>();
    const size_t nh = t.spec_.h_grid.size(), ng = t.spec_.snr_db_grid.size();
    if (nh < 2 || ng < 2 || t.raw_.size() != nh || t.se_.size() != nh)
      throw config_error("ThresholdTable::load: inconsistent grid shapes");
    for (size_t ih = 0; ih < nh; ++ih) {
      if (t.raw_[ih].size() != ng || t.se_[ih].size() != ng)
        throw config_error("ThresholdTable::load: inconsistent row length");
      for (double v : t.raw_[ih])
        if (!std::isfinite(v))
          throw config_error("ThresholdTable::load: non-finite rate entry");
    }
    t.finalize();
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("ThresholdTable::load: ") + e.what());
  }
}

}  // namespace fhaci
