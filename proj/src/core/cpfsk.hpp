#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "core/numerics.hpp"

namespace fhaci {

// Two-sided power spectral density of binary CPFSK with modulation index h,
// evaluated at normalized frequency fT and normalized so the PSD integrates
// to 1 over fT in (-inf, inf).  h must lie strictly inside (0, 1); the
// spectrum degenerates to line spectra at the endpoints.
double cpfsk_psd(double h, double fT);

// Two-sided bandwidth W (in units of the symbol rate 1/T) containing the
// fraction psi of total signal power: the solution of
// integral_{-W/2}^{W/2} psd = psi.  h in (0, 1], psi in (0.5, 1).  Requests at
// h = 1 evaluate the spectrum at h = 1 - 1e-4 (the limiting spectrum
// concentrates into lines; the perturbed index is the documented convention).
// Relative accuracy 1e-6.
double fractional_power_bandwidth(double h, double psi);

// Spectral efficiency eta = 1 / W(h, psi): symbols per second per unit
// occupied bandwidth.
double spectral_efficiency(double h, double psi);

struct RateEstimate {
  double value;    // Monte Carlo estimate of the symmetric information rate
  double std_err;  // standard error of the estimate
};

// Symmetric information rate C(gamma) in bits per channel use of noncoherent
// binary CPFSK at SINR gamma (linear), estimated by Monte Carlo over `trials`
// independent symbol trials.  The two demodulator branch statistics are
// correlated with coefficient rho = |sinc(h)|.  Deterministic in (seed).
RateEstimate symmetric_rate(double snr_linear, double h, long trials,
                            std::uint64_t seed);

// Precomputed modulation-constrained rate surface C(gamma_dB; h) on a grid,
// smoothed to be non-decreasing in gamma per h column, with inverse lookup
// for the SINR threshold beta = C^{-1}(R).
class ThresholdTable {
 public:
  struct BuildSpec {
    std::vector<double> h_grid;       // ascending, in (0, 1]
    std::vector<double> snr_db_grid;  // ascending
    long trials = 100000;             // per grid point
    std::uint64_t seed = 20260815;
    int workers = 1;

    static BuildSpec defaults();      // h 0.05:0.05:1.0, SNR -10:0.5:20 dB
  };

  static ThresholdTable build(const BuildSpec& spec);
  static ThresholdTable load(const std::string& path);
  void save(const std::string& path) const;

  // Achievable rate at (snr_db, h): monotone-cubic in snr_db along columns,
  // linear blend between the two bracketing h columns (clamped to the h-grid
  // range).  Non-decreasing in snr_db for fixed h.
  double rate(double snr_db, double h) const;

  // SINR threshold (linear) solving rate(beta_dB, h) = code_rate by bisection.
  // Throws domain_error if code_rate is outside the achievable range for this
  // h within the table's SNR span.
  double threshold(double code_rate, double h) const;

  const BuildSpec& spec() const { return spec_; }
  const std::vector<std::vector<double>>& raw() const { return raw_; }
  const std::vector<std::vector<double>>& fitted() const { return fit_; }
  const std::vector<std::vector<double>>& std_err() const { return se_; }

 private:
  void finalize();  // smooth columns + build interpolants; validates

  BuildSpec spec_;
  std::vector<std::vector<double>> raw_;  // [ih][igamma]
  std::vector<std::vector<double>> se_;
  std::vector<std::vector<double>> fit_;
  std::vector<monotone_cubic> col_;
};

}  // namespace fhaci
