#include "core/channel.hpp"

#include <cmath>
#include <sstream>

#include "core/error.hpp"

namespace fhaci {
namespace {

[[noreturn]] void bad_field(const char* type, const char* field,
                            const std::string& why) {
  std::ostringstream os;
  os << type << "." << field << ": " << why;
  throw domain_error(os.str());
}

}  // namespace

void SystemConfig::validate() const {
  if (M < 0) bad_field("system", "M", "must be >= 0");
  if (!(r_ex > 0.0)) bad_field("system", "r_ex", "must be > 0");
  if (!(r_net > r_ex)) bad_field("system", "r_net", "must exceed r_ex");
  if (!(alpha > 2.0)) bad_field("system", "alpha", "must be > 2");
  if (!std::isfinite(snr_db)) bad_field("system", "snr_db", "must be finite");
  if (!(duty_factor > 0.0 && duty_factor <= 1.0))
    bad_field("system", "duty_factor", "must be in (0, 1]");
  if (!(sigma_s_db >= 0.0))
    bad_field("system", "sigma_s_db", "must be >= 0");
  if (m0 < 1) bad_field("system", "m0", "must be a positive integer");
  if (m_i.empty() || (m_i.size() != 1 && m_i.size() != static_cast<size_t>(M)))
    bad_field("system", "m_i", "must hold 1 or M entries");
  for (double m : m_i)
    if (!(m > 0.0)) bad_field("system", "m_i", "entries must be > 0");
  if (!power_ratios.empty() && power_ratios.size() != 1 &&
      power_ratios.size() != static_cast<size_t>(M))
    bad_field("system", "power_ratios", "must hold 1 or M entries");
  for (double c : power_ratios)
    if (!(c > 0.0)) bad_field("system", "power_ratios", "entries must be > 0");
  if (!(x0_distance > 0.0))
    bad_field("system", "x0_distance", "must be > 0");
}

void WaveformParams::validate() const {
  if (!(L >= 1.0)) bad_field("waveform", "L", "must be >= 1");
  if (!(R > 0.0 && R < 1.0)) bad_field("waveform", "R", "must be in (0, 1)");
  if (!(h > 0.0 && h <= 1.0)) bad_field("waveform", "h", "must be in (0, 1]");
  if (!(psi > 0.5 && psi <= 1.0))
    bad_field("waveform", "psi", "must be in (0.5, 1]");
}

CollisionModel collision_probabilities(double L, double D, double psi) {
  if (!(L >= 1.0)) throw domain_error("collision_probabilities: L must be >= 1");
  if (!(D > 0.0 && D <= 1.0))
    throw domain_error("collision_probabilities: D must be in (0, 1]");
  if (!(psi > 0.5 && psi <= 1.0))
    throw domain_error("collision_probabilities: psi must be in (0.5, 1]");
  CollisionModel cm{};
  cm.p_c = D / L;
  cm.p_a = 2.0 * D * (L - 1.0) / (L * L);
  cm.p_n = 1.0 - (cm.p_c + cm.p_a);  // exact complement by construction
  cm.K_s = 0.5 * (1.0 - psi);
  return cm;
}

double instantaneous_sinr(double g0, double omega0, double psi,
                          double snr_linear,
                          const std::vector<InterfererState>& interferers) {
  double denom = 1.0 / snr_linear;
  for (const auto& it : interferers) denom += it.weight * it.gain * it.omega;
  return psi * g0 * omega0 / denom;
}

}  // namespace fhaci
