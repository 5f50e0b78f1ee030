#include "core/rng.hpp"

#include <cmath>

#include "core/error.hpp"

namespace fhaci {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         const std::array<std::uint32_t, 2>& key) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    philox_round(ctr, key);
  }
  return ctr;
}

void rng_stream::refill() {
  buf_ = philox4x32_block(ctr_, key_);
  ++ctr_[0];  // block counter; 2^32 blocks per stream is ample
  pos_ = 0;
}

double rng_stream::normal() {
  if (have_cached_normal_) {
    have_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = u01_open_below();
  const double u2 = u01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * M_PI * u2;
  cached_normal_ = r * std::sin(th);
  have_cached_normal_ = true;
  return r * std::cos(th);
}

double rng_stream::gamma(double shape) {
  if (!(shape > 0.0)) throw domain_error("rng_stream::gamma: shape must be > 0");
  // Shapes below 1 use the boost Gamma(a) = Gamma(a+1) * U^(1/a).
  double boost = 1.0;
  if (shape < 1.0) {
    boost = std::pow(u01_open_below(), 1.0 / shape);
    shape += 1.0;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = u01_open_below();
    const double xx = x * x;
    if (u < 1.0 - 0.0331 * xx * xx) return boost * d * v;
    if (std::log(u) < 0.5 * xx + d * (1.0 - v + std::log(v))) return boost * d * v;
  }
}

}  // namespace fhaci
