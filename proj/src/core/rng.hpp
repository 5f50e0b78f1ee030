#pragma once
#include <array>
#include <cstdint>

namespace fhaci {

// Philox4x32-10 counter-based generator.  A generator instance is addressed by
// (seed, purpose, stream): `seed` is the user-facing run seed, `purpose` tags
// the consumer (so e.g. the rate simulator and the outage simulator never share
// a sequence), and `stream` is the substream index (typically a trial index).
// Streams with distinct addresses are statistically independent, and a stream
// always produces the same sequence regardless of how work is partitioned
// across threads.
std::array<std::uint32_t, 4> philox4x32_block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key);

// Purpose tags.  Values are part of the reproducibility contract: changing
// them changes every sampled sequence.
enum rng_purpose : std::uint32_t {
  RNG_RATE_SIM = 1,       // per-trial noncoherent rate simulation
  RNG_COND_SIM = 2,       // per-trial conditional outage simulation
  RNG_NET_SIM = 3,        // per-trial network outage simulation
  RNG_NET_FROZEN = 4,     // once-per-run draws of non-resampled components
  RNG_SHADOW_OUTER = 5,   // source-shadowing draws of the hybrid evaluator
  RNG_TABLE = 6,          // threshold-table grid points
  RNG_TEST = 7,           // unit-test scratch streams
};

class rng_stream {
 public:
  rng_stream(std::uint64_t seed, std::uint32_t purpose, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        ctr_{0, purpose, static_cast<std::uint32_t>(stream),
             static_cast<std::uint32_t>(stream >> 32)} {}

  std::uint32_t next_u32() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
  }

  std::uint64_t next_u64() {
    std::uint64_t lo = next_u32();
    return lo | (static_cast<std::uint64_t>(next_u32()) << 32);
  }

  // Uniform on [0,1) with 53 random bits.
  double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1]; safe under log().
  double u01_open_below() { return 1.0 - u01(); }

  // Standard normal via Box-Muller (pairs cached).
  double normal();

  // Gamma(shape, scale 1) via Marsaglia-Tsang squeeze; shape > 0.
  double gamma(double shape);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> ctr_;  // {block, purpose, stream_lo, stream_hi}
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  double cached_normal_ = 0.0;
  bool have_cached_normal_ = false;
};

}  // namespace fhaci
