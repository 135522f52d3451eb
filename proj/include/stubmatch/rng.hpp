// Counter-based random number generation (Philox 4x32, 10 rounds) plus the
// exact integer/real samplers the simulator needs. Counter-based streams give
// independent, individually reproducible substreams per (seed, stream id):
// red marks, blue marks and positions can each be regenerated in isolation.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace stubmatch {

/// Philox 4x32-10 block function. Key is the 64-bit experiment seed, the
/// 128-bit counter carries (block index, stream id).
struct Philox4x32 {
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }
};

/// One independent stream of a seeded Philox generator. Satisfies
/// UniformRandomBitGenerator over uint32.
class RngStream {
 public:
  using result_type = std::uint32_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_lo_(static_cast<std::uint32_t>(stream_id)),
        stream_hi_(static_cast<std::uint32_t>(stream_id >> 32)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<std::uint32_t>::max(); }

  result_type operator()() {
    if (idx_ == 4) refill();
    return buf_[idx_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = (*this)();
    const std::uint64_t hi = (*this)();
    return lo | (hi << 32);
  }

  /// Uniform double in [0,1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  void refill() {
    buf_ = Philox4x32::block({static_cast<std::uint32_t>(block_),
                              static_cast<std::uint32_t>(block_ >> 32), stream_lo_, stream_hi_},
                             key_);
    ++block_;
    idx_ = 0;
  }

  std::array<std::uint32_t, 2> key_;
  std::uint32_t stream_lo_, stream_hi_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int idx_ = 4;
};

// Stream ids used by the configuration sampler. Fixed so that any single
// component of a sample can be regenerated on its own.
enum class StreamId : std::uint64_t {
  RedCount = 0,
  RedPositions = 1,
  RedMarks = 2,
  BlueCount = 3,
  BluePositions = 4,
  BlueMarks = 5,
};

inline RngStream make_stream(std::uint64_t seed, StreamId id) {
  return RngStream(seed, static_cast<std::uint64_t>(id));
}

/// Exact Poisson sampler. Knuth's product method on chunks of mean <= 30,
/// which keeps exp(-lambda) well away from underflow; the sum of independent
/// Poisson chunks is Poisson with the summed mean.
inline std::int64_t sample_poisson(RngStream& rng, double mean) {
  std::int64_t total = 0;
  while (mean > 30.0) {
    total += sample_poisson(rng, 30.0);
    mean -= 30.0;
  }
  if (mean <= 0.0) return total;
  const double limit = std::exp(-mean);
  double prod = 1.0;
  std::int64_t k = -1;
  do {
    ++k;
    prod *= rng.next_double();
  } while (prod > limit);
  return total + k;
}

/// Uniform coordinate in [0,L); clamps the (measure-zero) rounding case
/// where L*u rounds up to L.
inline double sample_coordinate(RngStream& rng, double side) {
  double x = side * rng.next_double();
  if (x >= side) x = std::nextafter(side, 0.0);
  return x;
}

}  // namespace stubmatch
