#pragma once

// Philox4x64-10 counter-based generator.
//
// A stream is identified by (seed, stream id); draw k of stream s uses the
// counter block (k / 4, 0, s, 0) under key (seed, 0), so streams are
// independent of one another and of the order in which they are consumed.
// Repetition r of a Monte Carlo run reads stream r.

#include <array>
#include <cstdint>

namespace qig {

using PhiloxBlock = std::array<std::uint64_t, 4>;
using PhiloxKey = std::array<std::uint64_t, 2>;

// Ten rounds of Philox4x64 on one counter block.
PhiloxBlock philox4x64(PhiloxBlock counter, PhiloxKey key);

class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream) : key_{seed, 0}, stream_(stream) {}

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  PhiloxKey key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  PhiloxBlock buf_{};
  int pos_ = 4;
};

}  // namespace qig
