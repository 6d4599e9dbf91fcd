#pragma once

#include <array>
#include <cstdint>

#include "rionset/model.hpp"

namespace rionset {

// Philox4x32-10 (Salmon et al., SC'11): a keyed bijection on 128-bit
// counters. Output depends only on (counter, key), so any draw can be
// produced independently of every other draw.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) noexcept;
};

// Standard normal triples for one trajectory. Draw k is a pure function of
// (seed, stream, k): key = seed, counter = (2k or 2k+1, stream).
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream) noexcept;

  // Three independent N(0,1) variates; advances the step counter by one.
  State next_triple() noexcept;

  std::uint64_t position() const noexcept { return step_; }

 private:
  Philox4x32::Key key_;
  std::uint32_t stream_lo_;
  std::uint32_t stream_hi_;
  std::uint64_t step_ = 0;
};

// Top 52 bits of a 64-bit word mapped into the open interval (0, 1); the
// half-ulp offset keeps both endpoints out.
inline double to_open_unit(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

}  // namespace rionset
