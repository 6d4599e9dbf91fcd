#include "rionset/rng.hpp"

#include <cmath>
#include <numbers>

namespace rionset {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) noexcept {
  const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(prod >> 32);
  lo = static_cast<std::uint32_t>(prod);
}

inline std::uint64_t join(std::uint32_t lo, std::uint32_t hi) noexcept {
  return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

GaussianStream::GaussianStream(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_lo_(static_cast<std::uint32_t>(stream)),
      stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

State GaussianStream::next_triple() noexcept {
  const std::uint64_t first = 2 * step_;
  const auto a = Philox4x32::block(
      {static_cast<std::uint32_t>(first), static_cast<std::uint32_t>(first >> 32),
       stream_lo_, stream_hi_},
      key_);
  const auto b = Philox4x32::block(
      {static_cast<std::uint32_t>(first + 1),
       static_cast<std::uint32_t>((first + 1) >> 32), stream_lo_, stream_hi_},
      key_);
  ++step_;

  // Box-Muller on two uniform pairs; the fourth normal is discarded.
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double r1 = std::sqrt(-2.0 * std::log(to_open_unit(join(a[0], a[1]))));
  const double th1 = two_pi * to_open_unit(join(a[2], a[3]));
  const double r2 = std::sqrt(-2.0 * std::log(to_open_unit(join(b[0], b[1]))));
  const double th2 = two_pi * to_open_unit(join(b[2], b[3]));
  return {r1 * std::cos(th1), r1 * std::sin(th1), r2 * std::cos(th2)};
}

}  // namespace rionset
