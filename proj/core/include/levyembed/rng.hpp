#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace levyembed {

/// Philox4x32-10 counter-based block function.
struct Philox4x32 {
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block generate(Block ctr, Key key) noexcept {
    constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
    for (int r = 0; r < 10; ++r) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
      key[0] += kW0;
      key[1] += kW1;
    }
    return ctr;
  }
};

/// Independent stream per (seed, stream id); the draw index is the counter,
/// so a stream's values do not depend on how streams are scheduled.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  std::uint32_t next_u32() noexcept {
    if (pos_ == 4) refill();
    return buf_[pos_++];
  }

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept {
    const std::uint64_t a = next_u32() >> 5, b = next_u32() >> 6;
    return (static_cast<double>(a * 67108864u + b) + 0.5) * (1.0 / 9007199254740992.0);
  }

  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double t = 6.283185307179586 * uniform();
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  double exponential(double rate) noexcept { return -std::log(uniform()) / rate; }

  std::uint64_t draws() const noexcept { return counter_; }

 private:
  void refill() noexcept {
    buf_ = Philox4x32::generate({static_cast<std::uint32_t>(stream_),
                                 static_cast<std::uint32_t>(stream_ >> 32),
                                 static_cast<std::uint32_t>(counter_),
                                 static_cast<std::uint32_t>(counter_ >> 32)},
                                key_);
    ++counter_;
    pos_ = 0;
  }

  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  Philox4x32::Block buf_{};
  int pos_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace levyembed
