#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace qcdeph {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
///
/// A block is a pure function of (key, counter), so any substream can be
/// regenerated independently of how many other streams were consumed.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr int kRounds = 10;

  static constexpr Counter block(Counter ctr, Key key) {
    for (int round = 0; round < kRounds; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      ctr = single_round(ctr, key);
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static constexpr Counter single_round(const Counter& ctr, const Key& key) {
    const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
};

/// Sequential view of one Philox substream.
///
/// Stream layout (version 1): key = master seed split little-endian into two
/// 32-bit words; counter = (block_lo, block_hi, substream_lo, substream_hi).
/// Each block yields two 53-bit uniforms in [0, 1) built from words (0,1) and
/// (2,3) as ((hi << 32 | lo) >> 11) * 2^-53, hi being the odd word.
class PhiloxStream {
 public:
  static constexpr int kVersion = 1;

  PhiloxStream(std::uint64_t master_seed, std::uint64_t substream)
      : key_{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32)},
        substream_(substream) {}

  double uniform() {
    if (cursor_ == 2) refill();
    return buffer_[cursor_++];
  }

  /// Standard normal deviate by Box-Muller; one pair of uniforms gives
  /// (r cos t, r sin t) and the sine half is served on the next call.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  std::uint64_t blocks_consumed() const { return block_; }

 private:
  void refill() {
    const Philox4x32::Counter ctr{static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                                  static_cast<std::uint32_t>(substream_),
                                  static_cast<std::uint32_t>(substream_ >> 32)};
    const auto out = Philox4x32::block(ctr, key_);
    buffer_[0] = to_unit(out[0], out[1]);
    buffer_[1] = to_unit(out[2], out[3]);
    cursor_ = 0;
    ++block_;
  }

  static double to_unit(std::uint32_t lo, std::uint32_t hi) {
    const std::uint64_t bits = (std::uint64_t{hi} << 32) | lo;
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

  Philox4x32::Key key_;
  std::uint64_t substream_;
  std::uint64_t block_ = 0;
  std::array<double, 2> buffer_{};
  int cursor_ = 2;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qcdeph
