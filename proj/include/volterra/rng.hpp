#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace volterra {

/// Philox 4x32-10 block function (Salmon et al. counter-based generator).
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
    const std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

/// Standard-normal stream keyed by (seed, stream index). Stateless across
/// streams: the value at position i depends only on (seed, stream, i), so
/// parallel generation is bit-reproducible under any schedule.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  double next() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(block_),
        static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_),
        static_cast<std::uint32_t>(stream_ >> 32)};
    ++block_;
    const auto r = philox4x32(ctr, key_);
    const std::uint64_t u1 =
        (std::uint64_t(r[0]) << 32 | r[1]) >> 11;  // 53 bits
    const std::uint64_t u2 = (std::uint64_t(r[2]) << 32 | r[3]) >> 11;
    const double a = (static_cast<double>(u1) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double b = static_cast<double>(u2) * 0x1.0p-53;          // [0, 1)
    const double rad = std::sqrt(-2.0 * std::log(a));
    spare_ = rad * std::sin(2.0 * M_PI * b);
    have_ = true;
    return rad * std::cos(2.0 * M_PI * b);
  }

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_ = 0;
  std::uint64_t block_ = 0;
  double spare_ = 0.0;
  bool have_ = false;
};

}  // namespace volterra
