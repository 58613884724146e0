// NEON bit kernels for aarch64. vcntq_u8 gives per-byte counts; the pairwise
// widening adds fold them to 64-bit lanes.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <bit>
#include <cstdint>
#include <span>

namespace bind::kernels::neon {

namespace {

inline uint64x2_t popcount_words2(uint8x16_t v) {
  return vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(vcntq_u8(v))));
}

}  // namespace

std::uint64_t popcount(std::span<const std::uint64_t> words) {
  const std::size_t n = words.size();
  const std::uint64_t* p = words.data();
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint8x16_t v = vld1q_u8(reinterpret_cast<const std::uint8_t*>(p + i));
    acc = vaddq_u64(acc, popcount_words2(v));
  }
  std::uint64_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
  for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(p[i]));
  return total;
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b) {
  const std::size_t n = a.size();
  const std::uint64_t* pa = a.data();
  const std::uint64_t* pb = b.data();
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint8x16_t va = vld1q_u8(reinterpret_cast<const std::uint8_t*>(pa + i));
    const uint8x16_t vb = vld1q_u8(reinterpret_cast<const std::uint8_t*>(pb + i));
    acc = vaddq_u64(acc, popcount_words2(vandq_u8(va, vb)));
  }
  std::uint64_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
  for (; i < n; ++i)
    total += static_cast<std::uint64_t>(std::popcount(pa[i] & pb[i]));
  return total;
}

void intersect_union(std::span<const std::uint64_t> a,
                     std::span<const std::uint64_t> b,
                     std::uint64_t& intersection, std::uint64_t& union_count) {
  const std::size_t n = a.size();
  const std::uint64_t* pa = a.data();
  const std::uint64_t* pb = b.data();
  uint64x2_t acc_and = vdupq_n_u64(0);
  uint64x2_t acc_or = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint8x16_t va = vld1q_u8(reinterpret_cast<const std::uint8_t*>(pa + i));
    const uint8x16_t vb = vld1q_u8(reinterpret_cast<const std::uint8_t*>(pb + i));
    acc_and = vaddq_u64(acc_and, popcount_words2(vandq_u8(va, vb)));
    acc_or = vaddq_u64(acc_or, popcount_words2(vorrq_u8(va, vb)));
  }
  std::uint64_t inter = vgetq_lane_u64(acc_and, 0) + vgetq_lane_u64(acc_and, 1);
  std::uint64_t uni = vgetq_lane_u64(acc_or, 0) + vgetq_lane_u64(acc_or, 1);
  for (; i < n; ++i) {
    inter += static_cast<std::uint64_t>(std::popcount(pa[i] & pb[i]));
    uni += static_cast<std::uint64_t>(std::popcount(pa[i] | pb[i]));
  }
  intersection = inter;
  union_count = uni;
}

void and_words(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
               std::span<std::uint64_t> out) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
}

}  // namespace bind::kernels::neon

#endif  // aarch64
