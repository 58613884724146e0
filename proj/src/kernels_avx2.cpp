// AVX2 bit kernels. Compiled with -mavx2 in its own translation unit; the
// dispatcher in kernels.cpp only routes here after a cpuid check.
//
// Population counts use the nibble-LUT technique (Mula): per-byte counts via
// two PSHUFB lookups, folded to four 64-bit lanes with PSADBW.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <bit>
#include <cstdint>
#include <span>

namespace bind::kernels::avx2 {

namespace {

inline __m256i popcount_bytes(__m256i v) {
  const __m256i lut =
      _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1,
                       2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  return _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                         _mm256_shuffle_epi8(lut, hi));
}

inline __m256i popcount_words4(__m256i v) {
  return _mm256_sad_epu8(popcount_bytes(v), _mm256_setzero_si256());
}

inline std::uint64_t hsum_epi64(__m256i v) {
  const __m128i lo = _mm256_castsi256_si128(v);
  const __m128i hi = _mm256_extracti128_si256(v, 1);
  const __m128i s = _mm_add_epi64(lo, hi);
  return static_cast<std::uint64_t>(_mm_extract_epi64(s, 0)) +
         static_cast<std::uint64_t>(_mm_extract_epi64(s, 1));
}

}  // namespace

std::uint64_t popcount(std::span<const std::uint64_t> words) {
  const std::size_t n = words.size();
  const std::uint64_t* p = words.data();
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    acc = _mm256_add_epi64(acc, popcount_words4(v));
  }
  std::uint64_t total = hsum_epi64(acc);
  for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(p[i]));
  return total;
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b) {
  const std::size_t n = a.size();
  const std::uint64_t* pa = a.data();
  const std::uint64_t* pb = b.data();
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pa + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pb + i));
    acc = _mm256_add_epi64(acc, popcount_words4(_mm256_and_si256(va, vb)));
  }
  std::uint64_t total = hsum_epi64(acc);
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
  __m256i acc_and = _mm256_setzero_si256();
  __m256i acc_or = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pa + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pb + i));
    acc_and = _mm256_add_epi64(acc_and, popcount_words4(_mm256_and_si256(va, vb)));
    acc_or = _mm256_add_epi64(acc_or, popcount_words4(_mm256_or_si256(va, vb)));
  }
  std::uint64_t inter = hsum_epi64(acc_and);
  std::uint64_t uni = hsum_epi64(acc_or);
  for (; i < n; ++i) {
    inter += static_cast<std::uint64_t>(std::popcount(pa[i] & pb[i]));
    uni += static_cast<std::uint64_t>(std::popcount(pa[i] | pb[i]));
  }
  intersection = inter;
  union_count = uni;
}

void and_words(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
               std::span<std::uint64_t> out) {
  const std::size_t n = a.size();
  const std::uint64_t* pa = a.data();
  const std::uint64_t* pb = b.data();
  std::uint64_t* po = out.data();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pa + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pb + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(po + i),
                        _mm256_and_si256(va, vb));
  }
  for (; i < n; ++i) po[i] = pa[i] & pb[i];
}

}  // namespace bind::kernels::avx2

#endif  // x86-64
