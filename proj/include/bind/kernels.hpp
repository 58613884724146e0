#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Bit-kernel layer: the O(mn) inner loops of the library (population counts,
// masked AND, intersection/union counts over packed 64-bit words).
//
// `scalar` holds the reference implementations. On x86-64 an AVX2 variant is
// compiled into a separate translation unit and selected at runtime when the
// CPU supports it; on aarch64 a NEON variant takes that role. The dispatched
// entry points below are what the rest of the library calls. Equivalence of
// every variant against `scalar` is asserted by the kernel test suite.

namespace bind::kernels {

namespace scalar {
std::uint64_t popcount(std::span<const std::uint64_t> words);
std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b);
void intersect_union(std::span<const std::uint64_t> a,
                     std::span<const std::uint64_t> b,
                     std::uint64_t& intersection, std::uint64_t& union_count);
void and_words(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
               std::span<std::uint64_t> out);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
std::uint64_t popcount(std::span<const std::uint64_t> words);
std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b);
void intersect_union(std::span<const std::uint64_t> a,
                     std::span<const std::uint64_t> b,
                     std::uint64_t& intersection, std::uint64_t& union_count);
void and_words(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
               std::span<std::uint64_t> out);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
std::uint64_t popcount(std::span<const std::uint64_t> words);
std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b);
void intersect_union(std::span<const std::uint64_t> a,
                     std::span<const std::uint64_t> b,
                     std::uint64_t& intersection, std::uint64_t& union_count);
void and_words(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
               std::span<std::uint64_t> out);
}  // namespace neon
#endif

// Runtime-dispatched entry points.
std::uint64_t popcount(std::span<const std::uint64_t> words);
std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b);
void intersect_union(std::span<const std::uint64_t> a,
                     std::span<const std::uint64_t> b,
                     std::uint64_t& intersection, std::uint64_t& union_count);
void and_words(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
               std::span<std::uint64_t> out);

/// Name of the variant selected at startup: "scalar", "avx2" or "neon".
const char* backend();

}  // namespace bind::kernels
