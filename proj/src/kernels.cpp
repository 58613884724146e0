#include "bind/kernels.hpp"

#include <bit>
#include <cassert>

namespace bind::kernels {

namespace scalar {

std::uint64_t popcount(std::span<const std::uint64_t> words) {
  std::uint64_t total = 0;
  for (std::uint64_t w : words) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b) {
  assert(a.size() == b.size());
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return total;
}

void intersect_union(std::span<const std::uint64_t> a,
                     std::span<const std::uint64_t> b,
                     std::uint64_t& intersection, std::uint64_t& union_count) {
  assert(a.size() == b.size());
  std::uint64_t inter = 0, uni = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    inter += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    uni += static_cast<std::uint64_t>(std::popcount(a[i] | b[i]));
  }
  intersection = inter;
  union_count = uni;
}

void and_words(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
               std::span<std::uint64_t> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
}

}  // namespace scalar

namespace {

struct Dispatch {
  std::uint64_t (*popcount)(std::span<const std::uint64_t>);
  std::uint64_t (*and_popcount)(std::span<const std::uint64_t>,
                                std::span<const std::uint64_t>);
  void (*intersect_union)(std::span<const std::uint64_t>,
                          std::span<const std::uint64_t>, std::uint64_t&,
                          std::uint64_t&);
  void (*and_words)(std::span<const std::uint64_t>, std::span<const std::uint64_t>,
                    std::span<std::uint64_t>);
  const char* name;
};

Dispatch select_backend() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) {
    return {&avx2::popcount, &avx2::and_popcount, &avx2::intersect_union,
            &avx2::and_words, "avx2"};
  }
#endif
#if defined(__aarch64__)
  return {&neon::popcount, &neon::and_popcount, &neon::intersect_union,
          &neon::and_words, "neon"};
#endif
  return {&scalar::popcount, &scalar::and_popcount, &scalar::intersect_union,
          &scalar::and_words, "scalar"};
}

const Dispatch& active() {
  static const Dispatch d = select_backend();
  return d;
}

}  // namespace

std::uint64_t popcount(std::span<const std::uint64_t> words) {
  return active().popcount(words);
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b) {
  return active().and_popcount(a, b);
}

void intersect_union(std::span<const std::uint64_t> a,
                     std::span<const std::uint64_t> b,
                     std::uint64_t& intersection, std::uint64_t& union_count) {
  active().intersect_union(a, b, intersection, union_count);
}

void and_words(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
               std::span<std::uint64_t> out) {
  active().and_words(a, b, out);
}

const char* backend() { return active().name; }

}  // namespace bind::kernels
