// Word-parallel kernels over packed 64-bit bit vectors.
//
// Every kernel has a portable scalar reference implementation and, where the
// target supports it, an AVX2 (x86-64) or NEON (aarch64) variant. The variant
// is picked once at startup from the running CPU's capabilities; tests pin the
// vector variants against the scalar reference.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace sel::simd {

using Word = std::uint64_t;

struct KernelTable {
  std::string_view name;
  // dst |= src; returns the number of bits that were newly set in dst.
  std::size_t (*or_count_new)(Word* dst, const Word* src, std::size_t n);
  // dst &= src
  void (*and_into)(Word* dst, const Word* src, std::size_t n);
  // true iff (a & ~b) == 0
  bool (*is_subset)(const Word* a, const Word* b, std::size_t n);
  // true iff (a & b) != 0
  bool (*intersects)(const Word* a, const Word* b, std::size_t n);
  bool (*equal)(const Word* a, const Word* b, std::size_t n);
  std::size_t (*popcount)(const Word* a, std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the variant was not compiled in or the CPU lacks the feature.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// Best table for this machine. SEL_FORCE_SCALAR=1 pins the scalar table.
const KernelTable& active();

inline std::size_t or_count_new(std::span<Word> dst, std::span<const Word> src) {
  return active().or_count_new(dst.data(), src.data(), dst.size());
}
inline void and_into(std::span<Word> dst, std::span<const Word> src) {
  active().and_into(dst.data(), src.data(), dst.size());
}
inline bool is_subset(std::span<const Word> a, std::span<const Word> b) {
  return active().is_subset(a.data(), b.data(), a.size());
}
inline bool intersects(std::span<const Word> a, std::span<const Word> b) {
  return active().intersects(a.data(), b.data(), a.size());
}
inline bool equal(std::span<const Word> a, std::span<const Word> b) {
  return active().equal(a.data(), b.data(), a.size());
}
inline std::size_t popcount(std::span<const Word> a) {
  return active().popcount(a.data(), a.size());
}

}  // namespace sel::simd
