#include "sel/simd/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

#include <bit>

namespace sel::simd {
namespace {

inline std::size_t count_u64x2(uint64x2_t v) {
  return static_cast<std::size_t>(vaddvq_u8(vcntq_u8(vreinterpretq_u8_u64(v))));
}

std::size_t or_count_new(Word* dst, const Word* src, std::size_t n) {
  std::size_t i = 0, added = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t d = vld1q_u64(dst + i);
    uint64x2_t s = vld1q_u64(src + i);
    added += count_u64x2(vbicq_u64(s, d));
    vst1q_u64(dst + i, vorrq_u64(d, s));
  }
  for (; i < n; ++i) {
    added += static_cast<std::size_t>(std::popcount(src[i] & ~dst[i]));
    dst[i] |= src[i];
  }
  return added;
}

void and_into(Word* dst, const Word* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, vandq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
  for (; i < n; ++i) dst[i] &= src[i];
}

bool is_subset(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t x = vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    if (vmaxvq_u32(vreinterpretq_u32_u64(x))) return false;
  }
  for (; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool intersects(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t x = vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    if (vmaxvq_u32(vreinterpretq_u32_u64(x))) return true;
  }
  for (; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool equal(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t x = veorq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    if (vmaxvq_u32(vreinterpretq_u32_u64(x))) return false;
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

std::size_t popcount(const Word* a, std::size_t n) {
  std::size_t i = 0, c = 0;
  for (; i + 2 <= n; i += 2) c += count_u64x2(vld1q_u64(a + i));
  for (; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i]));
  return c;
}

}  // namespace

const KernelTable* neon_kernels() {
  static const KernelTable table{"neon", or_count_new, and_into, is_subset,
                                 intersects, equal, popcount};
  return &table;
}

}  // namespace sel::simd

#else

namespace sel::simd {
const KernelTable* neon_kernels() { return nullptr; }
}  // namespace sel::simd

#endif
