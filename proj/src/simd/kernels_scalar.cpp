#include "sel/simd/kernels.hpp"

#include <bit>
#include <cstdlib>

namespace sel::simd {
namespace {

std::size_t or_count_new(Word* dst, const Word* src, std::size_t n) {
  std::size_t added = 0;
  for (std::size_t i = 0; i < n; ++i) {
    added += static_cast<std::size_t>(std::popcount(src[i] & ~dst[i]));
    dst[i] |= src[i];
  }
  return added;
}

void and_into(Word* dst, const Word* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] &= src[i];
}

bool is_subset(const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool intersects(const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool equal(const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

std::size_t popcount(const Word* a, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i]));
  return c;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", or_count_new, and_into, is_subset,
                                 intersects, equal, popcount};
  return table;
}

const KernelTable& active() {
  static const KernelTable& chosen = [&]() -> const KernelTable& {
    if (const char* env = std::getenv("SEL_FORCE_SCALAR"); env && env[0] == '1')
      return scalar_kernels();
    if (const KernelTable* t = avx2_kernels()) return *t;
    if (const KernelTable* t = neon_kernels()) return *t;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace sel::simd
