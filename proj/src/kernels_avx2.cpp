// AVX2 variants of the label kernels. This translation unit is compiled with
// -mavx2; callers reach it only through the runtime dispatch in kernels.cpp.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

namespace fluidc::kernels::detail {

void gather_u32_avx2(const std::uint32_t* table, const std::uint32_t* idx,
                     std::size_t n, std::uint32_t* out) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i vidx =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(idx + i));
    const __m256i vals = _mm256_i32gather_epi32(
        reinterpret_cast<const int*>(table), vidx, 4);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), vals);
  }
  for (; i < n; ++i) out[i] = table[idx[i]];
}

std::size_t count_eq_u32_avx2(const std::uint32_t* vals, std::size_t n,
                              std::uint32_t target) {
  const __m256i t = _mm256_set1_epi32(static_cast<int>(target));
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(vals + i));
    const int mask = _mm256_movemask_ps(
        _mm256_castsi256_ps(_mm256_cmpeq_epi32(v, t)));
    count += static_cast<std::size_t>(__builtin_popcount(mask));
  }
  for (; i < n; ++i) count += vals[i] == target;
  return count;
}

std::size_t count_gather_eq_u32_avx2(const std::uint32_t* table,
                                     const std::uint32_t* idx, std::size_t n,
                                     std::uint32_t target) {
  const __m256i t = _mm256_set1_epi32(static_cast<int>(target));
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i vidx =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(idx + i));
    const __m256i vals = _mm256_i32gather_epi32(
        reinterpret_cast<const int*>(table), vidx, 4);
    const int mask = _mm256_movemask_ps(
        _mm256_castsi256_ps(_mm256_cmpeq_epi32(vals, t)));
    count += static_cast<std::size_t>(__builtin_popcount(mask));
  }
  for (; i < n; ++i) count += table[idx[i]] == target;
  return count;
}

}  // namespace fluidc::kernels::detail

#endif  // x86_64
