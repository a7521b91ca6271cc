// SPDX-License-Identifier: Apache-2.0
#include "wed/kernels.hpp"

#if defined(WED_HAVE_AVX2)
#include <immintrin.h>

#include <algorithm>

namespace wed::kernels {

namespace {

inline __m256i min64(__m256i a, __m256i b) { return _mm256_blendv_epi8(a, b, _mm256_cmpgt_epi64(a, b)); }

// Narrow four 64-bit lane masks to four 32-bit lane masks.
inline __m128i narrow_mask(__m256i m) {
  const __m256i pick = _mm256_setr_epi32(0, 2, 4, 6, 1, 3, 5, 7);
  return _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(m, pick));
}

template <class Load>
inline void acc_body(Weight* acc, std::int32_t* wit, Weight c, int n, std::int32_t idx, Load load,
                     void (*tail)(Weight*, std::int32_t*, Weight, int, int, std::int32_t, const void*),
                     const void* row) {
  const __m256i vc = _mm256_set1_epi64x(c);
  const __m128i vidx = _mm_set1_epi32(idx);
  int j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256i t = _mm256_add_epi64(load(j), vc);
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + j));
    __m256i m = _mm256_cmpgt_epi64(a, t);
    if (_mm256_testz_si256(m, m)) continue;
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + j), _mm256_blendv_epi8(a, t, m));
    __m128i w = _mm_loadu_si128(reinterpret_cast<const __m128i*>(wit + j));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(wit + j), _mm_blendv_epi8(w, vidx, narrow_mask(m)));
  }
  tail(acc, wit, c, j, n, idx, row);
}

template <class T>
void acc_tail(Weight* acc, std::int32_t* wit, Weight c, int from, int n, std::int32_t idx, const void* row) {
  const T* r = static_cast<const T*>(row);
  for (int j = from; j < n; ++j) {
    Weight t = c + static_cast<Weight>(r[j]);
    if (t < acc[j]) {
      acc[j] = t;
      wit[j] = idx;
    }
  }
}

void acc_i32(Weight* acc, std::int32_t* wit, Weight c, const std::int32_t* row, int n, std::int32_t idx) {
  acc_body(
      acc, wit, c, n, idx,
      [row](int j) { return _mm256_cvtepi32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(row + j))); },
      acc_tail<std::int32_t>, row);
}

void acc_i64(Weight* acc, std::int32_t* wit, Weight c, const Weight* row, int n, std::int32_t idx) {
  acc_body(
      acc, wit, c, n, idx, [row](int j) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + j)); },
      acc_tail<Weight>, row);
}

void dp_row(Weight* out, const Weight* prev, Weight ins, const Weight* sub, int n) {
  const __m256i vins = _mm256_set1_epi64x(ins);
  const __m256i vinf = _mm256_set1_epi64x(INF);
  int x = 1;
  for (; x + 4 <= n + 1; x += 4) {
    __m256i up = _mm256_add_epi64(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(prev + x)), vins);
    __m256i dg = _mm256_add_epi64(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(prev + x - 1)),
                                  _mm256_loadu_si256(reinterpret_cast<const __m256i*>(sub + x)));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + x), min64(min64(up, dg), vinf));
  }
  for (; x <= n; ++x) out[x] = std::min({prev[x] + ins, prev[x - 1] + sub[x], INF});
}

const Table kAvx2{acc_i32, acc_i64, dp_row, "avx2"};

}  // namespace

const Table* avx2_table() { return &kAvx2; }

}  // namespace wed::kernels

#endif
