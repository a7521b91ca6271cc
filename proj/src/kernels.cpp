// SPDX-License-Identifier: Apache-2.0
#include "wed/kernels.hpp"

#include <algorithm>
#include <cstdlib>

namespace wed::kernels {

namespace {

template <class T>
void acc_scalar(Weight* acc, std::int32_t* wit, Weight c, const T* row, int n, std::int32_t idx) {
  for (int j = 0; j < n; ++j) {
    Weight t = c + static_cast<Weight>(row[j]);
    if (t < acc[j]) {
      acc[j] = t;
      wit[j] = idx;
    }
  }
}

void row_scalar(Weight* out, const Weight* prev, Weight ins, const Weight* sub, int n) {
  for (int x = 1; x <= n; ++x) {
    Weight a = prev[x] + ins;
    Weight b = prev[x - 1] + sub[x];
    out[x] = std::min({a, b, INF});
  }
}

const Table kScalar{acc_scalar<std::int32_t>, acc_scalar<Weight>, row_scalar, "scalar"};

bool g_force_scalar = std::getenv("WED_FORCE_SCALAR") != nullptr;

}  // namespace

#if defined(WED_HAVE_AVX2)
const Table* avx2_table();  // kernels_avx2.cpp
#endif

const Table& scalar() { return kScalar; }

const Table* avx2() {
#if defined(WED_HAVE_AVX2)
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok ? avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const Table& active() {
  if (g_force_scalar) return kScalar;
  static const Table* best = avx2();
  return best ? *best : kScalar;
}

void force_scalar(bool on) { g_force_scalar = on; }

}  // namespace wed::kernels
