// SPDX-License-Identifier: Apache-2.0
#pragma once

// Data-parallel inner loops with a portable reference version and an AVX2
// version chosen once at start-up.  Both produce identical results.

#include <cstdint>

#include "wed/core.hpp"

namespace wed::kernels {

// acc[j] = min(acc[j], c + row[j]) for j < n, recording idx in wit[j] on a
// strict improvement.  c must be finite.
using AccI32Fn = void (*)(Weight* acc, std::int32_t* wit, Weight c, const std::int32_t* row, int n,
                          std::int32_t idx);
using AccI64Fn = void (*)(Weight* acc, std::int32_t* wit, Weight c, const Weight* row, int n, std::int32_t idx);

// out[x] = min(prev[x] + ins, prev[x-1] + sub[x], INF) for 1 <= x <= n.
using RowFn = void (*)(Weight* out, const Weight* prev, Weight ins, const Weight* sub, int n);

struct Table {
  AccI32Fn acc_i32;
  AccI64Fn acc_i64;
  RowFn dp_row;
  const char* name;
};

const Table& scalar();
const Table* avx2();  // nullptr when not compiled in or not supported by the CPU
const Table& active();
void force_scalar(bool on);

inline void minplus_accumulate(Weight* acc, std::int32_t* wit, Weight c, const std::int32_t* row, int n,
                               std::int32_t idx) {
  active().acc_i32(acc, wit, c, row, n, idx);
}
inline void minplus_accumulate(Weight* acc, std::int32_t* wit, Weight c, const Weight* row, int n,
                               std::int32_t idx) {
  active().acc_i64(acc, wit, c, row, n, idx);
}
inline void dp_row_pass(Weight* out, const Weight* prev, Weight ins, const Weight* sub, int n) {
  active().dp_row(out, prev, ins, sub, n);
}

}  // namespace wed::kernels
