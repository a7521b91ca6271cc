// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "testutil.hpp"
#include "wed/kernels.hpp"

using namespace wed;

namespace {

template <class T>
void check_acc(const kernels::Table& a, const kernels::Table& b, wt::Rng& rng) {
  for (int it = 0; it < 300; ++it) {
    int n = wt::uni(rng, 0, 40);
    std::vector<T> row(n);
    std::vector<Weight> acc(n);
    std::vector<std::int32_t> wit(n, -1);
    for (int j = 0; j < n; ++j) {
      row[j] = static_cast<T>(wt::uni(rng, 0, 50));
      acc[j] = wt::uni(rng, 0, 4) == 0 ? INF : wt::uni(rng, 0, 80);
    }
    auto acc2 = acc;
    auto wit2 = wit;
    Weight c = wt::uni(rng, 0, 30);
    if constexpr (sizeof(T) == 4) {
      a.acc_i32(acc.data(), wit.data(), c, row.data(), n, 7);
      b.acc_i32(acc2.data(), wit2.data(), c, row.data(), n, 7);
    } else {
      a.acc_i64(acc.data(), wit.data(), c, row.data(), n, 7);
      b.acc_i64(acc2.data(), wit2.data(), c, row.data(), n, 7);
    }
    CHECK(acc == acc2);
    CHECK(wit == wit2);
  }
}

}  // namespace

TEST_CASE("vector kernels agree with the scalar reference") {
  const kernels::Table* v = kernels::avx2();
  if (!v) {
    MESSAGE("AVX2 kernels unavailable; only the scalar path is exercised");
    v = &kernels::scalar();
  }
  const kernels::Table& s = kernels::scalar();
  wt::Rng rng(3);
  check_acc<std::int32_t>(s, *v, rng);
  check_acc<Weight>(s, *v, rng);
  for (int it = 0; it < 300; ++it) {
    int n = wt::uni(rng, 0, 37);
    std::vector<Weight> prev(n + 1), sub(n + 1), o1(n + 1, -1), o2(n + 1, -1);
    for (int x = 0; x <= n; ++x) {
      prev[x] = wt::uni(rng, 0, 5) == 0 ? INF : wt::uni(rng, 0, 100);
      sub[x] = wt::uni(rng, 0, 9);
    }
    Weight ins = wt::uni(rng, 1, 9);
    s.dp_row(o1.data(), prev.data(), ins, sub.data(), n);
    v->dp_row(o2.data(), prev.data(), ins, sub.data(), n);
    CHECK(o1 == o2);
    for (int x = 1; x <= n; ++x) CHECK(o1[x] == std::min({prev[x] + ins, prev[x - 1] + sub[x], INF}));
  }
}

TEST_CASE("forcing the scalar path switches the active table") {
  kernels::force_scalar(true);
  CHECK(std::string(kernels::active().name) == "scalar");
  kernels::force_scalar(false);
  if (kernels::avx2()) CHECK(std::string(kernels::active().name) == "avx2");
}
