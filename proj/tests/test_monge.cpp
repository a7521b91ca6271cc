// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "testutil.hpp"
#include "wed/monge.hpp"

using namespace wed;

namespace {

std::vector<RowMin> naive_minima(const Matrix& m) {
  std::vector<RowMin> r(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) < r[i].value) r[i] = {m(i, j), j};
  return r;
}

}  // namespace

TEST_CASE("is_monge examples") {
  CHECK(is_monge(Matrix{{1, 3}, {2, 3}}));
  CHECK_FALSE(is_monge(Matrix{{0, 5}, {1, 11}}));
  CHECK(is_monge(Matrix{{9, 1, 7, 2}}));
}

TEST_CASE("smawk examples") {
  auto r = smawk_row_minima(Matrix{{1, 2, 4}, {3, 2, 3}});
  CHECK(r[0].value == 1);
  CHECK(r[0].arg == 0);
  CHECK(r[1].value == 2);
  CHECK(r[1].arg == 1);
  Matrix c(4, 5, 7);
  for (auto& e : smawk_row_minima(c)) CHECK(e.arg == 0);
}

TEST_CASE("smawk matches a naive scan with a linear probe count") {
  wt::Rng rng(17);
  double worst = 0;
  for (int it = 0; it < 500; ++it) {
    int p = wt::uni(rng, 1, 200), q = wt::uni(rng, 1, 200);
    Matrix m = wt::rand_monge(rng, p, q, wt::uni(rng, 1, 30));
    REQUIRE(is_monge(m));
    SmawkStats st;
    auto fast = smawk_row_minima(m, &st);
    auto slow = naive_minima(m);
    for (int i = 0; i < p; ++i) {
      CHECK(fast[i].value == slow[i].value);
      CHECK(fast[i].arg == slow[i].arg);
    }
    worst = std::max(worst, static_cast<double>(st.probes) / (p + q));
  }
  MESSAGE("max probes/(p+q) = " << worst);
  CHECK(worst <= 8.0);
}

TEST_CASE("minplus examples and random products") {
  CHECK(minplus(Matrix{{1, 3}, {2, 3}}, Matrix{{0, 2}, {1, 1}}) == Matrix{{1, 3}, {2, 4}});
  CHECK(minplus(Matrix{{5}}, Matrix{{7}}) == Matrix{{12}});
  CHECK_THROWS(minplus(Matrix(2, 3), Matrix(4, 2)));
  wt::Rng rng(23);
  for (int it = 0; it < 150; ++it) {
    int p = wt::uni(rng, 1, 40), q = wt::uni(rng, 1, 40), r = wt::uni(rng, 1, 40), s = wt::uni(rng, 1, 20);
    Matrix a = wt::rand_monge(rng, p, q), b = wt::rand_monge(rng, q, r), c = wt::rand_monge(rng, r, s);
    Matrix ab = minplus(a, b);
    CHECK(ab == minplus_naive(a, b));
    CHECK(is_monge(ab));
    CHECK(minplus(ab, c) == minplus(a, minplus(b, c)));
  }
}

TEST_CASE("vec_minplus") {
  Matrix m{{1, 3}, {2, 3}};
  auto r = vec_minplus({0, 1}, m);
  CHECK(r.value == std::vector<Weight>{1, 3});
  CHECK(r.witness == std::vector<std::int32_t>{0, 0});
  auto z = vec_minplus({INF, INF}, m);
  CHECK(is_inf(z.value[0]));
  CHECK(is_inf(z.value[1]));
  CHECK(z.witness[0] == -1);
  Matrix bm{{0, 1, 3}, {1, 0, 1}, {3, 1, 0}};
  CHECK(vec_minplus({0, INF, INF}, bm).value == std::vector<Weight>{0, 1, 3});

  wt::Rng rng(29);
  for (int it = 0; it < 300; ++it) {
    int p = wt::uni(rng, 1, 60), q = wt::uni(rng, 1, 60);
    Matrix a = wt::rand_monge(rng, p, q);
    std::vector<Weight> v(p);
    for (auto& e : v) e = wt::uni(rng, 0, 3) == 0 ? INF : wt::uni(rng, 0, 200);
    auto fast = vec_minplus(v, a);
    auto sm = vec_minplus_smawk(v, a);
    Matrix vm(p, q);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < q; ++j) vm.set(i, j, is_inf(v[i]) ? 0 : v[i] + a(i, j));
    for (int j = 0; j < q; ++j) {
      Weight best = INF;
      int arg = -1;
      for (int i = 0; i < p; ++i)
        if (!is_inf(v[i]) && v[i] + a(i, j) < best) best = v[i] + a(i, j), arg = i;
      CHECK(fast.value[j] == best);
      CHECK(fast.witness[j] == arg);
      CHECK(sm.value[j] == best);
      CHECK(sm.witness[j] == arg);
    }
    bool finite = std::none_of(v.begin(), v.end(), [](Weight e) { return is_inf(e); });
    if (finite) CHECK(is_monge(vm));
  }
}

TEST_CASE("semigroup multiplication") {
  SemiElem a = SemiElem::of(Matrix{{1, 3}, {2, 3}});
  SemiElem b = SemiElem::of(Matrix{{0, 2}, {1, 1}});
  CHECK(sem_mul(SemiElem::z(), a, 10).is_z());
  CHECK(sem_mul(a, SemiElem::z(), 10).is_z());
  CHECK(sem_mul(SemiElem::of(Matrix(2, 3)), SemiElem::of(Matrix(4, 2)), 10).is_z());
  SemiElem c = sem_mul(a, b, 10);
  REQUIRE_FALSE(c.is_z());
  CHECK(*c.m == Matrix{{1, 3}, {2, 4}});
  CHECK(sem_mul(SemiElem::of(Matrix(3, 2)), SemiElem::of(Matrix(2, 3)), 2).is_z());
}
