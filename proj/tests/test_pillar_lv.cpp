// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "doctest.h"
#include "testutil.hpp"
#include "wed/dp_oracle.hpp"
#include "wed/pillar_lv.hpp"

using namespace wed;

namespace {

int scan_lcp(const Str& a, int i, const Str& b, int j) {
  int l = 0;
  while (i + l < static_cast<int>(a.size()) && j + l < static_cast<int>(b.size()) && a[i + l] == b[j + l]) ++l;
  return l;
}

// Unit-cost walk of a breakpoint path in the grid of X against Y where
// main-diagonal steps are forbidden when self is set.
int walk_cost(const Str& x, const Str& y, const Breakpoints& bp, bool self) {
  std::vector<Vertex> p = expand_breakpoints(x, y, bp);
  int c = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    Vertex a = p[i - 1], b = p[i];
    if (b.x == a.x + 1 && b.y == a.y + 1) {
      if (self) REQUIRE(a.x != a.y);
      c += x[a.x] != y[a.y];
    } else {
      ++c;
    }
  }
  return c;
}

void check_self(const Str& x) {
  const int n = static_cast<int>(x.size());
  int bs = brute_self_ed(x);
  for (int k : {1, 2, 3, 5, 8}) {
    auto r = self_ed(x, k);
    if (bs <= k) {
      REQUIRE(r.has_value());
      CHECK(r->value == bs);
      CHECK(r->alignment.front() == Vertex{0, 0});
      CHECK(r->alignment.back() == Vertex{n, n});
      CHECK(walk_cost(x, x, r->alignment, true) == bs);
    } else {
      CHECK_FALSE(r.has_value());
    }
    int bk = brute_sed_k(x, k);
    auto s = sed_k(x, k);
    if (bk <= k) {
      REQUIRE(s.has_value());
      CHECK(s->value == bk);
      Vertex a = s->alignment.front(), b = s->alignment.back();
      CHECK(a.y == 0);
      CHECK(a.x <= std::min(n, k));
      CHECK(b.x == n);
      CHECK(b.y >= std::max(0, n - k));
      CHECK(walk_cost(x, x, s->alignment, true) == bk);
    } else {
      CHECK_FALSE(s.has_value());
    }
    CHECK((bk == 0) == (smallest_period(x) <= k));
  }
}

}  // namespace

TEST_CASE("rope primitives") {
  auto sp = std::make_shared<const FpSpace>(42);
  FRope a(from_string("abcd"), sp), b(from_string("abce"), sp);
  CHECK(a.length() == 4);
  CHECK(a.access(2) == 2);
  CHECK(FRope::lcp(a, 0, b, 0) == 3);
  CHECK(FRope::lcp(a, 0, a, 0) == 4);
  FRope c = a.edited({Op::Sub, 1, 23});
  CHECK(FRope::lcp(a, 0, c, 0) == 1);
  CHECK(a.to_str() == from_string("abcd"));
  CHECK(c.extract(1, 3) == Str{23, 2});
  CHECK(FRope::lcp_reverse(a, 4, b, 3) == 0);
  CHECK(FRope::lcp_reverse(a, 3, b, 3) == 3);
  CHECK_THROWS(a.access(4));
  CHECK_THROWS(FRope::lcp(a, 0, FRope(from_string("abcd"), std::make_shared<const FpSpace>(7)), 0));
  FRope e(Str{}, sp);
  CHECK(e.length() == 0);
  CHECK(FRope::lcp(e, 0, a, 0) == 0);
}

TEST_CASE("rope edits and fingerprints follow a plain vector") {
  wt::Rng rng(3);
  auto sp = std::make_shared<const FpSpace>(rng());
  Str s = wt::rand_str(rng, 50, 3);
  FRope r(s, sp);
  std::vector<std::pair<FRope, Str>> hist{{r, s}};
  for (int it = 0; it < 2000; ++it) {
    int n = static_cast<int>(s.size());
    int op = n == 0 ? 0 : wt::uni(rng, 0, 2);
    Edit e = op == 0   ? Edit{Op::Ins, wt::uni(rng, 0, n), wt::uni(rng, 0, 2)}
             : op == 1 ? Edit{Op::Del, wt::uni(rng, 0, n - 1), 0}
                       : Edit{Op::Sub, wt::uni(rng, 0, n - 1), wt::uni(rng, 0, 2)};
    r = r.edited(e);
    s = apply_edit(s, e);
    if (it % 50 == 0) hist.push_back({r, s});
    n = static_cast<int>(s.size());
    REQUIRE(r.length() == n);
    if (n == 0) continue;
    int i = wt::uni(rng, 0, n), j = wt::uni(rng, 0, n);
    CHECK(FRope::lcp(r, i, r, j) == scan_lcp(s, i, s, j));
    int l = wt::uni(rng, 0, n), h = wt::uni(rng, l, n);
    Str rv(s.begin() + l, s.begin() + h);
    std::reverse(rv.begin(), rv.end());
    FRope rr(rv, sp);
    CHECK(r.reverse_fingerprint(l, h) == rr.fingerprint(0, h - l));
    CHECK(r.extract(l, h) == Str(s.begin() + l, s.begin() + h));
  }
  for (auto& [hr, hs] : hist) CHECK(hr.to_str() == hs);
  auto [p, q] = r.split(r.length() / 2);
  CHECK(p.concat(q).to_str() == s);
}

TEST_CASE("bounded edit distance by waves") {
  auto k3 = lv_ed(from_string("kitten"), from_string("sitting"), 5);
  REQUIRE(k3.has_value());
  CHECK(k3->value == 3);
  CHECK_FALSE(lv_ed(from_string("abc"), Str{}, 2).has_value());
  auto id = lv_ed(from_string("abc"), from_string("abc"), 0);
  REQUIRE(id.has_value());
  CHECK(id->alignment == identity_breakpoints(3));
  wt::Rng rng(4);
  WeightTable unit = WeightTable::unit(4);
  for (int it = 0; it < 600; ++it) {
    Str x = wt::rand_str(rng, wt::uni(rng, 0, 30), wt::uni(rng, 1, 4));
    Str y = it % 2 ? apply_edits(x, wt::rand_script(rng, x, wt::uni(rng, 0, 6), 4)) : wt::rand_str(rng, wt::uni(rng, 0, 30), 4);
    int k = wt::uni(rng, 0, 10);
    auto r = lv_ed(x, y, k);
    EdResult ref = ed_bounded(x, y, k, unit, false);
    if (is_inf(ref.value)) {
      CHECK_FALSE(r.has_value());
    } else {
      REQUIRE(r.has_value());
      CHECK(r->value == ref.value);
      CHECK(alignment_cost(x, y, r->alignment, unit) == ref.value);
      auto sp = FpSpace::global();
      CHECK(apply_edits(x, rope_script(FRope(x, sp), FRope(y, sp), r->alignment)) == y);
    }
  }
}

TEST_CASE("self edit distance examples") {
  CHECK(self_ed(from_string("aa"), 2)->value == 2);
  CHECK_FALSE(self_ed(from_string("ab"), 2).has_value());
  CHECK(self_ed(from_string("abababab"), 2)->value == 2);
  CHECK(self_ed(Str{}, 1)->value == 0);
  CHECK(sed_k(from_string("ab"), 1)->value == 1);
  CHECK(sed_k(from_string("abab"), 2)->value == 0);
  CHECK(sed_k(Str{}, 3)->value == 0);
}

TEST_CASE("self edit distances on all short binary strings") {
  for (int n = 0; n <= 12; ++n)
    for (int mask = 0; mask < (1 << n); ++mask) {
      Str x(n);
      for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1;
      check_self(x);
    }
}

TEST_CASE("self edit distances on random strings") {
  wt::Rng rng(9);
  for (int it = 0; it < 300; ++it) {
    int n = wt::uni(rng, 0, 60);
    Str x;
    if (it % 3 == 0) {
      Str unit = wt::rand_str(rng, wt::uni(rng, 1, 5), 3);
      while (static_cast<int>(x.size()) < n) x.push_back(unit[x.size() % unit.size()]);
      if (n > 0 && it % 2) x[wt::uni(rng, 0, n - 1)] = 2;
    } else {
      x = wt::rand_str(rng, n, wt::uni(rng, 1, 3));
    }
    check_self(x);
  }
}

TEST_CASE("shifted self distances add up below the self distance") {
  wt::Rng rng(10);
  int tried = 0;
  for (int it = 0; it < 400; ++it) {
    int k = wt::uni(rng, 1, 8);
    Str unit = wt::rand_str(rng, wt::uni(rng, 1, 4), 2);
    Str x;
    int n = wt::uni(rng, 1, 60);
    while (static_cast<int>(x.size()) < n) x.push_back(unit[x.size() % unit.size()]);
    for (int t = wt::uni(rng, 0, 2); t > 0; --t) x[wt::uni(rng, 0, n - 1)] = wt::uni(rng, 0, 2);
    auto se = self_ed(x, k);
    if (!se) continue;
    ++tried;
    std::vector<int> cuts{0, n};
    for (int c = wt::uni(rng, 0, 6); c > 0; --c) cuts.push_back(wt::uni(rng, 0, n));
    std::sort(cuts.begin(), cuts.end());
    int sum = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      Str part(x.begin() + cuts[i], x.begin() + cuts[i + 1]);
      sum += brute_sed_k(part, k);
    }
    CHECK(sum <= se->value);
  }
  CHECK(tried > 100);
}

TEST_CASE("fingerprints separate distinct fragments") {
  wt::Rng rng(11);
  Str tm(4096);
  for (int i = 0; i < 4096; ++i) tm[i] = __builtin_popcount(i) & 1;
  auto sp = std::make_shared<const FpSpace>(rng());
  FRope r(tm, sp);
  long long eq = 0, wrong = 0;
  for (int it = 0; it < 100000; ++it) {
    int len = wt::uni(rng, 1, 64), i = wt::uni(rng, 0, 4096 - len), j = wt::uni(rng, 0, 4096 - len);
    bool f = r.fingerprint(i, i + len) == r.fingerprint(j, j + len);
    bool s = std::equal(tm.begin() + i, tm.begin() + i + len, tm.begin() + j);
    eq += s;
    wrong += f != s;
  }
  CHECK(wrong == 0);
  CHECK(eq > 0);
}
