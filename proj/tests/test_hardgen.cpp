// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "doctest.h"
#include "testutil.hpp"
#include "wed/dp_oracle.hpp"
#include "wed/hardgen.hpp"

using namespace wed;

namespace {

int hd(const Str& a, const Str& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

// Second transcription of the size parameters, written out term by term.
void check_params(const HardPair& hp, const BatchedInstance& b) {
  const long long m = b.m(), x = b.x(), y = b.ylen(), h = b.h, den = b.w.den(), ku = b.k / den;
  const long long r = 8 * h * (m - 1) + 8 * (m - 1) + 2 * x + ku + 6 * h + 7;
  CHECK(hp.r == r);
  const long long khat = (8 * h * (m - 1) + 8 * (m - 1) + 2 * r + 2 * x + 6 * h + 6) * den + b.k;
  CHECK(hp.k_hat == khat);
  CHECK(hp.k_tilde == khat + (6 * r + 3 * x + 6 * y + 2) * den);
  // the offset is the cost of deleting X^_p plus inserting Y^_s
  CHECK(ed_full(hp.xp, Str{}, hp.w) + ed_full(Str{}, hp.ys, hp.w) == (6 * r + 3 * x + 6 * y + 2) * den);
  CHECK(hp.sent > hp.k_tilde);
  CHECK(static_cast<long long>(hp.xh.size()) == m * (6 * r + 3 * x + 3 * y + 4));
}

void check_table(const WeightTable& w) {
  CHECK(validate_weights(w).ok);
  const int d = w.dim();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      REQUIRE(w(a, b) == w(b, a));
      for (int c = 0; c < d; ++c) REQUIRE(w(a, c) <= w(a, b) + w(b, c));
    }
}

}  // namespace

TEST_CASE("batched instances satisfy their invariants") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    BatchedInstance b = gen_batched(1 + s % 3, 4 + s % 3, 7 + s % 2, 1 + s % 2, s);
    CHECK(validate_batched(b) == "");
  }
  BatchedInstance b = gen_batched(1, 4, 5, 1, 7);
  CHECK(validate_batched(b) == "");
  BatchedInstance c = gen_batched(3, 6, 8, 2, 8);
  for (int i = 0; i + 1 < c.m(); ++i) CHECK(hd(c.xs[i], c.xs[i + 1]) <= 2);
  check_table(c.w);
  CHECK_THROWS(gen_batched(2, 3, 5, 2, 1));
  CHECK_THROWS(gen_batched(2, 6, 5, 1, 1));
  BatchedInstance bad = c;
  bad.k = 0;
  CHECK(validate_batched(bad) != "");
  bad = c;
  bad.w.at(0, 1) += 1;
  CHECK(validate_batched(bad) != "");

  BatchedOptions plant;
  plant.plant = 2;
  BatchedInstance p = gen_batched(3, 5, 6, 1, 9, plant);
  CHECK(validate_batched(p) == "");
  CHECK(ed_full(p.xs[1], p.y, p.w) <= p.k);
}

TEST_CASE("lift parameters") {
  // m = 2, h = 1, x = 4 and a threshold of 3 units
  CHECK(hard_params(2, 4, 5, 1, 3, 1).r == 40);
  CHECK(hard_params(2, 4, 5, 1, 27, 8).r == 40);
  HardParams p = hard_params(2, 4, 5, 1, 3, 1);
  CHECK(p.k_hat == 16 + 80 + 8 + 3 + 6 + 6);
  CHECK(p.k_tilde == p.k_hat + 240 + 12 + 30 + 2);
  BatchedInstance b = gen_batched(2, 4, 4, 1, 3);
  check_params(lift(b), b);
}

TEST_CASE("lifted pairs are four deletions apart") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    BatchedInstance b = gen_batched(1 + s % 3, 4 + s % 3, 6 + s % 3, 1, 100 + s);
    HardPair hp = lift(b);
    check_params(hp, b);
    CHECK(hp.x_tilde.size() == hp.y_tilde.size());
    Str xs = hp.x_tilde, ys = hp.y_tilde;
    std::erase(xs, hp.dollar);
    std::erase(ys, hp.dollar);
    CHECK(xs == ys);
    CHECK(xs.size() + 2 == hp.x_tilde.size());
    auto e = ed_bounded_unit(hp.x_tilde, hp.y_tilde, 8, false);
    CHECK(e.value <= 4);
    for (int i = 0; i <= b.m(); ++i) {
      CHECK(std::count(hp.xtop[i].begin(), hp.xtop[i].end(), hp.top) == 2 * b.h);
      CHECK(std::count(hp.xbot[i].begin(), hp.xbot[i].end(), hp.bot) == 2 * b.h);
    }
  }
}

TEST_CASE("hat weights are symmetric metrics") {
  BatchedInstance b = gen_batched(2, 4, 5, 1, 11);
  HardPair hp = lift(b);
  check_table(hp.w);
}

TEST_CASE("equivalence on small instances") {
  int yes = 0, no = 0;
  for (std::uint64_t s = 0; s < 12; ++s) {
    BatchedOptions o;
    if (s % 2) o.plant = 1 + static_cast<int>(s % 3) % (1 + s % 2);
    int m = 1 + s % 2;
    if (o.plant) o.plant = std::min(*o.plant, m);
    BatchedInstance b = gen_batched(m, 4, 5, 1, 500 + s, o);
    HardPair hp = lift(b);
    SmallReport r = verify_small(hp, b);
    CHECK(r.equivalent);
    CHECK(r.gadgets);
    CHECK(r.offset);
    CHECK(r.witness);
    (r.batched <= b.k ? yes : no)++;
  }
  CHECK(yes > 0);
  CHECK(no > 0);
}

TEST_CASE("tightened threshold flips a boundary instance") {
  int tried = 0;
  for (std::uint64_t s = 0; s < 40 && tried < 3; ++s) {
    BatchedOptions o;
    o.den = 4;
    BatchedInstance b = gen_batched(2, 4, 5, 1, 900 + s, o);
    Weight best = brute_min_batched(b.xs, b.y, b.w);
    const Weight lo = (2 * b.ylen() - b.x()) * b.w.den();
    // boundary: the minimum sits strictly inside the admissible threshold range
    if (best <= lo || best >= lo + b.w.den()) continue;
    ++tried;
    b.k = best;
    HardPair hp = lift(b);
    CHECK(verify_small(hp, b).ok());
    CHECK(verify_small(hp, b).lifted <= hp.k_tilde);
    b.k = best - 1;
    HardPair tight = lift(b);
    CHECK(tight.x_tilde == hp.x_tilde);
    CHECK(tight.k_tilde == hp.k_tilde - 1);
    SmallReport r = verify_small(tight, b);
    CHECK(r.ok());
    CHECK(r.lifted > tight.k_tilde);
    CHECK(r.lifted == hp.k_tilde);
  }
  CHECK(tried > 0);
}

TEST_CASE("dagger streams") {
  WeightTable unit = WeightTable::unit(3, 2);
  DaggerStream one = gen_dagger_stream({from_string("abca")}, {from_string("abca")}, {2}, unit);
  CHECK(one.expected == std::vector<Weight>{0});
  CHECK(std::count_if(one.workload.commands.begin(), one.workload.commands.end(), [](auto& c) { return c.query; }) == 1);
  CHECK(run_workload(one.workload, false)[0].value == 0);

  DaggerStream two = gen_dagger_stream({from_string("abc"), from_string("cab")}, {from_string("abc"), from_string("cbb")}, {2, 2}, unit);
  CHECK(two.expected == std::vector<Weight>{0, 2});
  auto ans = run_workload(two.workload, false);
  REQUIRE(ans.size() == 2);
  CHECK(ans[0].value == 0);
  CHECK(ans[1].value == 2);
  CHECK_THROWS(gen_dagger_stream({from_string("aaaaa")}, {from_string("bbbbb")}, {5}, unit));

  for (std::uint64_t s = 0; s < 6; ++s) {
    DaggerStream d = gen_dagger_random(4, 12, 3, 2, 6, s);
    auto a = run_workload(d.workload, true);
    REQUIRE(a.size() == d.expected.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].value == d.expected[i]);
      if (!is_inf(a[i].value)) {
        REQUIRE(a[i].alignment.has_value());
      }
    }
    // Y returns to X at the end of the stream
    Str y = d.workload.y;
    for (auto& c : d.workload.commands)
      if (!c.query) y = apply_edit(y, c.edit);
    CHECK(y == d.workload.x);
  }
}
