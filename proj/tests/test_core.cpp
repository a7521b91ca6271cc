// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "testutil.hpp"
#include "wed/dp_oracle.hpp"

using namespace wed;

TEST_CASE("validate_weights reports the first bad cell") {
  WeightTable t = WeightTable::unit(3, 4);
  CHECK(validate_weights(t).ok);
  WeightTable d = t;
  d.at(2, 2) = 1;
  auto r = validate_weights(d);
  CHECK_FALSE(r.ok);
  CHECK(r.a == 2);
  CHECK(r.b == 2);
  WeightTable s = t;
  s.at(0, 1) = 3;
  r = validate_weights(s);
  CHECK_FALSE(r.ok);
  CHECK(r.a == 0);
  CHECK(r.b == 1);
}

TEST_CASE("cap_weights") {
  WeightTable t = WeightTable::unit(2, 10);
  t.at(0, 1) = 50;
  t.at(1, 0) = 20;
  WeightTable c = cap_weights(t, 3);
  CHECK(c(0, 1) == 40);
  CHECK(c(1, 0) == 20);
  CHECK(validate_weights(c).ok);
  CHECK(cap_weights(c, 3) == c);
  CHECK_THROWS(cap_weights(t, 0));
}

TEST_CASE("capping preserves bounded distances") {
  wt::Rng rng(11);
  for (int it = 0; it < 200; ++it) {
    int sigma = wt::uni(rng, 1, 4);
    WeightTable w = wt::rand_weights(rng, sigma, 3, 8);
    int k = wt::uni(rng, 1, 6);
    Str x = wt::rand_str(rng, wt::uni(rng, 0, 12), sigma), y = wt::rand_str(rng, wt::uni(rng, 0, 12), sigma);
    WeightTable c = cap_weights(w, k);
    for (int a = 0; a <= sigma; ++a)
      for (int b = 0; b <= sigma; ++b) CHECK(c(a, b) <= w(a, b));
    Weight full = ed_full(x, y, w), capped = ed_full(x, y, c);
    CHECK(k_equiv(full, capped, k * w.den()));
    CHECK(ed_bounded(x, y, k, w).value == ed_bounded(x, y, k, c).value);
  }
}

TEST_CASE("k_equiv") {
  CHECK(k_equiv(5, 5, 3));
  CHECK(k_equiv(4, 7, 3));
  CHECK_FALSE(k_equiv(2, 3, 3));
  CHECK(k_equiv(INF, 9, 3));
}

TEST_CASE("alignment_cost basics") {
  WeightTable u = WeightTable::unit(3, 5);
  Str x = from_string("abc");
  CHECK(alignment_cost(x, x, identity_breakpoints(3), u) == 0);
  Str ab = from_string("ab");
  CHECK(alignment_cost(ab, {}, Breakpoints{{0, 0}, {1, 0}, {2, 0}}, u) == 10);
  CHECK_THROWS(alignment_cost(ab, {}, Breakpoints{{0, 0}, {2, 1}}, u));
  CHECK_THROWS(alignment_cost(ab, ab, Breakpoints{{0, 0}, {1, 1}, {0, 1}}, u));
}

namespace {

// Walks every unit step explicitly, independent of expand_breakpoints.
Weight walk_cost(const Str& x, const Str& y, const std::vector<Vertex>& steps, const WeightTable& w) {
  Weight c = 0;
  for (std::size_t i = 1; i < steps.size(); ++i) {
    int dx = steps[i].x - steps[i - 1].x, dy = steps[i].y - steps[i - 1].y;
    if (dx == 1 && dy == 1) c += w(x[steps[i - 1].x], y[steps[i - 1].y]);
    else if (dx == 1) c += w(x[steps[i - 1].x], w.eps());
    else c += w(w.eps(), y[steps[i - 1].y]);
  }
  return c;
}

std::vector<Vertex> random_walk(wt::Rng& rng, int n, int m) {
  std::vector<Vertex> p{{0, 0}};
  while (p.back().x < n || p.back().y < m) {
    Vertex v = p.back();
    int c = wt::uni(rng, 0, 2);
    if (v.x == n) c = 1;
    else if (v.y == m) c = 0;
    if (c == 0) ++v.x;
    else if (c == 1) ++v.y;
    else ++v.x, ++v.y;
    p.push_back(v);
  }
  return p;
}

}  // namespace

TEST_CASE("breakpoints round-trip through scripts") {
  wt::Rng rng(5);
  for (int it = 0; it < 500; ++it) {
    int sigma = wt::uni(rng, 1, 3);
    WeightTable w = wt::rand_weights(rng, sigma, 2);
    Str x = wt::rand_str(rng, wt::uni(rng, 0, 10), sigma), y = wt::rand_str(rng, wt::uni(rng, 0, 10), sigma);
    auto walk = random_walk(rng, static_cast<int>(x.size()), static_cast<int>(y.size()));
    Breakpoints bp = compress_path(x, y, walk);
    CHECK(bp.front() == Vertex{0, 0});
    CHECK(expand_breakpoints(x, y, bp).size() >= bp.size());
    CHECK(alignment_cost(x, y, bp, w) == walk_cost(x, y, walk, w));
    EditScript s = script_from_breakpoints(x, y, bp);
    CHECK(apply_edits(x, s) == y);
    CHECK(alignment_cost(x, y, breakpoints_from_script(x, s), w) <= alignment_cost(x, y, bp, w));
    CHECK(ed_full(x, y, WeightTable::unit(sigma)) <= static_cast<Weight>(s.size()));
    auto phi = script_offsets(x, s);
    CHECK(phi.back() == static_cast<int>(y.size()));
  }
}

TEST_CASE("apply_edits and script checks") {
  Str abc = from_string("abc");
  CHECK(to_string(apply_edits(abc, {{Op::Del, 1, 0}})) == "ac");
  CHECK(apply_edits(abc, {}) == abc);
  CHECK(to_string(apply_edits(abc, {{Op::Ins, 0, 3}, {Op::Sub, 0, 1}, {Op::Ins, 3, 4}})) == "dbbce");
  CHECK_THROWS_AS(apply_edits(abc, {{Op::Del, 3, 0}}), std::out_of_range);
  CHECK_THROWS_AS(apply_edits(abc, {{Op::Del, 2, 0}, {Op::Del, 1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(apply_edits(abc, {{Op::Del, 1, 0}, {Op::Ins, 1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(apply_edits(abc, {{Op::Sub, 1, 1}}), std::invalid_argument);
  CHECK(to_string(apply_edit(abc, {Op::Ins, 3, 0})) == "abca");
}

TEST_CASE("script_offsets") {
  Str x = from_string("abcd");
  EditScript s{{Op::Ins, 0, 0}, {Op::Del, 1, 0}, {Op::Ins, 4, 1}};
  auto phi = script_offsets(x, s);
  CHECK(phi == std::vector<int>{0, 2, 2, 3, 5});
}
