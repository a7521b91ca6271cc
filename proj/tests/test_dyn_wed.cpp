// SPDX-License-Identifier: Apache-2.0
#include <map>
#include <queue>
#include <set>

#include "doctest.h"
#include "testutil.hpp"
#include "wed/dp_oracle.hpp"
#include "wed/dyn_wed.hpp"

using namespace wed;

namespace {

void check_partition(const DynWed& d) {
  if (d.fallback()) {
    CHECK(d.length() <= d.k());
    return;
  }
  auto c = d.cuts();
  REQUIRE(c.front() == 0);
  REQUIRE(c.back() == d.length());
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    CHECK(c[i + 1] - c[i] >= d.k());
    CHECK(c[i + 1] - c[i] < 2 * d.k());
  }
}

void check_answer(const DynWed& d, const EditScript& s, const WeightTable& w) {
  Str z = apply_edits(d.text(), s);
  EdResult ref = ed_bounded(d.text(), z, d.k(), w, false);
  WedAnswer a = d.query(s);
  REQUIRE(a.value == ref.value);
  if (!is_inf(a.value)) {
    REQUIRE(a.alignment.has_value());
    CHECK(alignment_cost(d.text(), z, *a.alignment, w) == a.value);
  }
  CHECK(d.query(s, false).value == ref.value);
}

Edit rand_edit(wt::Rng& rng, int n, int sigma) {
  int op = n == 0 ? 0 : wt::uni(rng, 0, 2);
  if (op == 0) return {Op::Ins, wt::uni(rng, 0, n), wt::uni(rng, 0, sigma - 1)};
  if (op == 1) return {Op::Del, wt::uni(rng, 0, n - 1), 0};
  return {Op::Sub, wt::uni(rng, 0, n - 1), wt::uni(rng, 0, sigma - 1)};
}

// Distances inside the union of all boxes of d (as a subgraph of the
// augmented grid of X against itself) from one vertex.
std::map<std::pair<int, int>, Weight> union_dist(const DynWed& d, Vertex src) {
  const Str& x = d.text();
  const int n = d.length(), k2 = 2 * d.k();
  auto c = d.cuts();
  const WeightTable& w = d.weights();
  const Weight wb = d.big_w() + 1;
  using V = std::pair<int, int>;
  std::map<V, std::vector<std::pair<V, Weight>>> adj;
  std::set<std::pair<V, V>> seen;
  auto add = [&](V a, V b, Weight cost) {
    if (seen.insert({a, b}).second) {
      adj[a].push_back({b, cost});
      adj[b].push_back({a, wb});
    }
  };
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    int x0 = c[i], x1 = c[i + 1], y0 = std::max(x0 - k2, 0), y1 = std::min(x1 + k2, n);
    for (int a = x0; a <= x1; ++a)
      for (int b = y0; b <= y1; ++b) {
        if (a < x1) add({a, b}, {a + 1, b}, w.del(x[a]));
        if (b < y1) add({a, b}, {a, b + 1}, w.ins(x[b]));
        if (a < x1 && b < y1) add({a, b}, {a + 1, b + 1}, w.sub(x[a], x[b]));
      }
  }
  std::map<V, Weight> dist;
  std::priority_queue<std::pair<Weight, V>, std::vector<std::pair<Weight, V>>, std::greater<>> pq;
  dist[{src.x, src.y}] = 0;
  pq.push({0, {src.x, src.y}});
  while (!pq.empty()) {
    auto [dv, u] = pq.top();
    pq.pop();
    if (dv != dist[u]) continue;
    for (auto& [v, cost] : adj[u]) {
      auto it = dist.find(v);
      if (it == dist.end() || dv + cost < it->second) {
        dist[v] = dv + cost;
        pq.push({dv + cost, v});
      }
    }
  }
  return dist;
}

}  // namespace

TEST_CASE("partition lengths stay in range") {
  for (int k = 1; k <= 12; ++k)
    for (int len = k; len <= 150; ++len) {
      auto p = partition_lengths(len, k);
      int s = 0;
      for (int l : p) {
        CHECK(l >= k);
        CHECK(l < 2 * k);
        s += l;
      }
      CHECK(s == len);
    }
  CHECK_THROWS(partition_lengths(2, 3));
}

TEST_CASE("empty and short strings use the flat fallback") {
  WeightTable w = WeightTable::unit(3);
  DynWed d(Str{}, 3, w);
  CHECK(d.fallback());
  CHECK(d.query({}).value == 0);
  auto a = d.query({{Op::Ins, 0, 1}, {Op::Ins, 0, 2}});
  CHECK(a.value == 2);
  CHECK(alignment_cost({}, Str{1, 2}, *a.alignment, w) == 2);
  CHECK(d.query({{Op::Ins, 0, 1}, {Op::Ins, 0, 2}, {Op::Ins, 0, 0}}).value == 3);
  d.edit({Op::Ins, 0, 1});
  d.edit({Op::Ins, 1, 2});
  CHECK(d.fallback());
  CHECK(d.query({{Op::Del, 0, 0}, {Op::Del, 1, 0}}).value == 2);
  for (int i = 0; i < 3; ++i) d.edit({Op::Ins, 0, 0});
  CHECK_FALSE(d.fallback());
  check_partition(d);
  d.edit({Op::Del, 0, 0});
  d.edit({Op::Del, 0, 0});
  CHECK(d.fallback());
}

TEST_CASE("weighted substitution example") {
  WeightTable w(2, 2);
  w.at(0, 1) = w.at(1, 0) = 3;
  for (int a = 0; a < 2; ++a) w.at(a, 2) = w.at(2, a) = 2;
  DynWed d(from_string("aaaa"), 2, w);
  auto a = d.query({{Op::Sub, 0, 1}});
  CHECK(a.value == 3);
  CHECK(a.alignment->front() == Vertex{0, 0});
  DynWed d1(from_string("aaaaaaaaaaaa"), 1, w);
  CHECK(d1.query({{Op::Sub, 5, 1}}).value == INF);
}

TEST_CASE("phrase layout") {
  wt::Rng rng(5);
  for (int k : {1, 2, 3, 5, 8}) {
    DynWed d(wt::rand_str(rng, 10 * k, 3), k, WeightTable::unit(3));
    check_partition(d);
    CHECK(d.phrase_count() >= 5);
    CHECK(d.phrase_count() <= 10);
    CHECK(d.query({}).alignment == identity_breakpoints(10 * k));
  }
}

TEST_CASE("stored matrices are boundary blocks of their boxes") {
  wt::Rng rng(6);
  for (int it = 0; it < 12; ++it) {
    int k = wt::uni(rng, 1, 6), sigma = wt::uni(rng, 1, 4);
    int n = wt::uni(rng, k + 1, 60);
    WeightTable w = wt::rand_weights(rng, sigma, wt::uni(rng, 1, 2));
    DynWed d(wt::rand_str(rng, n, sigma), k, w);
    auto c = d.cuts();
    for (int i = 0; i < d.phrase_count(); ++i) {
      const PhraseBox& pb = d.phrase(i);
      int x0 = c[i], x1 = c[i + 1], y0 = std::max(x0 - 2 * k, 0), y1 = std::min(x1 + 2 * k, n);
      CHECK(pb.lead == x0 - y0);
      CHECK(pb.tail == y1 - x1);
      const Str& x = d.text();
      AugGridSpec g(Str(x.begin() + x0, x.begin() + x1), Str(x.begin() + y0, x.begin() + y1), d.weights(), d.big_w());
      Matrix bm = brute_boundary_matrix(g);
      Matrix dm = d.d_matrix(i);
      int h = y1 - y0, vin = i == 0 ? 0 : std::min(x0 + 2 * k, n) - y0;
      int vout = i + 1 == d.phrase_count() ? 0 : y1 - std::max(x1 - 2 * k, 0);
      REQUIRE(dm.rows() == vin + 1);
      REQUIRE(dm.cols() == vout + 1);
      CHECK(dm.rows() <= 4 * k + 1);
      bool same = true;
      for (int r = 0; r <= vin; ++r)
        for (int s = 0; s <= vout; ++s) same = same && dm(r, s) == bm(h - vin + r, x1 - x0 + s);
      CHECK(same);
      CHECK(is_monge(dm));
    }
  }
}

TEST_CASE("chained separators match distances in the union of boxes") {
  wt::Rng rng(7);
  for (int it = 0; it < 30; ++it) {
    int k = wt::uni(rng, 1, 4), sigma = wt::uni(rng, 1, 3);
    int n = wt::uni(rng, 4 * k, 40);
    WeightTable w = wt::rand_weights(rng, sigma, 1);
    DynWed d(wt::rand_str(rng, n, sigma), k, w);
    int m = d.phrase_count();
    auto c = d.cuts();
    int a = wt::uni(rng, 0, m - 1), b = wt::uni(rng, a + 1, m);
    SemiElem prod = d.tree().fold(a, b);
    REQUIRE_FALSE(prod.is_z());
    const Matrix& p = *prod.m;
    // Middle separator: the product through it is the same chain.
    if (b - a >= 2) {
      int mid = wt::uni(rng, a + 1, b - 1);
      Matrix split = minplus_naive(*d.tree().fold(a, mid).m, *d.tree().fold(mid, b).m);
      CHECK(split == p);
    }
    int yb = b == m ? n : std::max(c[b] - 2 * k, 0);
    int ya1 = a == 0 ? 0 : std::min(c[a] + 2 * k, n);
    for (int r = 0; r < p.rows(); ++r) {
      auto dist = union_dist(d, {c[a], ya1 - r});
      for (int s = 0; s < p.cols(); ++s) {
        int yy = (b == m ? n : std::min(c[b] + 2 * k, n)) - s;
        REQUIRE(yy >= yb);
        Weight bd = dist.at({c[b], yy});
        CHECK(p(r, s) == bd);
      }
    }
  }
}

TEST_CASE("random edits and queries agree with the band DP") {
  for (int seed = 0; seed < 24; ++seed) {
    wt::Rng rng(100 + seed);
    int k = std::vector<int>{1, 2, 3, 4, 8, 16}[seed % 6], sigma = wt::uni(rng, 1, 6);
    WeightTable w = wt::rand_weights(rng, sigma, std::vector<Weight>{1, 2, 6}[seed % 3], 4);
    DynWed d(wt::rand_str(rng, wt::uni(rng, 0, 120), sigma), k, w);
    check_partition(d);
    for (int op = 0; op < 60; ++op) {
      if (wt::uni(rng, 0, 1) == 0) {
        d.edit(rand_edit(rng, d.length(), sigma));
        check_partition(d);
      } else {
        int u = wt::uni(rng, 0, k);
        EditScript s = wt::rand_script(rng, d.text(), u, sigma);
        if (static_cast<int>(s.size()) > k) s.resize(k);
        check_answer(d, s, w);
      }
    }
  }
}

TEST_CASE("queries reject bad scripts") {
  WeightTable w = WeightTable::unit(2);
  DynWed d(from_string("abababababab"), 2, w);
  CHECK_THROWS(d.query({{Op::Sub, 3, 0}, {Op::Sub, 1, 0}}));
  CHECK_THROWS(d.query({{Op::Del, 0, 0}, {Op::Del, 1, 0}, {Op::Del, 2, 0}}));
  CHECK_THROWS(d.query({{Op::Del, 12, 0}}));
  CHECK_THROWS(d.edit({Op::Del, 12, 0}));
  CHECK_THROWS(d.edit({Op::Ins, 0, 7}));
}

TEST_CASE("threshold doubling stays low for small distances") {
  wt::Rng rng(8);
  WeightTable w = WeightTable::unit(4);
  Str x = wt::rand_str(rng, 300, 4);
  DynWedMulti mw(x, 64, w);
  CHECK(mw.levels().size() == 7);
  CHECK(mw.query({}).value == 0);
  CHECK(mw.last_thresholds() == std::vector<int>{1});
  EditScript s{{Op::Sub, 100, static_cast<Symbol>((x[100] + 1) % 4)}};
  auto a = mw.query(s);
  CHECK(a.value == 1);
  for (int t : mw.last_thresholds()) CHECK(t <= 4);
  for (int op = 0; op < 30; ++op) {
    Edit e = rand_edit(rng, mw.text().size(), 4);
    mw.edit(e);
    EditScript q = wt::rand_script(rng, mw.text(), wt::uni(rng, 0, 6), 4);
    Str z = apply_edits(mw.text(), q);
    WedAnswer r = mw.query(q);
    CHECK(r.value == ed_bounded(mw.text(), z, 64, w, false).value);
    CHECK(r.value == mw.levels().back().query(q, false).value);
    if (!is_inf(r.value)) CHECK(alignment_cost(mw.text(), z, *r.alignment, w) == r.value);
    if (static_cast<int>(q.size()) <= 2 && r.value <= 2)
      for (int t : mw.last_thresholds()) CHECK(t <= 4);
  }
}
