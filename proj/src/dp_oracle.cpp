// SPDX-License-Identifier: Apache-2.0
#include "wed/dp_oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstdint>
#include <functional>
#include <queue>

#include "wed/grid.hpp"

namespace wed {

namespace {

Weight threshold(long long k, Weight den) {
  if (k < 0) return -1;
  if (k >= INF / den) return INF - 1;
  return static_cast<Weight>(k) * den;
}

enum : std::uint8_t { kNone = 0, kDiag = 1, kDel = 2, kIns = 3 };

template <class Cost>
EdResult banded(const Str& x, const Str& y, long long k, Weight den, const Cost& w, bool want_alignment) {
  const int n = static_cast<int>(x.size()), m = static_cast<int>(y.size());
  const Weight lim = threshold(k, den);
  EdResult res;
  if (lim < 0 || std::abs(n - m) > k) return res;
  const int band = static_cast<int>(std::min<long long>(k, std::max(n, m)));
  const int wd = 2 * band + 1;  // column d = x - y + band
  std::vector<Weight> prev(wd, INF), cur(wd, INF);
  std::vector<std::uint8_t> dir;
  if (want_alignment) dir.assign(static_cast<std::size_t>(m + 1) * wd, kNone);
  auto at = [&](int yy, int d) -> std::uint8_t& { return dir[static_cast<std::size_t>(yy) * wd + d]; };

  for (int yy = 0; yy <= m; ++yy) {
    std::fill(cur.begin(), cur.end(), INF);
    int xlo = std::max(0, yy - band), xhi = std::min(n, yy + band);
    Weight row_min = INF;
    for (int xx = xlo; xx <= xhi; ++xx) {
      int d = xx - yy + band;
      Weight best = INF;
      std::uint8_t how = kNone;
      if (xx == 0 && yy == 0) best = 0;
      if (xx > 0 && yy > 0 && prev[d] < INF) {
        Weight c = prev[d] + w.sub(x[xx - 1], y[yy - 1]);
        if (c < best) best = c, how = kDiag;
      }
      if (xx > 0 && d > 0 && cur[d - 1] < INF) {
        Weight c = cur[d - 1] + w.del(x[xx - 1]);
        if (c < best) best = c, how = kDel;
      }
      if (yy > 0 && d + 1 < wd && prev[d + 1] < INF) {
        Weight c = prev[d + 1] + w.ins(y[yy - 1]);
        if (c < best) best = c, how = kIns;
      }
      if (best > lim) best = INF;
      cur[d] = best;
      if (want_alignment) at(yy, d) = how;
      row_min = std::min(row_min, best);
    }
    if (is_inf(row_min)) return res;
    std::swap(prev, cur);
  }
  Weight v = prev[n - m + band];
  if (is_inf(v)) return res;
  res.value = v;
  if (want_alignment) {
    Path p{{n, m}};
    int xx = n, yy = m;
    while (xx > 0 || yy > 0) {
      switch (at(yy, xx - yy + band)) {
        case kDiag: --xx, --yy; break;
        case kDel: --xx; break;
        case kIns: --yy; break;
        default: throw std::logic_error("ed_bounded: broken traceback");
      }
      p.push_back({xx, yy});
    }
    std::reverse(p.begin(), p.end());
    res.alignment = compress_path(x, y, p);
  }
  return res;
}

struct UnitCost {
  Weight sub(Symbol a, Symbol b) const { return a != b; }
  Weight del(Symbol) const { return 1; }
  Weight ins(Symbol) const { return 1; }
};

}  // namespace

EdResult ed_bounded(const Str& x, const Str& y, long long k, const WeightTable& w, bool want_alignment) {
  return banded(x, y, k, w.den(), w, want_alignment);
}

EdResult ed_bounded_unit(const Str& x, const Str& y, long long k, bool want_alignment) {
  return banded(x, y, k, 1, UnitCost{}, want_alignment);
}

Weight ed_full(const Str& x, const Str& y, const WeightTable& w) {
  const int n = static_cast<int>(x.size()), m = static_cast<int>(y.size());
  std::vector<Weight> prev(n + 1), cur(n + 1);
  prev[0] = 0;
  for (int xx = 1; xx <= n; ++xx) prev[xx] = prev[xx - 1] + w.del(x[xx - 1]);
  for (int yy = 1; yy <= m; ++yy) {
    cur[0] = prev[0] + w.ins(y[yy - 1]);
    for (int xx = 1; xx <= n; ++xx)
      cur[xx] = std::min({prev[xx] + w.ins(y[yy - 1]), prev[xx - 1] + w.sub(x[xx - 1], y[yy - 1]),
                          cur[xx - 1] + w.del(x[xx - 1])});
    std::swap(prev, cur);
  }
  return prev[n];
}

namespace {

std::vector<Weight> dijkstra(const AugGridSpec& g, Vertex src, bool back) {
  const int n = static_cast<int>(g.x.size()), m = static_cast<int>(g.y.size());
  auto id = [&](int xx, int yy) { return xx * (m + 1) + yy; };
  std::vector<Weight> dist(static_cast<std::size_t>(n + 1) * (m + 1), INF);
  using Item = std::pair<Weight, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[id(src.x, src.y)] = 0;
  pq.push({0, id(src.x, src.y)});
  const Weight wb = g.back();
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != dist[u]) continue;
    int xx = u / (m + 1), yy = u % (m + 1);
    auto relax = [&](int ax, int ay, Weight c) {
      int v = id(ax, ay);
      if (d + c < dist[v]) {
        dist[v] = d + c;
        pq.push({dist[v], v});
      }
    };
    if (xx < n) relax(xx + 1, yy, g.w.del(g.x[xx]));
    if (yy < m) relax(xx, yy + 1, g.w.ins(g.y[yy]));
    if (xx < n && yy < m) relax(xx + 1, yy + 1, g.w.sub(g.x[xx], g.y[yy]));
    if (back) {
      if (xx > 0) relax(xx - 1, yy, wb);
      if (yy > 0) relax(xx, yy - 1, wb);
      if (xx > 0 && yy > 0) relax(xx - 1, yy - 1, wb);
    }
  }
  return dist;
}

}  // namespace

std::vector<Weight> brute_dist(const AugGridSpec& g, Vertex src) { return dijkstra(g, src, true); }
std::vector<Weight> brute_forward_dist(const AugGridSpec& g, Vertex src) { return dijkstra(g, src, false); }

Matrix brute_boundary_matrix(const AugGridSpec& g) {
  const int wdt = static_cast<int>(g.x.size()), h = static_cast<int>(g.y.size());
  const int s = wdt + h + 1;
  Matrix bm(s, s);
  for (int i = 0; i < s; ++i) {
    std::vector<Weight> d = brute_dist(g, input_vertex(wdt, h, i));
    for (int j = 0; j < s; ++j) {
      Vertex v = output_vertex(wdt, h, j);
      bm.set(i, j, d[v.x * (h + 1) + v.y]);
    }
  }
  return bm;
}

namespace {

// Unit-cost DP on the self grid without main-diagonal edges.
std::vector<int> self_grid(const Str& x, int sources) {
  const int n = static_cast<int>(x.size());
  const int big = 1 << 29;
  std::vector<int> d(static_cast<std::size_t>(n + 1) * (n + 1), big);
  auto at = [&](int a, int b) -> int& { return d[static_cast<std::size_t>(a) * (n + 1) + b]; };
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      int best = b == 0 && a <= sources ? 0 : big;
      if (a > 0) best = std::min(best, at(a - 1, b) + 1);
      if (b > 0) best = std::min(best, at(a, b - 1) + 1);
      if (a > 0 && b > 0 && a != b) best = std::min(best, at(a - 1, b - 1) + (x[a - 1] != x[b - 1]));
      at(a, b) = best;
    }
  return d;
}

}  // namespace

int brute_self_ed(const Str& x) {
  const int n = static_cast<int>(x.size());
  return self_grid(x, 0)[static_cast<std::size_t>(n) * (n + 1) + n];
}

int brute_sed_k(const Str& x, int k) {
  const int n = static_cast<int>(x.size());
  std::vector<int> d = self_grid(x, std::min(n, k));
  int best = 1 << 29;
  for (int b = std::max(0, n - k); b <= n; ++b) best = std::min(best, d[static_cast<std::size_t>(n) * (n + 1) + b]);
  return best;
}

Weight brute_min_batched(const std::vector<Str>& xs, const Str& y, const WeightTable& w) {
  Weight best = INF;
  for (const Str& x : xs) best = std::min(best, ed_full(x, y, w));
  return best;
}

}  // namespace wed
