// SPDX-License-Identifier: Apache-2.0
#include "wed/boundary.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace wed {

GridCtx::GridCtx(Str xx, Str yy, std::shared_ptr<const WeightTable> ww, Weight big_w)
    : x(std::move(xx)), y(std::move(yy)), w(std::move(ww)), wb(big_w + 1) {
  pdel.assign(x.size() + 1, 0);
  pins.assign(y.size() + 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) pdel[i + 1] = pdel[i] + w->del(x[i]);
  for (std::size_t i = 0; i < y.size(); ++i) pins[i + 1] = pins[i] + w->ins(y[i]);
}

Weight GridCtx::anti_cost(Vertex u, Vertex v) const {
  if (u.x > v.x && u.y <= v.y) return (u.x - v.x) * wb + pins[v.y] - pins[u.y];
  if (u.y > v.y && u.x <= v.x) return (u.y - v.y) * wb + pdel[v.x] - pdel[u.x];
  throw std::logic_error("anti_cost: pair not anti-ordered in exactly one axis");
}

std::size_t BNode::bytes() const {
  std::size_t s = sizeof(BNode) + bm.bytes();
  if (a) s += a->bytes();
  if (b) s += b->bytes();
  return s;
}

void check_storage_range(const GridCtx& g, const Rect& r) {
  long double bound = static_cast<long double>(r.w() + r.h()) * static_cast<long double>(g.wb);
  if (bound > std::numeric_limits<std::int32_t>::max())
    throw std::overflow_error("boundary matrix entries exceed 32-bit storage; lower the weights or the block size");
}

NodePtr build_leaf(const GridCtx& g, const Rect& r) {
  auto n = std::make_shared<BNode>();
  n->rect = r;
  const int s = r.size();
  n->bm = CompactMatrix(s, s);
  std::vector<Weight> d;
  for (int i = 0; i < s; ++i) {
    Vertex u = r.in(i);
    const int dw = r.x1 - u.x, dh = r.y1 - u.y;
    d.assign(static_cast<std::size_t>(dw + 1) * (dh + 1), INF);
    auto at = [&](int a, int b) -> Weight& { return d[static_cast<std::size_t>(b) * (dw + 1) + a]; };
    for (int b = 0; b <= dh; ++b)
      for (int a = 0; a <= dw; ++a) {
        Weight best = a == 0 && b == 0 ? 0 : INF;
        if (a > 0) best = std::min(best, at(a - 1, b) + g.del(u.x + a - 1));
        if (b > 0) best = std::min(best, at(a, b - 1) + g.ins(u.y + b - 1));
        if (a > 0 && b > 0) best = std::min(best, at(a - 1, b - 1) + g.sub(u.x + a - 1, u.y + b - 1));
        at(a, b) = best;
      }
    for (int j = 0; j < s; ++j) {
      Vertex v = r.out(j);
      n->bm.set(i, j, GridCtx::anti(u, v) ? g.anti_cost(u, v) : at(v.x - u.x, v.y - u.y));
    }
  }
  return n;
}

NodePtr merge_x(const GridCtx& g, const NodePtr& l, const NodePtr& r, bool keep) {
  const BNode &L = *l, &R = *r;
  if (L.rect.x1 != R.rect.x0 || L.rect.y0 != R.rect.y0 || L.rect.y1 != R.rect.y1)
    throw std::invalid_argument("merge_x: rectangles do not share a full column");
  const int h = L.rect.h(), wl = L.rect.w();
  Rect pr{L.rect.x0, R.rect.x1, L.rect.y0, L.rect.y1};
  check_storage_range(g, pr);
  auto n = std::make_shared<BNode>();
  n->rect = pr;
  const int s = pr.size(), sr = R.rect.size();
  n->bm = CompactMatrix(s, s);
  std::vector<Weight> v(h + 1), out(sr);
  std::vector<std::int32_t> wit(sr);
  MatView<std::int32_t> rview(R.bm, 0, 1, h + 1, sr - 1);
  for (int i = 0; i <= h + wl; ++i) {
    std::int32_t* row = n->bm.row(i);
    const std::int32_t* lrow = L.bm.row(i);
    for (int j = 0; j <= wl; ++j) row[j] = lrow[j];
    for (int t = 0; t <= h; ++t) v[t] = lrow[wl + t];
    vec_minplus_into(v.data(), rview, out.data(), wit.data());
    for (int j = 1; j < sr; ++j) row[wl + j] = static_cast<std::int32_t>(out[j - 1]);
  }
  for (int i = h + wl + 1; i < s; ++i) {
    std::int32_t* row = n->bm.row(i);
    const std::int32_t* rrow = R.bm.row(i - wl);
    Vertex u = pr.in(i);
    for (int j = 0; j < wl; ++j) row[j] = static_cast<std::int32_t>(g.anti_cost(u, pr.out(j)));
    for (int j = wl; j < s; ++j) row[j] = rrow[j - wl];
  }
  if (keep) {
    n->split = Split::X;
    n->pos = L.rect.x1;
    n->a = l;
    n->b = r;
  } else {
    n->split = Split::Opaque;
  }
  return n;
}

NodePtr merge_y(const GridCtx& g, const NodePtr& t, const NodePtr& b, bool keep) {
  const BNode &T = *t, &B = *b;
  if (T.rect.y1 != B.rect.y0 || T.rect.x0 != B.rect.x0 || T.rect.x1 != B.rect.x1)
    throw std::invalid_argument("merge_y: rectangles do not share a full row");
  const int w = T.rect.w(), hb = B.rect.h();
  Rect pr{T.rect.x0, T.rect.x1, T.rect.y0, B.rect.y1};
  check_storage_range(g, pr);
  auto n = std::make_shared<BNode>();
  n->rect = pr;
  const int s = pr.size();
  n->bm = CompactMatrix(s, s);
  const int cut = w + hb;  // parent outputs below this index lie in B
  std::vector<Weight> v(w + 1), out(cut);
  std::vector<std::int32_t> wit(cut);
  MatView<std::int32_t> bview(B.bm, hb, 0, w + 1, cut);
  for (int i = 0; i < hb; ++i) {
    std::int32_t* row = n->bm.row(i);
    const std::int32_t* brow = B.bm.row(i);
    Vertex u = pr.in(i);
    for (int j = 0; j <= cut; ++j) row[j] = brow[j];
    for (int j = cut + 1; j < s; ++j) row[j] = static_cast<std::int32_t>(g.anti_cost(u, pr.out(j)));
  }
  for (int i = hb; i < s; ++i) {
    std::int32_t* row = n->bm.row(i);
    const std::int32_t* trow = T.bm.row(i - hb);
    for (int j = cut; j < s; ++j) row[j] = trow[j - hb];
    for (int q = 0; q <= w; ++q) v[q] = trow[q];
    vec_minplus_into(v.data(), bview, out.data(), wit.data());
    for (int j = 0; j < cut; ++j) row[j] = static_cast<std::int32_t>(out[j]);
  }
  if (keep) {
    n->split = Split::Y;
    n->pos = T.rect.y1;
    n->a = t;
    n->b = b;
  } else {
    n->split = Split::Opaque;
  }
  return n;
}

NodePtr build_node(const GridCtx& g, const Rect& r, bool keep) {
  if (r.w() < 1 || r.h() < 1) throw std::invalid_argument("build_node: empty rectangle");
  if (std::min(r.w(), r.h()) <= 2) return build_leaf(g, r);
  if (r.w() >= r.h()) {
    int xm = r.x0 + r.w() / 2;
    return merge_x(g, build_node(g, {r.x0, xm, r.y0, r.y1}, keep), build_node(g, {xm, r.x1, r.y0, r.y1}, keep),
                   keep);
  }
  int ym = r.y0 + r.h() / 2;
  return merge_y(g, build_node(g, {r.x0, r.x1, r.y0, ym}, keep), build_node(g, {r.x0, r.x1, ym, r.y1}, keep),
                 keep);
}

namespace {

void push(Path& out, Vertex v) {
  if (out.empty() || !(out.back() == v)) out.push_back(v);
}

}  // namespace

void forward_path(const GridCtx& g, Vertex u, Vertex v, Path& out) {
  const int dw = v.x - u.x, dh = v.y - u.y;
  if (dw < 0 || dh < 0) throw std::invalid_argument("forward_path: target not reachable");
  std::vector<Weight> d(static_cast<std::size_t>(dw + 1) * (dh + 1), INF);
  auto at = [&](int a, int b) -> Weight& { return d[static_cast<std::size_t>(b) * (dw + 1) + a]; };
  for (int b = 0; b <= dh; ++b)
    for (int a = 0; a <= dw; ++a) {
      Weight best = a == 0 && b == 0 ? 0 : INF;
      if (a > 0 && b > 0) best = std::min(best, at(a - 1, b - 1) + g.sub(u.x + a - 1, u.y + b - 1));
      if (a > 0) best = std::min(best, at(a - 1, b) + g.del(u.x + a - 1));
      if (b > 0) best = std::min(best, at(a, b - 1) + g.ins(u.y + b - 1));
      at(a, b) = best;
    }
  Path rev{v};
  int a = dw, b = dh;
  while (a > 0 || b > 0) {
    Weight cur = at(a, b);
    if (a > 0 && b > 0 && at(a - 1, b - 1) + g.sub(u.x + a - 1, u.y + b - 1) == cur) --a, --b;
    else if (a > 0 && at(a - 1, b) + g.del(u.x + a - 1) == cur) --a;
    else --b;
    rev.push_back({u.x + a, u.y + b});
  }
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) push(out, *it);
}

void node_path(const GridCtx& g, const BNode& n, int i, int j, Path& out) {
  const Rect& r = n.rect;
  if (i < 0 || j < 0 || i >= r.size() || j >= r.size()) throw std::out_of_range("node_path: index out of range");
  Vertex u = r.in(i), v = r.out(j);
  if (u == v) {
    push(out, u);
    return;
  }
  if (GridCtx::anti(u, v)) {
    push(out, u);
    if (u.x > v.x) {
      for (int x = u.x - 1; x >= v.x; --x) push(out, {x, u.y});
      for (int y = u.y + 1; y <= v.y; ++y) push(out, {v.x, y});
    } else {
      for (int y = u.y - 1; y >= v.y; --y) push(out, {u.x, y});
      for (int x = u.x + 1; x <= v.x; ++x) push(out, {x, v.y});
    }
    return;
  }
  if (n.bm(i, j) == 0) {
    push(out, u);
    push(out, v);
    return;
  }
  switch (n.split) {
    case Split::Leaf:
    case Split::Opaque:
      forward_path(g, u, v, out);
      return;
    case Split::X: {
      const BNode &L = *n.a, &R = *n.b;
      const int h = r.h(), wl = L.rect.w();
      if (i > h + wl) {
        node_path(g, R, i - wl, j - wl, out);
      } else if (j <= wl) {
        node_path(g, L, i, j, out);
      } else {
        int best = 0;
        Weight bv = INF;
        for (int t = 0; t <= h; ++t) {
          Weight c = L.bm(i, wl + t) + R.bm(t, j - wl);
          if (c < bv) bv = c, best = t;
        }
        node_path(g, L, i, wl + best, out);
        node_path(g, R, best, j - wl, out);
      }
      return;
    }
    case Split::Y: {
      const BNode &T = *n.a, &B = *n.b;
      const int w = r.w(), hb = B.rect.h();
      if (i < hb) {
        node_path(g, B, i, j, out);
      } else if (j >= w + hb) {
        node_path(g, T, i - hb, j - hb, out);
      } else {
        int best = 0;
        Weight bv = INF;
        for (int t = 0; t <= w; ++t) {
          Weight c = T.bm(i - hb, t) + B.bm(hb + t, j);
          if (c < bv) bv = c, best = t;
        }
        node_path(g, T, i - hb, best, out);
        node_path(g, B, hb + best, j, out);
      }
      return;
    }
  }
}

BoundaryTree::BoundaryTree(Str x, Str y, const WeightTable& w, Weight big_w) {
  if (x.empty() || y.empty()) throw std::invalid_argument("BoundaryTree: empty string");
  Rect r{0, static_cast<int>(x.size()), 0, static_cast<int>(y.size())};
  g_ = GridCtx(std::move(x), std::move(y), std::make_shared<const WeightTable>(w), big_w);
  check_storage_range(g_, r);
  root_ = build_node(g_, r, true);
}

Weight BoundaryTree::bm_entry(int i, int j) const {
  if (i < 0 || j < 0 || i >= size() || j >= size()) throw std::out_of_range("bm_entry: index out of range");
  return root_->bm(i, j);
}

Path BoundaryTree::reconstruct_path(int i, int j) const {
  Path p;
  node_path(g_, *root_, i, j, p);
  return p;
}

Matrix BoundaryTree::submatrix(int r0, int r1, int c0, int c1) const {
  if (r0 < 0 || c0 < 0 || r1 > size() || c1 > size() || r0 > r1 || c0 > c1)
    throw std::out_of_range("submatrix: range out of bounds");
  Matrix m(r1 - r0, c1 - c0);
  for (int i = r0; i < r1; ++i)
    for (int j = c0; j < c1; ++j) m.set(i - r0, j - c0, root_->bm(i, j));
  return m;
}

int ceil_log2(long long n) {
  int e = 0;
  while ((1LL << e) < n) ++e;
  return e;
}

DyadicParams dyadic_fragment_params(int c, int len) {
  if (c < 0 || c > len) throw std::out_of_range("dyadic_fragment_params: c out of range");
  int e = c == 0 ? ceil_log2(len) : std::countr_zero(static_cast<unsigned>(c));
  long long p = 1LL << e;
  return {e, static_cast<int>(std::max<long long>(0, c - p)), static_cast<int>(std::min<long long>(c + p, len))};
}

bool is_simple(int i, int j, int len) {
  return j <= dyadic_fragment_params(i, len).r || i >= dyadic_fragment_params(j, len).l;
}

int split_simple(int i, int j, int len) {
  if (i < 0 || i >= j || j > len) throw std::out_of_range("split_simple: bad range");
  if (i == 0) return 0;
  for (int t = 30; t >= 0; --t) {
    int c = (j >> t) << t;
    if (c >= i) return c;
  }
  return i;
}

}  // namespace wed
