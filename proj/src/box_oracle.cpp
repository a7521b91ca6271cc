// SPDX-License-Identifier: Apache-2.0
#include "wed/box_oracle.hpp"

#include <algorithm>

#include "wed/dp_oracle.hpp"
#include "wed/kernels.hpp"

namespace wed {

namespace {

enum : std::uint8_t { kSelf = 0, kFromPrev = 1, kFromNext = 2 };
enum : std::uint8_t { kLeftCol = 0, kDiag = 1, kUp = 2, kLeft = 3 };

Weight add(Weight a, Weight b) { return is_inf(a) ? INF : sat_add(a, b); }

}  // namespace

BoxOracle::BoxOracle(Str x, Str y, std::shared_ptr<const WeightTable> w, Weight big_w, BoxOptions opt)
    : opt_(opt) {
  if (x.empty() || y.empty()) throw std::invalid_argument("BoxOracle: empty string");
  const int n = static_cast<int>(x.size()), m = static_cast<int>(y.size());
  g_ = GridCtx(std::move(x), std::move(y), std::move(w), big_w);
  check_storage_range(g_, Rect{0, n, 0, m});
  lo_ = std::max(0, opt.min_level);
  hi_ = std::max(ceil_log2(std::max(n, m)), lo_);
  levels_.resize(hi_ - lo_ + 1);
  for (int e = lo_; e <= hi_; ++e) {
    const int bx = blocks_x(e), by = blocks_y(e), s = 1 << e;
    auto& lev = levels_[e - lo_];
    lev.resize(static_cast<std::size_t>(bx) * by);
    for (int bj = 0; bj < by; ++bj)
      for (int bi = 0; bi < bx; ++bi) {
        Rect r{bi * s, std::min((bi + 1) * s, n), bj * s, std::min((bj + 1) * s, m)};
        NodePtr& slot = lev[static_cast<std::size_t>(bj) * bx + bi];
        if (e == lo_) {
          slot = build_node(g_, r, opt.keep_halves);
          continue;
        }
        const auto& prev = levels_[e - 1 - lo_];
        const int px = blocks_x(e - 1), py = blocks_y(e - 1);
        auto child = [&](int i, int j) -> NodePtr {
          return i < px && j < py ? prev[static_cast<std::size_t>(j) * px + i] : nullptr;
        };
        auto row = [&](int j) -> NodePtr {
          NodePtr a = child(2 * bi, j), b = child(2 * bi + 1, j);
          if (!a) return nullptr;
          return b ? merge_x(g_, a, b, opt.keep_halves) : a;
        };
        NodePtr t = row(2 * bj), b = row(2 * bj + 1);
        slot = b ? merge_y(g_, t, b, opt.keep_halves) : t;
      }
  }
}

int BoxOracle::blocks_x(int e) const { return static_cast<int>((g_.x.size() + (1u << e) - 1) >> e); }
int BoxOracle::blocks_y(int e) const { return static_cast<int>((g_.y.size() + (1u << e) - 1) >> e); }

const NodePtr& BoxOracle::block(int e, int bi, int bj) const {
  if (e < lo_ || e > hi_ || bi < 0 || bj < 0 || bi >= blocks_x(e) || bj >= blocks_y(e))
    throw std::out_of_range("BoxOracle::block: no such block");
  return levels_[e - lo_][static_cast<std::size_t>(bj) * blocks_x(e) + bi];
}

std::size_t BoxOracle::bytes() const {
  // Shared children are counted once per level by summing matrices only.
  std::size_t s = sizeof(*this) + g_.x.size() * 4 + g_.y.size() * 4;
  for (const auto& lev : levels_)
    for (const auto& b : lev) s += sizeof(BNode) + b->bm.bytes();
  return s;
}

std::vector<Phrase> BoxOracle::phrases(const EditScript& script) const {
  const Str& y = g_.y;
  const int m = static_cast<int>(y.size());
  Str yp = apply_edits(y, script);
  std::vector<Phrase> out;
  if (static_cast<int>(yp.size()) > 2 * m) {
    for (int i = 0; i < static_cast<int>(yp.size()); ++i) out.push_back({i, 1, -1});
    return out;
  }
  EdResult r = ed_bounded_unit(y, yp, static_cast<long long>(script.size()));
  if (!r.alignment) throw std::logic_error("phrases: script longer than its own cost");
  std::vector<Vertex> steps = expand_breakpoints(y, yp, *r.alignment);
  int run_c = -1, run_p = 0, run_len = 0;
  auto close = [&]() {
    if (run_len == 0) return;
    int c = run_c, d = run_c + run_len;
    int s = split_simple(c, d, m);
    if (s > c) out.push_back({run_p, s - c, c});
    if (s < d) out.push_back({run_p + (s - c), d - s, s});
    run_len = 0;
  };
  for (std::size_t i = 1; i < steps.size(); ++i) {
    Vertex a = steps[i - 1], b = steps[i];
    bool diag = b.x == a.x + 1 && b.y == a.y + 1;
    if (diag && y[a.x] == yp[a.y]) {
      if (run_len == 0) run_c = a.x, run_p = a.y;
      ++run_len;
      continue;
    }
    close();
    if (b.y == a.y + 1) out.push_back({a.y, 1, -1});
  }
  close();
  return out;
}

std::vector<Stage> BoxOracle::stages(const EditScript& script) const {
  return stages_for(apply_edits(g_.y, script), script);
}

std::vector<Stage> BoxOracle::stages_for(const Str& yp, const EditScript& script) const {
  (void)yp;
  const int m = height();
  std::vector<Stage> st;
  for (const Phrase& ph : phrases(script)) {
    if (ph.yc < 0) {
      st.push_back({ph.yp, 1, -1, 0});
      continue;
    }
    int c = ph.yc, d = ph.yc + ph.len, pos = ph.yp;
    while (c < d) {
      int e = hi_;
      while (e > 0 && ((c & ((1 << e) - 1)) != 0 || std::min(c + (1 << e), m) > d)) --e;
      if (e < lo_ || std::min(c + (1 << e), m) > d) {
        st.push_back({pos, 1, -1, 0});
        ++c, ++pos;
        continue;
      }
      int hp = std::min(c + (1 << e), m) - c;
      st.push_back({pos, hp, c, e});
      c += hp;
      pos += hp;
    }
  }
  return st;
}

struct BoxOracle::Recorder {
  std::vector<std::uint8_t> cpred;
  struct Rec {
    std::vector<std::uint8_t> pred;
    std::vector<std::vector<std::int32_t>> wit;
  };
  std::vector<Rec> st;
};

std::vector<Weight> BoxOracle::sweep(const Str& yp, const std::vector<Stage>& st, const std::vector<Weight>& v,
                                     Recorder* rec) const {
  const int n = width(), h = static_cast<int>(yp.size()), s = n + h + 1;
  if (static_cast<int>(v.size()) != s) throw std::invalid_argument("propagate: input vector has the wrong size");
  const WeightTable& w = *g_.w;
  // Close the inputs under moves along the input boundary.
  std::vector<Weight> c = v;
  std::vector<std::uint8_t> cp(s, kSelf);
  auto fwd = [&](int t) { return t < h ? g_.wb : g_.del(t - h); };
  auto bwd = [&](int t) { return t < h ? w.ins(yp[h - t - 1]) : g_.wb; };
  for (int t = 0; t + 1 < s; ++t) {
    Weight cand = add(c[t], fwd(t));
    if (cand < c[t + 1]) c[t + 1] = cand, cp[t + 1] = kFromPrev;
  }
  for (int t = s - 2; t >= 0; --t) {
    Weight cand = add(c[t + 1], bwd(t));
    if (cand < c[t]) c[t] = cand, cp[t] = kFromNext;
  }
  auto left = [&](int y) { return c[h - y]; };
  std::vector<Weight> cur(c.begin() + h, c.end()), nxt(n + 1), right(h + 1, INF), sub(n + 1);
  right[0] = cur[n];
  if (rec) {
    rec->cpred = cp;
    rec->st.assign(st.size(), {});
  }
  std::vector<Weight> in, out;
  std::vector<std::int32_t> wit;
  for (std::size_t si = 0; si < st.size(); ++si) {
    const Stage& sg = st[si];
    if (sg.yc < 0) {
      const Symbol b = yp[sg.y0];
      const Weight ins = w.ins(b);
      for (int x = 1; x <= n; ++x) sub[x] = g_.w->sub(g_.x[x - 1], b);
      kernels::dp_row_pass(nxt.data(), cur.data(), ins, sub.data(), n);
      nxt[0] = left(sg.y0 + 1);
      for (int x = 1; x <= n; ++x) nxt[x] = std::min(nxt[x], add(nxt[x - 1], g_.del(x - 1)));
      if (rec) {
        auto& p = rec->st[si].pred;
        p.assign(n + 1, kLeftCol);
        for (int x = 1; x <= n; ++x) {
          if (is_inf(nxt[x])) p[x] = kUp;
          else if (add(cur[x - 1], sub[x]) == nxt[x]) p[x] = kDiag;
          else if (add(cur[x], ins) == nxt[x]) p[x] = kUp;
          else p[x] = kLeft;
        }
      }
      std::swap(cur, nxt);
      right[sg.y0 + 1] = cur[n];
      continue;
    }
    const int e = sg.e, hp = sg.h, bj = sg.yc >> e, nb = blocks_x(e);
    if (rec) rec->st[si].wit.resize(nb);
    int bwp = 0;
    for (int bi = 0; bi < nb; ++bi) {
      const BNode& node = *block(e, bi, bj);
      const int bw = node.rect.w(), bx0 = node.rect.x0, sb = bw + hp + 1;
      in.resize(sb);
      for (int t = 0; t <= hp; ++t) in[t] = bi == 0 ? left(sg.y0 + hp - t) : out[bwp + t];
      for (int t = hp + 1; t < sb; ++t) in[t] = cur[bx0 + t - hp];
      out.resize(sb);
      wit.resize(sb);
      vec_minplus_into(in.data(), MatView<std::int32_t>(node.bm), out.data(), wit.data());
      for (int t = 0; t <= bw; ++t) nxt[bx0 + t] = out[t];
      if (bi + 1 == nb)
        for (int t = bw; t < bw + hp; ++t) right[sg.y0 + hp - (t - bw)] = out[t];
      if (rec) rec->st[si].wit[bi] = wit;
      bwp = bw;
    }
    std::swap(cur, nxt);
  }
  std::vector<Weight> res(s);
  for (int t = 0; t <= n; ++t) res[t] = cur[t];
  for (int t = 1; t <= h; ++t) res[n + t] = right[h - t];
  return res;
}

std::vector<Weight> BoxOracle::propagate(const EditScript& script, const std::vector<Weight>& v) const {
  Str yp = apply_edits(g_.y, script);
  return sweep(yp, stages_for(yp, script), v, nullptr);
}

BoxOracle::Traced BoxOracle::trace(const EditScript& script, const std::vector<Weight>& v, int j) const {
  Str yp = apply_edits(g_.y, script);
  std::vector<Stage> st = stages_for(yp, script);
  Recorder rec;
  Traced res;
  res.out = sweep(yp, st, v, &rec);
  const int n = width(), h = static_cast<int>(yp.size()), s = n + h + 1;
  if (j < 0 || j >= s) throw std::out_of_range("trace: output index out of range");
  if (is_inf(res.out[j])) throw std::invalid_argument("trace: output unreachable");
  Rect full{0, n, 0, h};
  std::vector<int> stage_end(h + 1, -1);  // rows (y0, y0+h] -> stage
  for (std::size_t i = 0; i < st.size(); ++i)
    for (int y = st[i].y0 + 1; y <= st[i].y0 + st[i].h; ++y) stage_end[y] = static_cast<int>(i);

  std::vector<Path> segs;  // collected backwards
  int input = -1;
  // Current position: vertex (x, y) on the bottom line of a stage, or on the
  // right column if on_right.
  Vertex cur = full.out(j);
  bool on_right = j > n;
  while (input < 0) {
    if (cur.y == 0) {
      input = h + cur.x;
      break;
    }
    const int si = stage_end[cur.y];
    const Stage& sg = st[si];
    const int y1 = sg.y0 + sg.h;
    if (sg.yc < 0) {
      // One DP row; the right column at y1 is the bottom line at x = n.
      const auto& p = rec.st[si].pred;
      int x = cur.x;
      while (true) {
        if (x == 0) {
          input = h - y1;
          break;
        }
        if (p[x] == kLeft) {
          segs.push_back({{x - 1, y1}, {x, y1}});
          --x;
          continue;
        }
        int px = p[x] == kDiag ? x - 1 : x;
        segs.push_back({{px, sg.y0}, {x, y1}});
        cur = {px, sg.y0};
        break;
      }
      on_right = false;
      continue;
    }
    const int e = sg.e, hp = sg.h, bj = sg.yc >> e, nb = blocks_x(e);
    int bi, o;
    if (on_right && cur.y != y1) {
      bi = nb - 1;
      o = block(e, bi, bj)->rect.w() + (y1 - cur.y);
    } else {
      bi = std::min(cur.x >> e, nb - 1);
      o = cur.x - block(e, bi, bj)->rect.x0;
    }
    const int shift = sg.y0 - sg.yc;
    while (true) {
      const BNode& node = *block(e, bi, bj);
      int t = rec.st[si].wit[bi][o];
      Path seg;
      node_path(g_, node, t, o, seg);
      for (auto& vtx : seg) vtx.y += shift;
      segs.push_back(std::move(seg));
      if (t > hp) {
        cur = {node.rect.x0 + t - hp, sg.y0};
        break;
      }
      if (bi == 0) {
        input = h - (sg.y0 + hp - t);
        break;
      }
      --bi;
      o = block(e, bi, bj)->rect.w() + t;
    }
    on_right = false;
  }
  // Closure moves along the input boundary.
  while (rec.cpred[input] != kSelf) {
    int from = rec.cpred[input] == kFromPrev ? input - 1 : input + 1;
    segs.push_back({full.in(from), full.in(input)});
    input = from;
  }
  res.source = input;
  for (auto it = segs.rbegin(); it != segs.rend(); ++it)
    for (const Vertex& vtx : *it)
      if (res.path.empty() || !(res.path.back() == vtx)) res.path.push_back(vtx);
  if (res.path.empty()) res.path.push_back(full.in(input));
  return res;
}

Path BoxOracle::box_path(const EditScript& script, int a, int b) const {
  Str yp = apply_edits(g_.y, script);
  const int n = width(), h = static_cast<int>(yp.size());
  Rect full{0, n, 0, h};
  if (a < 0 || b < 0 || a > n + h || b > n + h) throw std::out_of_range("box_path: index out of range");
  Vertex u = full.in(a), v = full.out(b);
  if (u == v) return {u};
  if (GridCtx::anti(u, v)) {
    Path p{u};
    if (u.x > v.x) {
      for (int x = u.x - 1; x >= v.x; --x) p.push_back({x, u.y});
      for (int y = u.y + 1; y <= v.y; ++y) p.push_back({v.x, y});
    } else {
      for (int y = u.y - 1; y >= v.y; --y) p.push_back({u.x, y});
      for (int x = u.x + 1; x <= v.x; ++x) p.push_back({x, v.y});
    }
    return p;
  }
  std::vector<Weight> e(n + h + 1, INF);
  e[a] = 0;
  return trace(script, e, b).path;
}

}  // namespace wed
