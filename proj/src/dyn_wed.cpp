// SPDX-License-Identifier: Apache-2.0
#include "wed/dyn_wed.hpp"

#include <algorithm>
#include <stdexcept>

namespace wed {

std::vector<int> partition_lengths(int len, int k) {
  if (k < 1 || len < k) throw std::invalid_argument("partition_lengths: need len >= k >= 1");
  const int c = 3 * k / 2;
  std::vector<int> out;
  int r = len;
  while (r >= 2 * k) {
    out.push_back(c);
    r -= c;
  }
  if (r >= k) {
    out.push_back(r);
  } else if (r > 0) {
    int t = out.back() + r;
    out.pop_back();
    if (t < 2 * k) {
      out.push_back(t);
    } else {
      out.push_back(t / 2);
      out.push_back(t - t / 2);
    }
  }
  return out;
}

namespace {

// Z positions of X positions under a canonical script.
struct Offsets {
  std::vector<int> pos, net;  // net[i]: length change of the first i edits
  int n = 0, zlen = 0;
  Offsets(int nn, const EditScript& s) : n(nn) {
    net.push_back(0);
    for (const Edit& e : s) {
      pos.push_back(e.pos);
      net.push_back(net.back() + (e.op == Op::Ins ? 1 : e.op == Op::Del ? -1 : 0));
    }
    zlen = n + net.back();
  }
  int at(int p) const {
    if (p >= n) return zlen;
    auto i = std::lower_bound(pos.begin(), pos.end(), p) - pos.begin();
    return p + net[i];
  }
};

Weight prune(std::vector<Weight>& v, Weight thr) {
  Weight best = INF;
  for (Weight& a : v) {
    if (a > thr) a = INF;
    best = std::min(best, a);
  }
  return best;
}

// Lowest t minimising v[t] + m(t, j).
template <class M>
int argmin_col(const std::vector<Weight>& v, const M& m, int j) {
  int best = -1;
  Weight bv = INF;
  for (int t = 0; t < m.rows(); ++t) {
    Weight c = sat_add(v[t], m(t, j));
    if (c < bv) {
      bv = c;
      best = t;
    }
  }
  if (best < 0) throw std::logic_error("backtrack: no finite predecessor");
  return best;
}

void append_shifted(Path& seg, int dx, int dy, std::vector<Path>& segs) {
  for (Vertex& v : seg) {
    v.x += dx;
    v.y += dy;
  }
  segs.push_back(std::move(seg));
}

Breakpoints join_segments(const Str& x, const Str& z, const std::vector<Path>& segs) {
  Path p;
  for (const Path& s : segs)
    for (const Vertex& v : s)
      if (p.empty() || !(p.back() == v)) p.push_back(v);
  return compress_path(x, z, p);
}

}  // namespace

DynWed::DynWed(Str x, int k, const WeightTable& w, DynOptions opt) : x_(std::move(x)), k_(k), opt_(opt) {
  if (k < 1) throw std::invalid_argument("DynWed: k must be positive");
  WeightCheck chk = validate_weights(w);
  if (!chk.ok) throw std::invalid_argument("DynWed: " + chk.message);
  for (Symbol c : x_)
    if (c < 0 || c >= w.sigma()) throw std::invalid_argument("DynWed: symbol out of range");
  w_ = std::make_shared<const WeightTable>(cap_weights(w, k));
  big_w_ = w_->max_cell();
  tree_ = Tree(Mul{4 * k + 1});
  rebuild_all();
}

std::vector<DynWed::Tree::Leaf> DynWed::build_range(int from, int len, int n, bool first, bool last) const {
  std::vector<Tree::Leaf> out;
  const int k2 = 2 * k_;
  int a = from;
  for (int l : partition_lengths(len, k_)) {
    const int b = a + l;
    const int y = std::max(a - k2, 0), yp = std::min(b + k2, n);
    const int vin = first && a == from ? 0 : std::min(a + k2, n) - y;
    const int vout = last && b == from + len ? 0 : yp - std::max(b - k2, 0);
    Str xs(x_.begin() + a, x_.begin() + b), ys(x_.begin() + y, x_.begin() + yp);
    auto pb = std::make_shared<PhraseBox>(PhraseBox{l, a - y, yp - b, vin, vout,
                                                    BoxOracle(std::move(xs), std::move(ys), w_, big_w_, opt_.box)});
    const CompactMatrix& bm = pb->oracle.top()->bm;
    const int h = yp - y;
    Matrix d(vin + 1, vout + 1);
    for (int r = 0; r <= vin; ++r)
      for (int c = 0; c <= vout; ++c) d.set(r, c, bm(h - vin + r, l + c));
    out.push_back({SemiElem::of(std::move(d)), std::move(pb), l});
    a = b;
  }
  return out;
}

void DynWed::rebuild_all() {
  const int n = length();
  tree_ = Tree(Mul{4 * k_ + 1});
  flat_.reset();
  if (n <= k_) {
    if (n > 0) flat_ = std::make_shared<const BoxOracle>(x_, x_, w_, big_w_, opt_.box);
    return;
  }
  tree_ = Tree::build(build_range(0, n, n, true, true), Mul{4 * k_ + 1});
}

std::vector<int> DynWed::cuts() const {
  std::vector<int> c;
  if (fallback()) return c;
  c.push_back(0);
  tree_.for_each_leaf(0, tree_.size(), [&](const Tree::Node& l) { c.push_back(c.back() + static_cast<int>(l.measure)); });
  return c;
}

std::size_t DynWed::bytes() const {
  std::size_t s = x_.size() * sizeof(Symbol);
  if (flat_) s += flat_->bytes();
  auto mat = [](const SemiElem& e) { return e.is_z() ? 0 : e.m->bytes(); };
  std::vector<const Tree::Node*> st;
  if (tree_.root()) st.push_back(tree_.root().get());
  while (!st.empty()) {
    const Tree::Node* n = st.back();
    st.pop_back();
    s += sizeof(Tree::Node) + mat(n->prod);
    if (n->height == 0) {
      s += n->payload->oracle.bytes();
      continue;
    }
    if (n->nch == 3) s += mat(n->pair01) + mat(n->pair12);
    for (int c = 0; c < n->nch; ++c) st.push_back(n->ch[c].get());
  }
  return s;
}

void DynWed::edit(const Edit& e) {
  const int n = length();
  Str nx = apply_edit(x_, e);
  if (e.op != Op::Del && (e.sym < 0 || e.sym >= w_->sigma())) throw std::invalid_argument("edit: symbol out of range");
  const int nn = static_cast<int>(nx.size());
  if (fallback() || nn <= k_) {
    x_ = std::move(nx);
    rebuild_all();
    return;
  }
  const int m = phrase_count();
  const int i = tree_.locate(std::min(e.pos, n - 1)).first;
  const int lo = std::max(i - 2, 0), hi = std::min(i + 3, m);
  const int xlo = static_cast<int>(tree_.prefix_measure(lo)), xhi = static_cast<int>(tree_.prefix_measure(hi));
  x_ = std::move(nx);
  Tree mid = Tree::build(build_range(xlo, xhi - xlo + (nn - n), nn, lo == 0, hi == m), Mul{4 * k_ + 1});
  Tree left(Mul{4 * k_ + 1}), right(Mul{4 * k_ + 1});
  if (lo > 0) left = tree_.split(lo).first;
  if (hi < m) right = tree_.split(hi).second;
  tree_ = left.concat(mid).concat(right);
}

WedAnswer DynWed::query_fallback(const EditScript& script, bool want_alignment) const {
  const Weight thr = static_cast<Weight>(k_) * w_->den();
  Str z = apply_edits(x_, script);
  const int n = length(), h = static_cast<int>(z.size());
  WedAnswer ans;
  if (n == 0 || h == 0) {
    Path p{{0, 0}};
    Weight c = 0;
    for (int i = 0; i < n; ++i) c += w_->del(x_[i]), p.push_back({i + 1, 0});
    for (int j = 0; j < h; ++j) c += w_->ins(z[j]), p.push_back({0, j + 1});
    if (c > thr) return ans;
    ans.value = c;
    if (want_alignment) ans.alignment = compress_path(x_, z, p);
    return ans;
  }
  std::vector<Weight> v(n + h + 1, INF);
  v[h] = 0;
  if (!want_alignment) {
    Weight c = flat_->propagate(script, v)[n];
    if (c <= thr) ans.value = c;
    return ans;
  }
  std::vector<Weight> out = flat_->propagate(script, v);
  if (out[n] > thr) return ans;
  BoxOracle::Traced tr = flat_->trace(script, v, n);
  ans.value = tr.out[n];
  ans.alignment = compress_path(x_, z, tr.path);
  return ans;
}

void DynWed::ref_path(const Tree::Ref& r, int s, int j, int x0, int dy, std::vector<Path>& segs) const {
  if (r.node->height == 0) {
    const PhraseBox& pb = *r.node->payload;
    const BoxOracle& o = pb.oracle;
    Path seg;
    node_path(o.ctx(), *o.top(), o.height() - pb.vin + s, pb.len + j, seg);
    append_shifted(seg, x0, x0 - pb.lead + dy, segs);
    return;
  }
  // A zero-cost stretch is a single run of matches.
  if ((*r.value().m)(s, j) == 0) {
    const int c0 = r.kind == Tree::Kind::Pair12 ? 1 : 0, c1 = r.kind == Tree::Kind::Pair01 ? 1 : r.node->nch - 1;
    long long len = 0;
    for (int c = c0; c <= c1; ++c) len += r.node->ch[c]->measure;
    const Tree::Node* a = r.node->ch[c0].get();
    while (a->height > 0) a = a->ch[0].get();
    const Tree::Node* b = r.node->ch[c1].get();
    while (b->height > 0) b = b->ch[b->nch - 1].get();
    const int x1 = x0 + static_cast<int>(len);
    Vertex u{x0, x0 - a->payload->lead + a->payload->vin - s + dy};
    Vertex v{x1, x1 + b->payload->tail - j + dy};
    if (v.x - u.x == v.y - u.y) {
      segs.push_back({u, v});
      return;
    }
  }
  std::vector<Tree::Ref> kids = r.expand();
  const int q = static_cast<int>(kids.size());
  std::vector<std::vector<Weight>> vec(q);
  const Matrix& m0 = *kids[0].value().m;
  vec[0].assign(m0.row(s), m0.row(s) + m0.cols());
  for (int c = 1; c < q; ++c) vec[c] = vec_minplus(vec[c - 1], *kids[c].value().m).value;
  std::vector<int> idx(q);
  idx[q - 1] = j;
  for (int c = q - 1; c >= 1; --c) idx[c - 1] = argmin_col(vec[c - 1], *kids[c].value().m, idx[c]);
  int xs = x0;
  for (int c = 0; c < q; ++c) {
    ref_path(kids[c], c == 0 ? s : idx[c - 1], idx[c], xs, dy, segs);
    xs += static_cast<int>(kids[c].node->measure);
  }
}

WedAnswer DynWed::query(const EditScript& script, bool want_alignment) const {
  check_script(x_, script);
  if (static_cast<int>(script.size()) > k_) throw std::invalid_argument("query: script longer than k");
  for (const Edit& e : script)
    if (e.op != Op::Del && (e.sym < 0 || e.sym >= w_->sigma())) throw std::invalid_argument("query: symbol out of range");
  const int n = length();
  WedAnswer ans;
  if (script.empty()) {
    ans.value = 0;
    if (want_alignment) ans.alignment = identity_breakpoints(n);
    return ans;
  }
  if (fallback()) return query_fallback(script, want_alignment);

  const Weight thr = static_cast<Weight>(k_) * w_->den();
  const int m = phrase_count(), k2 = 2 * k_;
  Offsets off(n, script);

  // Boxes whose Y range holds an edit ([y_j, y'_{j+1}), plus the end for
  // insertions at |X|).
  std::vector<int> hit;
  for (const Edit& e : script) {
    int lo, hi;
    if (e.pos < n) {
      lo = e.pos - k2 < 0 ? 0 : tree_.locate(e.pos - k2).first;
      hi = tree_.locate(std::min(e.pos + k2, n - 1)).first;
    } else {
      lo = tree_.locate(std::max(n - k2 - 1, 0)).first;
      hi = m - 1;
    }
    for (int j = lo; j <= hi; ++j) hit.push_back(j);
  }
  std::sort(hit.begin(), hit.end());
  hit.erase(std::unique(hit.begin(), hit.end()), hit.end());

  struct Step {
    std::vector<Weight> v;  // segment: vector before; box: full input vector
    Tree::Ref ref;          // segment only
    int phrase = -1;        // box only
    int x0 = 0, z0 = 0;     // global offsets (segment: x0 and the Y shift)
    int hp = 0, len = 0;    // box: edited height, L = |V'_i| - 1
    EditScript local;
  };
  std::vector<Step> steps;
  std::vector<Weight> v{0};
  int cur = 0;
  auto fold_to = [&](int b) -> bool {
    if (cur >= b) return true;
    const int x0 = static_cast<int>(tree_.prefix_measure(cur));
    const int y0 = std::max(x0 - k2, 0);
    const int dy = off.at(y0) - y0;
    for (const Tree::Ref& r : tree_.query(cur, b)) {
      Step st;
      st.v = v;
      st.ref = r;
      st.x0 = static_cast<int>(tree_.prefix_measure(r.first));
      st.z0 = dy;
      v = vec_minplus(v, *r.value().m).value;
      steps.push_back(std::move(st));
      if (is_inf(prune(v, thr))) return false;
    }
    cur = b;
    return true;
  };

  for (int a : hit) {
    if (!fold_to(a)) return ans;
    const PhraseBox& pb = phrase(a);
    const int xa = static_cast<int>(tree_.prefix_measure(a));
    const int ya = xa - pb.lead, ye = xa + pb.len + pb.tail;
    Step st;
    st.phrase = a;
    st.x0 = xa;
    st.z0 = off.at(ya);
    for (const Edit& e : script)
      if ((e.pos >= ya && e.pos < ye) || (e.pos == n && ye == n)) st.local.push_back({e.op, e.pos - ya, e.sym});
    const int zin_hi = a == 0 ? st.z0 : off.at(std::min(xa + k2, n));
    const int zout_lo = a == m - 1 ? off.zlen : off.at(std::max(xa + pb.len - k2, 0));
    st.hp = off.at(ye) - st.z0;
    st.len = zin_hi - st.z0;
    if (st.hp <= 0) throw std::logic_error("query: edited box is empty");
    if (static_cast<int>(v.size()) != st.len + 1) throw std::logic_error("query: separator size mismatch");
    st.v.assign(pb.len + st.hp + 1, INF);
    for (int r = 0; r <= st.len; ++r) st.v[st.hp - st.len + r] = v[r];
    std::vector<Weight> out = pb.oracle.propagate(st.local, st.v);
    const int vout = st.hp - (zout_lo - st.z0);
    v.assign(out.begin() + pb.len, out.begin() + pb.len + vout + 1);
    steps.push_back(std::move(st));
    cur = a + 1;
    if (is_inf(prune(v, thr))) return ans;
  }
  if (!fold_to(m)) return ans;
  if (v.size() != 1) throw std::logic_error("query: final separator is not a single vertex");
  if (v[0] > thr) return ans;
  ans.value = v[0];
  if (!want_alignment) return ans;

  std::vector<Path> rev;  // segments, last first
  int j = 0;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    if (it->phrase >= 0) {
      const PhraseBox& pb = phrase(it->phrase);
      BoxOracle::Traced tr = pb.oracle.trace(it->local, it->v, pb.len + j);
      j = tr.source - (it->hp - it->len);
      if (j < 0 || j > it->len) throw std::logic_error("backtrack: path leaves the separator");
      append_shifted(tr.path, it->x0, it->z0, rev);
    } else {
      const Matrix& mm = *it->ref.value().m;
      int s = argmin_col(it->v, mm, j);
      std::vector<Path> fw;
      ref_path(it->ref, s, j, it->x0, it->z0, fw);
      for (auto p = fw.rbegin(); p != fw.rend(); ++p) rev.push_back(std::move(*p));
      j = s;
    }
  }
  std::reverse(rev.begin(), rev.end());
  ans.alignment = join_segments(x_, apply_edits(x_, script), rev);
  return ans;
}

DynWedMulti::DynWedMulti(Str x, int k, const WeightTable& w, DynOptions opt) : k_(k) {
  if (k < 1) throw std::invalid_argument("DynWedMulti: k must be positive");
  for (int t = 1;; t *= 2) {
    levels_.emplace_back(x, t, w, opt);
    if (t >= k) break;
  }
}

void DynWedMulti::edit(const Edit& e) {
  for (DynWed& d : levels_) d.edit(e);
}

WedAnswer DynWedMulti::query(const EditScript& script, bool want_alignment) const {
  const int u = static_cast<int>(script.size());
  if (u > k_) throw std::invalid_argument("query: script longer than k");
  last_.clear();
  const Weight thr = static_cast<Weight>(k_) * levels_.front().weights().den();
  for (const DynWed& d : levels_) {
    if (d.k() < std::max(u, 1)) continue;
    last_.push_back(d.k());
    WedAnswer a = d.query(script, want_alignment);
    if (!is_inf(a.value)) {
      if (a.value > thr) return {};
      return a;
    }
  }
  return {};
}

}  // namespace wed
