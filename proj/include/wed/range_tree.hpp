// SPDX-License-Identifier: Apache-2.0
#pragma once

// Persistent 2-3 tree over a list of semigroup elements, elements at the
// leaves.  Internal nodes cache the product of their subtree and, when they
// have three children, the products of the two adjacent child pairs, so a
// range is covered by at most one reference per level on each side.
//
// Leaves also carry an opaque payload and an additive measure; the measure
// lets the same tree act as a positional index (find the leaf covering a
// position).

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

namespace wed {

template <class T, class P, class Op>
class RangeTree {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    int height = 0;  // 0 for leaves
    int count = 1;   // leaves below
    long long measure = 0;
    T prod{};
    P payload{};  // leaves only
    int nch = 0;
    std::array<NodePtr, 3> ch{};
    T pair01{}, pair12{};  // three-child nodes only
  };

  struct Leaf {
    T value;
    P payload;
    long long measure = 0;
  };

  enum class Kind : std::uint8_t { Whole, Pair01, Pair12 };
  struct Ref {
    const Node* node = nullptr;
    Kind kind = Kind::Whole;
    int first = 0;  // index of the first covered leaf
    int count = 0;  // leaves covered
    const T& value() const {
      return kind == Kind::Whole ? node->prod : kind == Kind::Pair01 ? node->pair01 : node->pair12;
    }
    // The (two or three) pieces this reference is made of.
    std::vector<Ref> expand() const {
      std::vector<Ref> r;
      if (node->height == 0) return r;
      int lo = kind == Kind::Pair12 ? 1 : 0, hi = kind == Kind::Pair01 ? 2 : node->nch;
      int f = first;
      for (int i = lo; i < hi; ++i) {
        r.push_back({node->ch[i].get(), Kind::Whole, f, node->ch[i]->count});
        f += node->ch[i]->count;
      }
      return r;
    }
  };

  RangeTree() = default;
  explicit RangeTree(Op op) : op_(std::move(op)) {}
  RangeTree(NodePtr root, Op op) : root_(std::move(root)), op_(std::move(op)) {}

  static RangeTree build(const std::vector<Leaf>& leaves, Op op = Op{}) {
    if (leaves.empty()) throw std::invalid_argument("RangeTree::build: empty list");
    RangeTree t(op);
    std::vector<NodePtr> lev;
    lev.reserve(leaves.size());
    for (const Leaf& l : leaves) lev.push_back(t.leaf(l));
    while (lev.size() > 1) {
      std::vector<NodePtr> up;
      std::size_t i = 0, n = lev.size();
      while (i < n) {
        std::size_t take = n - i == 3 ? 3 : 2;
        if (take == 3) up.push_back(t.node3(lev[i], lev[i + 1], lev[i + 2]));
        else up.push_back(t.node2(lev[i], lev[i + 1]));
        i += take;
      }
      lev.swap(up);
    }
    t.root_ = lev.front();
    return t;
  }

  bool empty() const { return !root_; }
  int size() const { return root_ ? root_->count : 0; }
  int height() const { return root_ ? root_->height : -1; }
  long long measure() const { return root_ ? root_->measure : 0; }
  const NodePtr& root() const { return root_; }
  const T& product() const { return root_->prod; }

  RangeTree concat(const RangeTree& o) const { return RangeTree(join(root_, o.root_), op_); }

  // (first i leaves, the rest); 0 < i < size().
  std::pair<RangeTree, RangeTree> split(int i) const {
    if (i <= 0 || i >= size()) throw std::out_of_range("RangeTree::split: index out of range");
    auto [a, b] = split_rec(root_, i);
    return {RangeTree(a, op_), RangeTree(b, op_)};
  }

  // References whose left-to-right product is the product of leaves [l, r).
  std::vector<Ref> query(int l, int r) const {
    if (l < 0 || r > size() || l >= r) throw std::out_of_range("RangeTree::query: bad range");
    std::vector<Ref> out;
    cover(root_.get(), 0, l, r, out);
    return out;
  }

  T fold(int l, int r) const {
    auto refs = query(l, r);
    T acc = refs[0].value();
    for (std::size_t i = 1; i < refs.size(); ++i) acc = op_(acc, refs[i].value());
    return acc;
  }

  const Node& leaf_at(int i) const {
    if (i < 0 || i >= size()) throw std::out_of_range("RangeTree::leaf_at: index out of range");
    const Node* n = root_.get();
    while (n->height > 0) {
      int c = 0;
      while (i >= n->ch[c]->count) i -= n->ch[c++]->count;
      n = n->ch[c].get();
    }
    return *n;
  }

  // Leaf index whose measure interval [start, start+measure) contains p,
  // with the interval start; p must be in [0, measure()).
  std::pair<int, long long> locate(long long p) const {
    if (p < 0 || p >= measure()) throw std::out_of_range("RangeTree::locate: position out of range");
    const Node* n = root_.get();
    int idx = 0;
    long long start = 0;
    while (n->height > 0) {
      int c = 0;
      while (c + 1 < n->nch && p >= start + n->ch[c]->measure) {
        start += n->ch[c]->measure;
        idx += n->ch[c]->count;
        ++c;
      }
      n = n->ch[c].get();
    }
    return {idx, start};
  }
  // Total measure of the first i leaves.
  long long prefix_measure(int i) const {
    if (i < 0 || i > size()) throw std::out_of_range("RangeTree::prefix_measure: index out of range");
    if (i == size()) return measure();
    long long s = 0;
    const Node* n = root_.get();
    while (n->height > 0) {
      int c = 0;
      while (i >= n->ch[c]->count) {
        s += n->ch[c]->measure;
        i -= n->ch[c++]->count;
      }
      n = n->ch[c].get();
    }
    return s;
  }

  template <class F>
  void for_each_leaf(int l, int r, F&& f) const {
    if (root_ && l < r) walk(root_.get(), 0, l, r, f);
  }

  // Recomputes every cached product; returns false on a mismatch.
  template <class Eq>
  bool audit(Eq eq) const {
    return !root_ || audit_rec(root_.get(), eq);
  }

 private:
  NodePtr leaf(const Leaf& l) const {
    auto n = std::make_shared<Node>();
    n->prod = l.value;
    n->payload = l.payload;
    n->measure = l.measure;
    return n;
  }
  NodePtr node2(NodePtr a, NodePtr b) const {
    auto n = std::make_shared<Node>();
    n->height = a->height + 1;
    n->count = a->count + b->count;
    n->measure = a->measure + b->measure;
    n->prod = op_(a->prod, b->prod);
    n->nch = 2;
    n->ch = {std::move(a), std::move(b), nullptr};
    return n;
  }
  NodePtr node3(NodePtr a, NodePtr b, NodePtr c) const {
    auto n = std::make_shared<Node>();
    n->height = a->height + 1;
    n->count = a->count + b->count + c->count;
    n->measure = a->measure + b->measure + c->measure;
    n->pair01 = op_(a->prod, b->prod);
    n->pair12 = op_(b->prod, c->prod);
    n->prod = op_(n->pair01, c->prod);
    n->nch = 3;
    n->ch = {std::move(a), std::move(b), std::move(c)};
    return n;
  }
  NodePtr make(const std::vector<NodePtr>& v) const { return v.size() == 2 ? node2(v[0], v[1]) : node3(v[0], v[1], v[2]); }

  // Children lists of up to four nodes of equal height packed into one or two nodes.
  std::pair<NodePtr, NodePtr> pack(const std::vector<NodePtr>& v) const {
    if (v.size() <= 3) return {make(v), nullptr};
    return {node2(v[0], v[1]), node2(v[2], v[3])};
  }

  // Join a (taller or equal) with b hanging on its right spine.  Returns one
  // node of height a->height, or two when it had to split.
  std::pair<NodePtr, NodePtr> join_right(const NodePtr& a, const NodePtr& b) const {
    if (a->height == b->height) return {a, b};
    auto [x, y] = join_right(a->ch[a->nch - 1], b);
    std::vector<NodePtr> kids(a->ch.begin(), a->ch.begin() + a->nch - 1);
    kids.push_back(x);
    if (y) kids.push_back(y);
    return pack(kids);
  }
  std::pair<NodePtr, NodePtr> join_left(const NodePtr& a, const NodePtr& b) const {
    if (a->height == b->height) return {a, b};
    auto [x, y] = join_left(a, b->ch[0]);
    std::vector<NodePtr> kids{x};
    if (y) kids.push_back(y);
    kids.insert(kids.end(), b->ch.begin() + 1, b->ch.begin() + b->nch);
    return pack(kids);
  }
  NodePtr join(const NodePtr& a, const NodePtr& b) const {
    if (!a) return b;
    if (!b) return a;
    std::pair<NodePtr, NodePtr> r = a->height >= b->height ? join_right(a, b) : join_left(a, b);
    return r.second ? node2(r.first, r.second) : r.first;
  }

  std::pair<NodePtr, NodePtr> split_rec(const NodePtr& n, int i) const {
    if (i == 0) return {nullptr, n};
    if (i == n->count) return {n, nullptr};
    NodePtr left, right;
    int c = 0;
    while (i >= n->ch[c]->count) {
      left = join(left, n->ch[c]);
      i -= n->ch[c++]->count;
    }
    auto [a, b] = split_rec(n->ch[c], i);
    left = join(left, a);
    right = b;
    for (int d = c + 1; d < n->nch; ++d) right = join(right, n->ch[d]);
    return {left, right};
  }

  void cover(const Node* n, int off, int l, int r, std::vector<Ref>& out) const {
    if (l <= off && off + n->count <= r) {
      out.push_back({n, Kind::Whole, off, n->count});
      return;
    }
    std::array<int, 3> start{};
    std::array<bool, 3> full{}, part{};
    int o = off;
    for (int c = 0; c < n->nch; ++c) {
      start[c] = o;
      int e = o + n->ch[c]->count;
      full[c] = l <= o && e <= r;
      part[c] = !full[c] && o < r && l < e;
      o = e;
    }
    for (int c = 0; c < n->nch; ++c) {
      if (part[c]) {
        cover(n->ch[c].get(), start[c], l, r, out);
      } else if (full[c]) {
        if (n->nch == 3 && c + 1 < 3 && full[c + 1]) {
          out.push_back({n, c == 0 ? Kind::Pair01 : Kind::Pair12, start[c], n->ch[c]->count + n->ch[c + 1]->count});
          ++c;
        } else {
          out.push_back({n->ch[c].get(), Kind::Whole, start[c], n->ch[c]->count});
        }
      }
    }
  }

  template <class F>
  void walk(const Node* n, int off, int l, int r, F& f) const {
    if (off >= r || off + n->count <= l) return;
    if (n->height == 0) {
      f(*n);
      return;
    }
    for (int c = 0; c < n->nch; ++c) {
      walk(n->ch[c].get(), off, l, r, f);
      off += n->ch[c]->count;
    }
  }

  template <class Eq>
  bool audit_rec(const Node* n, Eq& eq) const {
    if (n->height == 0) return true;
    T p = n->ch[0]->prod;
    int cnt = n->ch[0]->count;
    long long ms = n->ch[0]->measure;
    for (int c = 1; c < n->nch; ++c) {
      if (n->ch[c]->height != n->height - 1) return false;
      p = op_(p, n->ch[c]->prod);
      cnt += n->ch[c]->count;
      ms += n->ch[c]->measure;
    }
    if (!eq(p, n->prod) || cnt != n->count || ms != n->measure) return false;
    if (n->nch == 3 && (!eq(n->pair01, op_(n->ch[0]->prod, n->ch[1]->prod)) ||
                        !eq(n->pair12, op_(n->ch[1]->prod, n->ch[2]->prod))))
      return false;
    for (int c = 0; c < n->nch; ++c)
      if (!audit_rec(n->ch[c].get(), eq)) return false;
    return true;
  }

  NodePtr root_;
  Op op_{};
};

}  // namespace wed
