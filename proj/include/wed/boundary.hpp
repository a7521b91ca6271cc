// SPDX-License-Identifier: Apache-2.0
#pragma once

// Boundary distance matrices of grid rectangles in the augmented alignment
// graph, built by recursive halving and Monge min-plus merges.
//
// Rectangles live in the coordinates of a shared GridCtx (x along the first
// string, y along the second).  Boundary numbering follows wed/grid.hpp
// relative to the rectangle's top-left corner.

#include <memory>
#include <vector>

#include "wed/core.hpp"
#include "wed/grid.hpp"
#include "wed/monge.hpp"

namespace wed {

struct Rect {
  int x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  int w() const { return x1 - x0; }
  int h() const { return y1 - y0; }
  int size() const { return w() + h() + 1; }
  Vertex in(int t) const {
    Vertex v = input_vertex(w(), h(), t);
    return {v.x + x0, v.y + y0};
  }
  Vertex out(int t) const {
    Vertex v = output_vertex(w(), h(), t);
    return {v.x + x0, v.y + y0};
  }
  bool operator==(const Rect&) const = default;
};

struct GridCtx {
  Str x, y;
  std::shared_ptr<const WeightTable> w;
  Weight wb = 0;                  // back-edge cost
  std::vector<Weight> pdel, pins;  // prefix sums of deletion / insertion costs

  GridCtx() = default;
  GridCtx(Str xx, Str yy, std::shared_ptr<const WeightTable> ww, Weight big_w);

  Weight sub(int xx, int yy) const { return w->sub(x[xx], y[yy]); }
  Weight del(int xx) const { return w->del(x[xx]); }
  Weight ins(int yy) const { return w->ins(y[yy]); }
  // Pairs where one coordinate decreases: the distance is that of the
  // L-shaped path (back steps along one axis, forward along the other).
  static bool anti(Vertex u, Vertex v) { return u.x > v.x || u.y > v.y; }
  Weight anti_cost(Vertex u, Vertex v) const;
};

enum class Split : std::uint8_t { Leaf, X, Y, Opaque };

struct BNode {
  Rect rect;
  CompactMatrix bm;
  Split split = Split::Leaf;
  int pos = 0;  // separator coordinate for X / Y splits
  std::shared_ptr<const BNode> a, b;  // left/top and right/bottom
  std::size_t bytes() const;  // including children
};
using NodePtr = std::shared_ptr<const BNode>;

// Throws std::overflow_error if entries of a rectangle could exceed 32 bits.
void check_storage_range(const GridCtx& g, const Rect& r);

NodePtr build_leaf(const GridCtx& g, const Rect& r);
// keep = false drops the children (the result is opaque for path queries).
NodePtr merge_x(const GridCtx& g, const NodePtr& l, const NodePtr& r, bool keep = true);
NodePtr merge_y(const GridCtx& g, const NodePtr& t, const NodePtr& b, bool keep = true);
NodePtr build_node(const GridCtx& g, const Rect& r, bool keep = true);

// A shortest path between boundary vertices, appended to out (the first
// vertex is skipped when it equals out.back()).
void node_path(const GridCtx& g, const BNode& n, int i, int j, Path& out);

// Forward DP shortest path between u <= v (componentwise).
void forward_path(const GridCtx& g, Vertex u, Vertex v, Path& out);

class BoundaryTree {
 public:
  BoundaryTree(Str x, Str y, const WeightTable& w, Weight big_w);

  int width() const { return root_->rect.w(); }
  int height() const { return root_->rect.h(); }
  int size() const { return root_->rect.size(); }
  Weight bm_entry(int i, int j) const;
  Path reconstruct_path(int i, int j) const;
  // Rows [r0, r1) and columns [c0, c1).
  Matrix submatrix(int r0, int r1, int c0, int c1) const;
  Matrix matrix() const { return submatrix(0, size(), 0, size()); }

  const BNode& root() const { return *root_; }
  const GridCtx& ctx() const { return g_; }

 private:
  GridCtx g_;
  NodePtr root_;
};

struct DyadicParams {
  int e, l, r;
};
int ceil_log2(long long n);
DyadicParams dyadic_fragment_params(int c, int len);
bool is_simple(int i, int j, int len);
int split_simple(int i, int j, int len);

}  // namespace wed
