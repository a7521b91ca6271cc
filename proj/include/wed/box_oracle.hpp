// SPDX-License-Identifier: Apache-2.0
#pragma once

// Distance propagation across X x Y' where Y' is Y after a short edit script.
//
// Preprocessing tiles X x Y with square blocks of side 2^e for every level e
// (clipped at the far edges) and stores a boundary tree per block; level e is
// merged from four blocks of level e-1, so the whole rectangle is the single
// block of the top level.  Any aligned fragment Y[c, c+2^e) of Y is then a
// row of level-e blocks.

#include <memory>
#include <vector>

#include "wed/boundary.hpp"
#include "wed/core.hpp"

namespace wed {

struct BoxOptions {
  int min_level = 0;        // finer fragments are handled by DP rows
  bool keep_halves = true;  // false: blocks above min_level are opaque for paths
};

// A maximal piece of Y': either one edited character (yc < 0) or a run copied
// from Y[yc, yc+len).
struct Phrase {
  int yp = 0, len = 1, yc = -1;
};

// Stage of the top-to-bottom sweep over Y' rows [y0, y0+h).
struct Stage {
  int y0 = 0, h = 1;
  int yc = -1;  // Y row of the block row; -1 for a single DP row
  int e = 0;
};

class BoxOracle {
 public:
  BoxOracle(Str x, Str y, std::shared_ptr<const WeightTable> w, Weight big_w, BoxOptions opt = {});
  BoxOracle(Str x, Str y, const WeightTable& w, Weight big_w, BoxOptions opt = {})
      : BoxOracle(std::move(x), std::move(y), std::make_shared<const WeightTable>(w), big_w, opt) {}

  int width() const { return static_cast<int>(g_.x.size()); }
  int height() const { return static_cast<int>(g_.y.size()); }
  const GridCtx& ctx() const { return g_; }
  int min_level() const { return lo_; }
  int max_level() const { return hi_; }
  int blocks_x(int e) const;
  int blocks_y(int e) const;
  const NodePtr& block(int e, int bi, int bj) const;
  const NodePtr& top() const { return levels_.back().front(); }
  std::size_t bytes() const;

  // v is indexed by the inputs of X x Y'; the result by its outputs.
  std::vector<Weight> propagate(const EditScript& script, const std::vector<Weight>& v) const;

  struct Traced {
    std::vector<Weight> out;
    int source = -1;  // input index where the path to output j starts
    Path path;
  };
  Traced trace(const EditScript& script, const std::vector<Weight>& v, int j) const;
  Path box_path(const EditScript& script, int a, int b) const;

  // Decomposition of Y' used by propagate (exposed for tests).
  std::vector<Phrase> phrases(const EditScript& script) const;
  std::vector<Stage> stages(const EditScript& script) const;

 private:
  struct Recorder;
  std::vector<Weight> sweep(const Str& yp, const std::vector<Stage>& st, const std::vector<Weight>& v,
                            Recorder* rec) const;
  std::vector<Stage> stages_for(const Str& yp, const EditScript& script) const;

  GridCtx g_;
  BoxOptions opt_;
  int lo_ = 0, hi_ = 0;
  std::vector<std::vector<NodePtr>> levels_;  // [e - lo][bj * blocks_x(e) + bi]
};

}  // namespace wed
