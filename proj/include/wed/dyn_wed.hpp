// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dynamic bounded weighted edit distance between a maintained string X and
// strings Z given as short edit scripts against X.
//
// X is cut into phrases X[x_i, x_{i+1}) of length in [k, 2k).  Phrase i owns
// the box X_i x Y_i of the alignment grid of X against itself, with
// Y_i = X[max(x_i - 2k, 0), min(x_{i+1} + 2k, |X|)), preprocessed by a
// BoxOracle.  Consecutive boxes share a piece V_i of the column x = x_i
// (rows max(x_i - 2k, 0) .. min(x_i + 2k, |X|)), and the V_i -> V_{i+1}
// distance matrices D_i are kept in a persistent range tree, so a query only
// touches the boxes hit by the script and folds the rest in O(log) steps.
//
// Box data is position independent: it depends only on the content of X
// around the phrase, so edits far away never invalidate it.

#include <memory>
#include <optional>
#include <vector>

#include "wed/box_oracle.hpp"
#include "wed/core.hpp"
#include "wed/monge.hpp"
#include "wed/range_tree.hpp"

namespace wed {

struct DynOptions {
  BoxOptions box{2, true};
};

struct WedAnswer {
  Weight value = INF;  // INF when the distance exceeds k
  std::optional<Breakpoints> alignment;
};

struct PhraseBox {
  int len = 0;   // phrase length
  int lead = 0;  // x_i - y_i
  int tail = 0;  // y'_{i+1} - x_{i+1}
  int vin = 0;   // |V_i| - 1
  int vout = 0;  // |V_{i+1}| - 1
  BoxOracle oracle;
};

class DynWed {
 public:
  DynWed(Str x, int k, const WeightTable& w, DynOptions opt = {});

  int k() const { return k_; }
  const Str& text() const { return x_; }
  int length() const { return static_cast<int>(x_.size()); }
  bool fallback() const { return tree_.empty(); }
  int phrase_count() const { return tree_.size(); }
  const WeightTable& weights() const { return *w_; }  // capped
  Weight big_w() const { return big_w_; }

  // Cut positions x_0 = 0 < ... < x_m = |X| (empty in fallback mode).
  std::vector<int> cuts() const;
  const PhraseBox& phrase(int i) const { return *tree_.leaf_at(i).payload; }
  Matrix d_matrix(int i) const { return *tree_.leaf_at(i).prod.m; }
  std::size_t bytes() const;

  void edit(const Edit& e);

  // ed^w(X, Z) if at most k (in units of 1/DEN), INF otherwise, where Z is X
  // after the canonical script (at most k edits).
  WedAnswer query(const EditScript& script, bool want_alignment = true) const;

  struct Mul {
    int cap = 0;
    SemiElem operator()(const SemiElem& a, const SemiElem& b) const { return sem_mul(a, b, cap); }
  };
  using Tree = RangeTree<SemiElem, std::shared_ptr<const PhraseBox>, Mul>;
  const Tree& tree() const { return tree_; }

 private:
  std::vector<Tree::Leaf> build_range(int from, int len, int n, bool first, bool last) const;
  void rebuild_all();
  WedAnswer query_fallback(const EditScript& script, bool want_alignment) const;
  void ref_path(const Tree::Ref& r, int s, int j, int x0, int dy, std::vector<Path>& segs) const;

  Str x_;
  int k_ = 1;
  DynOptions opt_;
  std::shared_ptr<const WeightTable> w_;
  Weight big_w_ = 0;
  Tree tree_;
  std::shared_ptr<const BoxOracle> flat_;  // fallback oracle over X x X (null for X empty)
};

// Lengths of a greedy partition of len >= k into pieces of length in [k, 2k).
std::vector<int> partition_lengths(int len, int k);

// Instances at thresholds 1, 2, 4, ..., 2^ceil(log2 k); a query starts at the
// smallest threshold not below the script length and doubles until the
// answer is finite.
class DynWedMulti {
 public:
  DynWedMulti(Str x, int k, const WeightTable& w, DynOptions opt = {});

  int k() const { return k_; }
  const Str& text() const { return levels_.front().text(); }
  const std::vector<DynWed>& levels() const { return levels_; }
  void edit(const Edit& e);
  WedAnswer query(const EditScript& script, bool want_alignment = true) const;
  // Thresholds consulted by the last query.
  const std::vector<int>& last_thresholds() const { return last_; }

 private:
  int k_;
  std::vector<DynWed> levels_;
  mutable std::vector<int> last_;
};

}  // namespace wed
