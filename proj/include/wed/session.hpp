// SPDX-License-Identifier: Apache-2.0
#pragma once

// Both strings change under single-character edits; after each update the
// bounded weighted distance is recomputed from an unweighted hint.  The hint
// is a bounded Landau-Vishkin run over the fingerprinted ropes, turned into
// an edit script of at most k edits and handed to the dynamic structure over
// X, which scores it under the weights.

#include <cstdint>
#include <optional>

#include "wed/core.hpp"
#include "wed/dyn_wed.hpp"
#include "wed/pillar_lv.hpp"

namespace wed {

enum class Side : std::uint8_t { X, Y };

struct SessionOptions {
  DynOptions dyn;
  std::optional<std::uint64_t> seed;  // fingerprint bases; random when unset
};

class Session {
 public:
  Session(const Str& x, const Str& y, int k, const WeightTable& w, SessionOptions opt = {});

  // Applies the edit and returns ed^w_{<=k}(X, Y) (INF above k).
  Weight update(Side target, const Edit& e);
  // Applies the edit without computing anything; the next report() does.
  void apply(Side target, const Edit& e);
  Weight report();
  // A w-optimal alignment of X onto Y, or nullopt when the distance is INF.
  std::optional<Breakpoints> alignment();

  int k() const { return k_; }
  const WeightTable& weights() const { return w_; }
  const FRope& x() const { return x_; }
  const FRope& y() const { return y_; }
  const DynWedMulti& engine() const { return dw_; }
  // Edit script of the last hint (empty when the hint exceeded k).
  const EditScript& hint() const { return hint_; }

 private:
  void refresh();

  int k_;
  WeightTable w_;
  FRope x_, y_;
  DynWedMulti dw_;
  bool fresh_ = false, have_alignment_ = false;
  bool far_ = false;  // unweighted distance above k
  EditScript hint_;
  Weight value_ = INF;
  std::optional<Breakpoints> alignment_;
};

}  // namespace wed
