// SPDX-License-Identifier: Apache-2.0
#pragma once

// Quadratic and banded dynamic programs plus graph searches.  ed_bounded is
// the production baseline; the rest exist to check the fast structures.

#include <optional>
#include <vector>

#include "wed/core.hpp"
#include "wed/monge.hpp"

namespace wed {

struct EdResult {
  Weight value = INF;  // INF when above the threshold
  std::optional<Breakpoints> alignment;
};

// Weighted distance if it is at most k*DEN.  Only the band |x - y| <= k is
// explored since every indel costs at least DEN.
EdResult ed_bounded(const Str& x, const Str& y, long long k, const WeightTable& w, bool want_alignment = true);

// Unit costs (DEN = 1) without building a table.
EdResult ed_bounded_unit(const Str& x, const Str& y, long long k, bool want_alignment = true);

Weight ed_full(const Str& x, const Str& y, const WeightTable& w);

struct AugGridSpec {
  Str x, y;
  WeightTable w;
  Weight big_w = 0;  // largest cell; back edges cost big_w + 1

  AugGridSpec() = default;
  AugGridSpec(Str xx, Str yy, WeightTable ww) : x(std::move(xx)), y(std::move(yy)), w(std::move(ww)), big_w(w.max_cell()) {}
  AugGridSpec(Str xx, Str yy, WeightTable ww, Weight bw) : x(std::move(xx)), y(std::move(yy)), w(std::move(ww)), big_w(bw) {}
  Weight back() const { return big_w + 1; }
};

// Distances from one vertex to all vertices, indexed [x*(|Y|+1) + y].
std::vector<Weight> brute_dist(const AugGridSpec& g, Vertex src);
// Same with back edges removed.
std::vector<Weight> brute_forward_dist(const AugGridSpec& g, Vertex src);

Matrix brute_boundary_matrix(const AugGridSpec& g);

int brute_self_ed(const Str& x);
int brute_sed_k(const Str& x, int k);
Weight brute_min_batched(const std::vector<Str>& xs, const Str& y, const WeightTable& w);

}  // namespace wed
