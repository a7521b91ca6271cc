// SPDX-License-Identifier: Apache-2.0
#pragma once

// Synthetic hard instances.  A batched instance (X_1..X_m, Y, w, k) over
// disjoint alphabets is lifted through the U/V/diamond/top/bottom gadget
// construction into a single pair (X~, Y~) with ed(X~, Y~) <= 4 whose
// weighted distance is at most k~ exactly when some ed^w(X_i, Y) <= k.
// Separately, blocks joined by an expensive dagger symbol give a session
// workload whose answers are per-block distances.
//
// All weights are numerators over a common DEN.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wed/core.hpp"
#include "wed/workload.hpp"

namespace wed {

struct BatchedOptions {
  int sigma_x = 3, sigma_y = 3;
  Weight den = 8;
  // Force ed^w(X_i, Y) <= k for this i (1-based) by lowering weights.
  std::optional<int> plant;
};

// Symbols [0, sigma_x) form Sigma_X, [sigma_x, sigma_x + sigma_y) Sigma_Y.
struct BatchedInstance {
  std::vector<Str> xs;
  Str y;
  WeightTable w;
  Weight k = 0;  // numerator, in [(2y - x) DEN, (2y - x + 1) DEN)
  int h = 1;
  int sigma_x = 0, sigma_y = 0;
  int m() const { return static_cast<int>(xs.size()); }
  int x() const { return xs.empty() ? 0 : static_cast<int>(xs[0].size()); }
  int ylen() const { return static_cast<int>(y.size()); }
};

BatchedInstance gen_batched(int m, int x, int y, int h, std::uint64_t seed, const BatchedOptions& opt = {});
// Empty string when every structural requirement holds, else the first violation.
std::string validate_batched(const BatchedInstance& b);

struct HardPair {
  int r = 0;
  Weight k_hat = 0, k_tilde = 0;  // numerators
  Weight sent = 0;                // finite stand-in for the infinite $-cells
  int sigma = 0;
  // symbol ids: u_j = u0 + j - 1, v_j = v0 + j - 1
  int u0 = 0, v0 = 0, diamond = 0, bot = 0, top = 0, dollar = 0;
  WeightTable w;
  Str x_tilde, y_tilde;
  Str xp, xh, yh, ys;
  std::vector<Str> xtop, xbot;  // indices 0..m
  Str u, v;
  std::vector<std::vector<int>> f;  // F_i for i = -1..m, stored at i + 1
};

// r, k^ and k~ for the given shape; k is a numerator over den.
struct HardParams {
  int r = 0;
  Weight k_hat = 0, k_tilde = 0;
};
HardParams hard_params(int m, int x, int y, int h, Weight k, Weight den);

HardPair lift(const BatchedInstance& b);

struct SmallReport {
  bool equivalent = false;        // [ed(X~,Y~) <= k~] == [min_i ed^w(X_i,Y) <= k]
  bool gadgets = false;           // gadget distances 4h and 2h+2
  bool offset = false;            // ed(X~,Y~) = ed(X^,Y^) + offset with $ treated as forbidden
  bool witness = false;           // equal lengths, equal after removing the four $
  Weight lifted = INF, batched = INF;
  bool ok() const { return equivalent && gadgets && offset && witness; }
};

// Quadratic dynamic programs over the lifted pair; throws when |X~| exceeds max_len.
SmallReport verify_small(const HardPair& hp, const BatchedInstance& b, int max_len = 4000);

// Session workload over X = X_0 + dagger + X_1 + dagger + ...; each block of Y is
// turned into Y_i by at most four edits, queried, and reverted.
struct DaggerStream {
  Workload workload;
  std::vector<Weight> expected;  // ed^w_{<= k^}(X_i, Y_i) per block
};

DaggerStream gen_dagger_stream(const std::vector<Str>& xs, const std::vector<Str>& ys, const std::vector<int>& ks,
                               const WeightTable& w);

// Random instance of the above with blocks of length len over sigma symbols.
DaggerStream gen_dagger_random(int blocks, int len, int sigma, Weight den, int kmax, std::uint64_t seed);

}  // namespace wed
