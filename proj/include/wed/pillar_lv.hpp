// SPDX-License-Identifier: Apache-2.0
#pragma once

// Fingerprinted persistent rope with the usual string primitives (access,
// extract, LCP in both directions), and Landau-Vishkin style wave algorithms
// on top of it: bounded unweighted edit distance, self-edit distance and the
// k-shifted self-edit distance.
//
// Equality of fragments is tested through two polynomial fingerprints modulo
// two primes near 2^61 with random bases, so comparisons can err (one-sided)
// with negligible probability.

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>

#include "wed/core.hpp"

namespace wed {

struct Fp {
  std::uint64_t a = 0, b = 0;
  bool operator==(const Fp&) const = default;
};

// Moduli and bases shared by every rope that is compared with another.
class FpSpace {
 public:
  static constexpr std::uint64_t P1 = (1ULL << 61) - 1;
  static constexpr std::uint64_t P2 = (1ULL << 61) + 15;
  explicit FpSpace(std::uint64_t seed);
  static std::shared_ptr<const FpSpace> global();  // bases drawn from std::random_device

  std::uint64_t base1() const { return b1_; }
  std::uint64_t base2() const { return b2_; }
  static std::uint64_t mul1(std::uint64_t x, std::uint64_t y);
  static std::uint64_t mul2(std::uint64_t x, std::uint64_t y);
  // h(A)·B^|B| + h(B), given p = B^|B| for the right operand.
  static Fp concat(Fp left, Fp right, Fp right_pow);
  static Fp pow_mul(Fp x, Fp y) { return {mul1(x.a, y.a), mul2(x.b, y.b)}; }
  Fp symbol(Symbol c) const;      // fingerprint of a one-symbol string
  Fp base() const { return {b1_, b2_}; }

 private:
  std::uint64_t b1_, b2_;
};

class FRope {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  FRope() : FRope(Str{}) {}
  explicit FRope(const Str& s, std::shared_ptr<const FpSpace> sp = FpSpace::global());

  int length() const;
  Symbol access(int i) const;
  Str extract(int l, int r) const;
  Str to_str() const { return extract(0, length()); }
  Fp fingerprint(int l, int r) const;          // of S[l, r)
  Fp reverse_fingerprint(int l, int r) const;  // of reverse(S[l, r))
  const std::shared_ptr<const FpSpace>& space() const { return sp_; }

  FRope edited(const Edit& e) const;
  FRope concat(const FRope& o) const;
  std::pair<FRope, FRope> split(int i) const;

  // Length of the longest common prefix of S[i..] and T[j..].
  static int lcp(const FRope& s, int i, const FRope& t, int j);
  // Length of the longest common suffix of S[..i) and T[..j).
  static int lcp_reverse(const FRope& s, int i, const FRope& t, int j);
  static long long comparisons();  // fragment equality tests so far

 private:
  FRope(NodePtr root, std::shared_ptr<const FpSpace> sp) : root_(std::move(root)), sp_(std::move(sp)) {}
  NodePtr root_;
  std::shared_ptr<const FpSpace> sp_;
};

struct LvResult {
  int value = 0;
  Breakpoints alignment;
};

// Unweighted ed(X, Y) with an optimal alignment if at most k.
std::optional<LvResult> lv_ed(const FRope& x, const FRope& y, int k);
std::optional<LvResult> lv_ed(const Str& x, const Str& y, int k);

// Cheapest alignment of X onto itself that matches no X[i] with itself,
// returned on or above the main diagonal.
std::optional<LvResult> self_ed(const FRope& x, int k);
std::optional<LvResult> self_ed(const Str& x, int k);

// Distance from some (x, 0), x <= min(|X|, k), to some (|X|, y),
// y >= |X| - k, in the grid of X against itself without main-diagonal
// edges; the alignment runs between those two vertices.
std::optional<LvResult> sed_k(const FRope& x, int k);
std::optional<LvResult> sed_k(const Str& x, int k);

// Edit script equivalent to a forward alignment between two ropes; costs
// O(log n) per breakpoint.
EditScript rope_script(const FRope& x, const FRope& y, const Breakpoints& bp);

// Smallest period of s (|s| for aperiodic strings, 0 for the empty string).
int smallest_period(const Str& s);

}  // namespace wed
