// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wed {

// Costs are integers in units of 1/DEN.  INF is far enough below the int64
// limit that the sum of two non-negative values never overflows.
using Weight = std::int64_t;
inline constexpr Weight INF = std::numeric_limits<Weight>::max() / 4;

inline Weight sat_add(Weight a, Weight b) {
  Weight r = a + b;
  return r >= INF ? INF : r;
}
inline bool is_inf(Weight a) { return a >= INF; }

using Symbol = std::int32_t;
using Str = std::vector<Symbol>;

// Dense (sigma+1)^2 table; index sigma stands for the empty symbol.
class WeightTable {
 public:
  WeightTable() = default;
  WeightTable(int sigma, Weight den);
  static WeightTable unit(int sigma, Weight den = 1);

  int sigma() const { return sigma_; }
  int eps() const { return sigma_; }
  Weight den() const { return den_; }
  int dim() const { return sigma_ + 1; }

  Weight operator()(int a, int b) const { return cells_[static_cast<std::size_t>(a) * dim() + b]; }
  Weight& at(int a, int b) { return cells_[static_cast<std::size_t>(a) * dim() + b]; }
  Weight sub(Symbol a, Symbol b) const { return (*this)(a, b); }
  Weight del(Symbol a) const { return (*this)(a, sigma_); }
  Weight ins(Symbol b) const { return (*this)(sigma_, b); }
  Weight max_cell() const;

  const std::vector<Weight>& cells() const { return cells_; }
  bool operator==(const WeightTable& o) const = default;

 private:
  int sigma_ = 0;
  Weight den_ = 1;
  std::vector<Weight> cells_;
};

struct WeightCheck {
  bool ok = true;
  int a = -1, b = -1;
  std::string message;
};

WeightCheck validate_weights(const WeightTable& t);
WeightTable cap_weights(const WeightTable& t, long long k);
bool k_equiv(Weight a, Weight b, Weight k);

struct Vertex {
  int x = 0, y = 0;
  bool operator==(const Vertex&) const = default;
};

// Breakpoint representation of a forward alignment: the endpoints plus every
// vertex whose outgoing step is not a match.
using Breakpoints = std::vector<Vertex>;

// Sparse path: consecutive vertices differ by one unit step in any of the six
// grid directions, or by (d,d) with d >= 2 standing for a run of matches.
using Path = std::vector<Vertex>;

enum class Op : std::uint8_t { Ins, Del, Sub };

struct Edit {
  Op op = Op::Sub;
  int pos = 0;
  Symbol sym = 0;
  bool operator==(const Edit&) const = default;
};

// Canonical: sorted by source position; at one position any inserts come
// first, then at most one delete or substitute.
using EditScript = std::vector<Edit>;

Str apply_edit(const Str& s, const Edit& e);
void check_script(const Str& s, const EditScript& script);
Str apply_edits(const Str& s, const EditScript& script);

// Y position of the vertex where the alignment described by the script first
// reaches source position p (p = |S| maps to the target length).
std::vector<int> script_offsets(const Str& s, const EditScript& script);

Weight alignment_cost(const Str& x, const Str& y, const Breakpoints& bp, const WeightTable& w);
std::vector<Vertex> expand_breakpoints(const Str& x, const Str& y, const Breakpoints& bp);
Breakpoints compress_path(const Str& x, const Str& y, const Path& path);
EditScript script_from_breakpoints(const Str& x, const Str& y, const Breakpoints& bp);
Breakpoints breakpoints_from_script(const Str& x, const EditScript& script);
Breakpoints identity_breakpoints(int n);

// Cost of a sparse path in the augmented graph (back steps cost wb).
Weight path_cost(const Str& x, const Str& y, const Path& path, const WeightTable& w, Weight wb);

std::string to_string(const Str& s);
Str from_string(const std::string& s, char base = 'a');

}  // namespace wed
