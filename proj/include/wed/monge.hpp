// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <stdexcept>
#include <vector>

#include "wed/core.hpp"
#include "wed/kernels.hpp"

namespace wed {

template <class T>
class BasicMatrix {
 public:
  using value_type = T;
  BasicMatrix() = default;
  BasicMatrix(int p, int q, T fill = 0) : p_(p), q_(q), a_(static_cast<std::size_t>(p) * q, fill) {}
  BasicMatrix(std::initializer_list<std::initializer_list<Weight>> rows) {
    p_ = static_cast<int>(rows.size());
    q_ = p_ ? static_cast<int>(rows.begin()->size()) : 0;
    for (auto& r : rows) {
      if (static_cast<int>(r.size()) != q_) throw std::invalid_argument("ragged matrix");
      for (Weight v : r) a_.push_back(static_cast<T>(v));
    }
  }

  int rows() const { return p_; }
  int cols() const { return q_; }
  Weight operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * q_ + j]; }
  void set(int i, int j, Weight v) { a_[static_cast<std::size_t>(i) * q_ + j] = static_cast<T>(v); }
  T* row(int i) { return a_.data() + static_cast<std::size_t>(i) * q_; }
  const T* row(int i) const { return a_.data() + static_cast<std::size_t>(i) * q_; }
  std::size_t bytes() const { return a_.size() * sizeof(T); }
  bool operator==(const BasicMatrix& o) const { return p_ == o.p_ && q_ == o.q_ && a_ == o.a_; }

 private:
  int p_ = 0, q_ = 0;
  std::vector<T> a_;
};

using Matrix = BasicMatrix<Weight>;
using CompactMatrix = BasicMatrix<std::int32_t>;

// Contiguous block of a stored matrix, addressed without copying.
template <class T>
struct MatView {
  const BasicMatrix<T>* m = nullptr;
  int r0 = 0, c0 = 0, p = 0, q = 0;
  MatView() = default;
  MatView(const BasicMatrix<T>& mm) : m(&mm), p(mm.rows()), q(mm.cols()) {}
  MatView(const BasicMatrix<T>& mm, int rr, int cc, int pp, int qq) : m(&mm), r0(rr), c0(cc), p(pp), q(qq) {}
  int rows() const { return p; }
  int cols() const { return q; }
  Weight operator()(int i, int j) const { return (*m)(r0 + i, c0 + j); }
  const T* row(int i) const { return m->row(r0 + i) + c0; }
};

template <class M>
bool is_monge(const M& a) {
  for (int i = 0; i + 1 < a.rows(); ++i)
    for (int j = 0; j + 1 < a.cols(); ++j)
      if (a(i, j) + a(i + 1, j + 1) > a(i, j + 1) + a(i + 1, j)) return false;
  return true;
}

namespace detail {

template <class F>
void smawk_rec(const std::vector<int>& rows, const std::vector<int>& cols, F& f, int* argmin) {
  int nr = static_cast<int>(rows.size());
  if (nr == 0) return;
  // REDUCE: keep at most nr columns that can hold a leftmost row minimum.
  std::vector<int> kept;
  kept.reserve(std::min(cols.size(), rows.size()));
  for (int col : cols) {
    while (!kept.empty()) {
      int r = rows[kept.size() - 1];
      if (f(r, kept.back()) > f(r, col)) kept.pop_back();
      else break;
    }
    if (static_cast<int>(kept.size()) < nr) kept.push_back(col);
  }
  std::vector<int> odd;
  odd.reserve(nr / 2);
  for (int i = 1; i < nr; i += 2) odd.push_back(rows[i]);
  smawk_rec(odd, kept, f, argmin);
  std::size_t ci = 0;
  for (int i = 0; i < nr; i += 2) {
    int row = rows[i];
    int last = i + 1 < nr ? argmin[rows[i + 1]] : kept.back();
    int best = kept[ci];
    Weight bv = f(row, best);
    while (kept[ci] != last) {
      ++ci;
      Weight v = f(row, kept[ci]);
      if (v < bv) {
        bv = v;
        best = kept[ci];
      }
    }
    argmin[row] = best;
  }
}

}  // namespace detail

// Leftmost argmin of every row of a totally monotone matrix given by f(i, j).
template <class F>
std::vector<int> smawk(int p, int q, F&& f) {
  std::vector<int> argmin(p, 0);
  if (p == 0 || q == 0) return argmin;
  std::vector<int> rows(p), cols(q);
  for (int i = 0; i < p; ++i) rows[i] = i;
  for (int j = 0; j < q; ++j) cols[j] = j;
  detail::smawk_rec(rows, cols, f, argmin.data());
  return argmin;
}

struct RowMin {
  Weight value = INF;
  int arg = -1;
};

struct SmawkStats {
  long long probes = 0;
};

std::vector<RowMin> smawk_row_minima(const Matrix& m, SmawkStats* stats = nullptr);

struct VecResult {
  std::vector<Weight> value;
  std::vector<std::int32_t> witness;  // -1 where the value is INF
};

// Inputs at most this many finite rows (or output columns) use a direct scan.
inline constexpr int kDirectScanLimit = 12;

// out[j] = min_i v[i] + M(i,j) with the leftmost minimizing i.  INF entries of
// v are dropped before the SMAWK pass so that the remaining rows stay Monge.
template <class M>
void vec_minplus_into(const Weight* v, const M& mat, Weight* out, std::int32_t* wit) {
  int p = mat.rows(), q = mat.cols();
  for (int j = 0; j < q; ++j) out[j] = INF, wit[j] = -1;
  thread_local std::vector<int> fin;
  fin.clear();
  for (int i = 0; i < p; ++i)
    if (!is_inf(v[i])) fin.push_back(i);
  int f = static_cast<int>(fin.size());
  if (f == 0 || q == 0) return;
  if (f <= kDirectScanLimit || q <= kDirectScanLimit) {
    for (int i : fin) kernels::minplus_accumulate(out, wit, v[i], mat.row(i), q, i);
    return;
  }
  std::vector<int> am = smawk(q, f, [&](int j, int s) { return v[fin[s]] + mat(fin[s], j); });
  for (int j = 0; j < q; ++j) {
    int i = fin[am[j]];
    out[j] = v[i] + mat(i, j);
    wit[j] = i;
  }
}

template <class M>
VecResult vec_minplus(const std::vector<Weight>& v, const M& mat) {
  if (static_cast<int>(v.size()) != mat.rows()) throw std::invalid_argument("vec_minplus: size mismatch");
  VecResult r;
  r.value.resize(mat.cols());
  r.witness.resize(mat.cols());
  vec_minplus_into(v.data(), mat, r.value.data(), r.witness.data());
  return r;
}

VecResult vec_minplus(const std::vector<Weight>& v, const Matrix& m);

// Plain SMAWK version without the direct-scan shortcut; used to cross-check.
template <class M>
VecResult vec_minplus_smawk(const std::vector<Weight>& v, const M& mat, SmawkStats* stats = nullptr) {
  int p = mat.rows(), q = mat.cols();
  VecResult r;
  r.value.assign(q, INF);
  r.witness.assign(q, -1);
  std::vector<int> fin;
  for (int i = 0; i < p; ++i)
    if (!is_inf(v[i])) fin.push_back(i);
  if (fin.empty() || q == 0) return r;
  long long probes = 0;
  std::vector<int> am = smawk(q, static_cast<int>(fin.size()), [&](int j, int s) {
    ++probes;
    return v[fin[s]] + mat(fin[s], j);
  });
  if (stats) stats->probes += probes;
  for (int j = 0; j < q; ++j) {
    int i = fin[am[j]];
    r.value[j] = v[i] + mat(i, j);
    r.witness[j] = i;
  }
  return r;
}

// C = A (min,+) B for Monge A and B, one row-minima pass per row of A.
template <class MA, class MB, class Out>
void minplus_rows(const MA& a, const MB& b, Out&& emit) {
  if (a.cols() != b.rows()) throw std::invalid_argument("minplus: inner dimension mismatch");
  int q = a.cols(), r = b.cols();
  std::vector<Weight> v(q), out(r);
  std::vector<std::int32_t> wit(r);
  for (int i = 0; i < a.rows(); ++i) {
    for (int s = 0; s < q; ++s) v[s] = a(i, s);
    vec_minplus_into(v.data(), b, out.data(), wit.data());
    emit(i, out.data(), wit.data());
  }
}

Matrix minplus(const Matrix& a, const Matrix& b);
Matrix minplus_naive(const Matrix& a, const Matrix& b);

// Element of the restricted Monge multiplication semigroup; a null matrix
// pointer is the absorbing element z.
struct SemiElem {
  std::shared_ptr<const Matrix> m;
  bool is_z() const { return !m; }
  static SemiElem z() { return {}; }
  static SemiElem of(Matrix mm) { return {std::make_shared<const Matrix>(std::move(mm))}; }
};

SemiElem sem_mul(const SemiElem& a, const SemiElem& b, int cap);

}  // namespace wed
