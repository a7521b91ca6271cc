// SPDX-License-Identifier: Apache-2.0
#include "wed/monge.hpp"

namespace wed {

std::vector<RowMin> smawk_row_minima(const Matrix& m, SmawkStats* stats) {
  long long probes = 0;
  std::vector<int> am = smawk(m.rows(), m.cols(), [&](int i, int j) {
    ++probes;
    return m(i, j);
  });
  if (stats) stats->probes += probes;
  std::vector<RowMin> r(m.rows());
  if (m.cols() == 0) return r;
  for (int i = 0; i < m.rows(); ++i) r[i] = {m(i, am[i]), am[i]};
  return r;
}

VecResult vec_minplus(const std::vector<Weight>& v, const Matrix& m) { return vec_minplus(v, MatView<Weight>(m)); }

Matrix minplus(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  minplus_rows(MatView<Weight>(a), MatView<Weight>(b), [&](int i, const Weight* out, const std::int32_t*) {
    for (int j = 0; j < c.cols(); ++j) c.set(i, j, out[j]);
  });
  return c;
}

Matrix minplus_naive(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("minplus: inner dimension mismatch");
  Matrix c(a.rows(), b.cols(), INF);
  for (int i = 0; i < a.rows(); ++i)
    for (int s = 0; s < a.cols(); ++s)
      for (int j = 0; j < b.cols(); ++j) c.set(i, j, std::min(c(i, j), sat_add(a(i, s), b(s, j))));
  return c;
}

SemiElem sem_mul(const SemiElem& a, const SemiElem& b, int cap) {
  if (a.is_z() || b.is_z()) return SemiElem::z();
  if (a.m->cols() != b.m->rows()) return SemiElem::z();
  if (a.m->rows() > cap || b.m->cols() > cap) return SemiElem::z();
  return SemiElem::of(minplus(*a.m, *b.m));
}

}  // namespace wed
