// SPDX-License-Identifier: Apache-2.0
#include "wed/core.hpp"

#include <algorithm>
#include <cstdlib>

namespace wed {

WeightTable::WeightTable(int sigma, Weight den) : sigma_(sigma), den_(den) {
  if (sigma < 0 || den <= 0) throw std::invalid_argument("bad weight table shape");
  cells_.assign(static_cast<std::size_t>(sigma + 1) * (sigma + 1), 0);
}

WeightTable WeightTable::unit(int sigma, Weight den) {
  WeightTable t(sigma, den);
  for (int a = 0; a <= sigma; ++a)
    for (int b = 0; b <= sigma; ++b) t.at(a, b) = a == b ? 0 : den;
  return t;
}

Weight WeightTable::max_cell() const {
  Weight m = 0;
  for (Weight c : cells_) m = std::max(m, c);
  return m;
}

WeightCheck validate_weights(const WeightTable& t) {
  WeightCheck r;
  if (t.cells().size() != static_cast<std::size_t>(t.dim()) * t.dim()) {
    r.ok = false;
    r.message = "table dimensions inconsistent";
    return r;
  }
  for (int a = 0; a < t.dim(); ++a)
    for (int b = 0; b < t.dim(); ++b) {
      Weight c = t(a, b);
      bool bad = a == b ? c != 0 : (c < t.den() || is_inf(c));
      if (bad) {
        r.ok = false;
        r.a = a;
        r.b = b;
        r.message = "cell (" + std::to_string(a) + "," + std::to_string(b) + ") = " + std::to_string(c) +
                    (a == b ? " must be 0" : " must be in [DEN, INF)");
        return r;
      }
    }
  return r;
}

WeightTable cap_weights(const WeightTable& t, long long k) {
  if (k < 1) throw std::invalid_argument("cap_weights: k must be >= 1");
  WeightTable r = t;
  Weight cap = static_cast<Weight>(k + 1) * t.den();
  for (int a = 0; a < t.dim(); ++a)
    for (int b = 0; b < t.dim(); ++b) r.at(a, b) = std::min(t(a, b), cap);
  return r;
}

bool k_equiv(Weight a, Weight b, Weight k) { return a == b || std::min(a, b) > k; }

Str apply_edit(const Str& s, const Edit& e) {
  Str r = s;
  int n = static_cast<int>(s.size());
  switch (e.op) {
    case Op::Ins:
      if (e.pos < 0 || e.pos > n) throw std::out_of_range("insert position out of range");
      r.insert(r.begin() + e.pos, e.sym);
      break;
    case Op::Del:
      if (e.pos < 0 || e.pos >= n) throw std::out_of_range("delete position out of range");
      r.erase(r.begin() + e.pos);
      break;
    case Op::Sub:
      if (e.pos < 0 || e.pos >= n) throw std::out_of_range("substitute position out of range");
      r[e.pos] = e.sym;
      break;
  }
  return r;
}

void check_script(const Str& s, const EditScript& script) {
  int n = static_cast<int>(s.size());
  int last = -1;
  bool closed = false;  // a delete/substitute already used the current position
  for (const Edit& e : script) {
    int lim = e.op == Op::Ins ? n : n - 1;
    if (e.pos < 0 || e.pos > lim) throw std::out_of_range("edit position out of range");
    if (e.pos < last) throw std::invalid_argument("edit script not sorted by position");
    if (e.pos > last) closed = false;
    if (closed) throw std::invalid_argument("edit script: edit after delete/substitute at the same position");
    if (e.op != Op::Ins) {
      closed = true;
      if (e.op == Op::Sub && s[e.pos] == e.sym) throw std::invalid_argument("edit script: no-op substitution");
    }
    last = e.pos;
  }
}

Str apply_edits(const Str& s, const EditScript& script) {
  check_script(s, script);
  Str r;
  r.reserve(s.size() + script.size());
  std::size_t e = 0;
  for (int p = 0; p <= static_cast<int>(s.size()); ++p) {
    bool gone = false;
    Symbol sub = -1;
    while (e < script.size() && script[e].pos == p) {
      const Edit& ed = script[e++];
      if (ed.op == Op::Ins) r.push_back(ed.sym);
      else if (ed.op == Op::Del) gone = true;
      else sub = ed.sym;
    }
    if (p == static_cast<int>(s.size())) break;
    if (gone) continue;
    r.push_back(sub >= 0 ? sub : s[p]);
  }
  return r;
}

std::vector<int> script_offsets(const Str& s, const EditScript& script) {
  int n = static_cast<int>(s.size());
  std::vector<int> phi(n + 1);
  int shift = 0;
  std::size_t e = 0;
  for (int p = 0; p <= n; ++p) {
    phi[p] = p + shift;
    while (e < script.size() && script[e].pos == p) {
      if (script[e].op == Op::Ins) ++shift;
      else if (script[e].op == Op::Del) --shift;
      ++e;
    }
  }
  phi[n] = n + shift;
  return phi;
}

std::vector<Vertex> expand_breakpoints(const Str& x, const Str& y, const Breakpoints& bp) {
  if (bp.empty()) throw std::invalid_argument("empty breakpoint sequence");
  int n = static_cast<int>(x.size()), m = static_cast<int>(y.size());
  auto in_range = [&](const Vertex& v) { return v.x >= 0 && v.x <= n && v.y >= 0 && v.y <= m; };
  std::vector<Vertex> out{bp[0]};
  if (!in_range(bp[0])) throw std::invalid_argument("breakpoint out of range");
  for (std::size_t i = 1; i < bp.size(); ++i) {
    Vertex a = bp[i - 1], b = bp[i];
    if (!in_range(b)) throw std::invalid_argument("breakpoint out of range");
    int dx = b.x - a.x, dy = b.y - a.y;
    Vertex c = a;
    if (dx == dy && dx >= 1) {
      c = {a.x + 1, a.y + 1};
    } else if (dx == dy + 1 && dy >= 0) {
      c = {a.x + 1, a.y};
    } else if (dy == dx + 1 && dx >= 0) {
      c = {a.x, a.y + 1};
    } else {
      throw std::invalid_argument("non-monotone breakpoint gap");
    }
    out.push_back(c);
    while (c.x < b.x) {
      c = {c.x + 1, c.y + 1};
      out.push_back(c);
    }
  }
  return out;
}

Weight alignment_cost(const Str& x, const Str& y, const Breakpoints& bp, const WeightTable& w) {
  std::vector<Vertex> p = expand_breakpoints(x, y, bp);
  Weight c = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    Vertex a = p[i - 1], b = p[i];
    if (b.x == a.x + 1 && b.y == a.y + 1) c += w.sub(x[a.x], y[a.y]);
    else if (b.x == a.x + 1) c += w.del(x[a.x]);
    else c += w.ins(y[a.y]);
  }
  return c;
}

Breakpoints compress_path(const Str& x, const Str& y, const Path& path) {
  if (path.empty()) throw std::invalid_argument("empty path");
  Breakpoints bp{path.front()};
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    Vertex a = path[i], b = path[i + 1];
    int dx = b.x - a.x, dy = b.y - a.y;
    if (dx < 0 || dy < 0) throw std::invalid_argument("compress_path: backward step");
    bool match_run = dx == dy && dx >= 2;
    bool match = dx == 1 && dy == 1 && x[a.x] == y[a.y];
    if (!match_run && !match && !(bp.back() == a)) bp.push_back(a);
  }
  if (!(bp.back() == path.back())) bp.push_back(path.back());
  return bp;
}

EditScript script_from_breakpoints(const Str& x, const Str& y, const Breakpoints& bp) {
  std::vector<Vertex> p = expand_breakpoints(x, y, bp);
  EditScript s;
  for (std::size_t i = 1; i < p.size(); ++i) {
    Vertex a = p[i - 1], b = p[i];
    if (b.x == a.x + 1 && b.y == a.y + 1) {
      if (x[a.x] != y[a.y]) s.push_back({Op::Sub, a.x, y[a.y]});
    } else if (b.x == a.x + 1) {
      s.push_back({Op::Del, a.x, 0});
    } else {
      s.push_back({Op::Ins, a.x, y[a.y]});
    }
  }
  return s;
}

Breakpoints breakpoints_from_script(const Str& x, const EditScript& script) {
  check_script(x, script);
  int n = static_cast<int>(x.size());
  Breakpoints bp{{0, 0}};
  int yy = 0, xx = 0;
  auto walk_to = [&](int p) {  // matches up to source position p
    int d = p - xx;
    xx += d;
    yy += d;
  };
  for (const Edit& e : script) {
    walk_to(e.pos);
    if (!(bp.back() == Vertex{xx, yy})) bp.push_back({xx, yy});
    if (e.op == Op::Ins) ++yy;
    else if (e.op == Op::Del) ++xx;
    else ++xx, ++yy;
  }
  walk_to(n);
  if (!(bp.back() == Vertex{xx, yy})) bp.push_back({xx, yy});
  return bp;
}

Breakpoints identity_breakpoints(int n) {
  if (n == 0) return {{0, 0}};
  return {{0, 0}, {n, n}};
}

Weight path_cost(const Str& x, const Str& y, const Path& path, const WeightTable& w, Weight wb) {
  Weight c = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    Vertex a = path[i], b = path[i + 1];
    int dx = b.x - a.x, dy = b.y - a.y;
    if (dx == dy && dx >= 1) {
      for (int t = 0; t < dx; ++t) c += w.sub(x[a.x + t], y[a.y + t]);
    } else if (dx == 1 && dy == 0) {
      c += w.del(x[a.x]);
    } else if (dx == 0 && dy == 1) {
      c += w.ins(y[a.y]);
    } else if ((dx == -1 && dy == 0) || (dx == 0 && dy == -1) || (dx == -1 && dy == -1)) {
      c += wb;
    } else {
      throw std::invalid_argument("path_cost: not a unit step");
    }
  }
  return c;
}

std::string to_string(const Str& s) {
  std::string r;
  for (Symbol c : s) r += static_cast<char>('a' + c);
  return r;
}

Str from_string(const std::string& s, char base) {
  Str r;
  for (char c : s) r.push_back(static_cast<Symbol>(c - base));
  return r;
}

}  // namespace wed
