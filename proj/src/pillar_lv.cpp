// SPDX-License-Identifier: Apache-2.0
#include "wed/pillar_lv.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <random>
#include <stdexcept>
#include <vector>

namespace wed {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 splitmix(u64& s) {
  u64 z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

u64 next_priority() {
  static thread_local u64 state = 0x5eed5eed5eedULL;
  return splitmix(state);
}

std::atomic<long long> g_comparisons{0};

}  // namespace

FpSpace::FpSpace(u64 seed) {
  b1_ = 256 + splitmix(seed) % (P1 - 512);
  b2_ = 256 + splitmix(seed) % (P2 - 512);
}

std::shared_ptr<const FpSpace> FpSpace::global() {
  static const std::shared_ptr<const FpSpace> sp = [] {
    std::random_device rd;
    u64 seed = (static_cast<u64>(rd()) << 32) ^ rd();
    return std::make_shared<const FpSpace>(seed);
  }();
  return sp;
}

u64 FpSpace::mul1(u64 x, u64 y) {
  u128 t = static_cast<u128>(x) * y;
  u64 r = (static_cast<u64>(t) & P1) + static_cast<u64>(t >> 61);
  return r >= P1 ? r - P1 : r;
}

u64 FpSpace::mul2(u64 x, u64 y) { return static_cast<u64>(static_cast<u128>(x) * y % P2); }

Fp FpSpace::concat(Fp l, Fp r, Fp rp) {
  u64 a = mul1(l.a, rp.a) + r.a, b = mul2(l.b, rp.b) + r.b;
  return {a >= P1 ? a - P1 : a, b >= P2 ? b - P2 : b};
}

Fp FpSpace::symbol(Symbol c) const { return {static_cast<u64>(c) + 1, static_cast<u64>(c) + 1}; }

// --- rope -----------------------------------------------------------------

struct FRope::Node {
  Symbol sym = 0;
  u64 pri = 0;
  int size = 1;
  Fp fwd, rev, pw;
  NodePtr l, r;
};

namespace {

using NodePtr = FRope::NodePtr;
using Node = FRope::Node;

const Fp kOne{1, 1};

int sz(const NodePtr& t) { return t ? t->size : 0; }
Fp fwd(const NodePtr& t) { return t ? t->fwd : Fp{}; }
Fp rev(const NodePtr& t) { return t ? t->rev : Fp{}; }
Fp pw(const NodePtr& t) { return t ? t->pw : kOne; }

NodePtr make(const FpSpace& sp, NodePtr l, Symbol c, u64 pri, NodePtr r) {
  auto n = std::make_shared<Node>();
  const Fp ch = sp.symbol(c), b = sp.base();
  n->sym = c;
  n->pri = pri;
  n->size = sz(l) + 1 + sz(r);
  n->fwd = FpSpace::concat(FpSpace::concat(fwd(l), ch, b), fwd(r), pw(r));
  n->rev = FpSpace::concat(FpSpace::concat(rev(r), ch, b), rev(l), pw(l));
  n->pw = FpSpace::pow_mul(FpSpace::pow_mul(pw(l), b), pw(r));
  n->l = std::move(l);
  n->r = std::move(r);
  return n;
}

NodePtr merge(const FpSpace& sp, const NodePtr& a, const NodePtr& b) {
  if (!a) return b;
  if (!b) return a;
  if (a->pri > b->pri) return make(sp, a->l, a->sym, a->pri, merge(sp, a->r, b));
  return make(sp, merge(sp, a, b->l), b->sym, b->pri, b->r);
}

std::pair<NodePtr, NodePtr> split(const FpSpace& sp, const NodePtr& t, int i) {
  if (!t) return {nullptr, nullptr};
  if (i <= sz(t->l)) {
    auto [a, b] = split(sp, t->l, i);
    return {a, make(sp, b, t->sym, t->pri, t->r)};
  }
  auto [a, b] = split(sp, t->r, i - sz(t->l) - 1);
  return {make(sp, t->l, t->sym, t->pri, a), b};
}

// Cartesian tree over random priorities, built bottom-up in linear time.
NodePtr build(const FpSpace& sp, const Str& s) {
  const int n = static_cast<int>(s.size());
  if (n == 0) return nullptr;
  std::vector<u64> pri(n);
  for (auto& p : pri) p = next_priority();
  std::vector<int> lc(n, -1), rc(n, -1), st;
  for (int i = 0; i < n; ++i) {
    int last = -1;
    while (!st.empty() && pri[st.back()] < pri[i]) {
      last = st.back();
      st.pop_back();
    }
    lc[i] = last;
    if (!st.empty()) rc[st.back()] = i;
    st.push_back(i);
  }
  std::vector<NodePtr> done(n);
  // Post-order without recursion.
  std::vector<std::pair<int, bool>> work{{st.front(), false}};
  while (!work.empty()) {
    auto [v, expanded] = work.back();
    work.pop_back();
    if (!expanded) {
      work.push_back({v, true});
      if (rc[v] >= 0) work.push_back({rc[v], false});
      if (lc[v] >= 0) work.push_back({lc[v], false});
      continue;
    }
    done[v] = make(sp, lc[v] >= 0 ? done[lc[v]] : nullptr, s[v], pri[v], rc[v] >= 0 ? done[rc[v]] : nullptr);
    if (lc[v] >= 0) done[lc[v]].reset();
    if (rc[v] >= 0) done[rc[v]].reset();
  }
  return done[st.front()];
}

struct Piece {
  Fp h, p = kOne;
};

// Fingerprint of [l, r) within t (reversed when back is set).
Piece range(const FpSpace& sp, const Node* t, int l, int r, bool back) {
  if (l == 0 && r == t->size) return {back ? t->rev : t->fwd, t->pw};
  const int ls = sz(t->l);
  Piece res;
  auto add = [&](Piece x) {
    res = back ? Piece{FpSpace::concat(x.h, res.h, res.p), FpSpace::pow_mul(res.p, x.p)}
               : Piece{FpSpace::concat(res.h, x.h, x.p), FpSpace::pow_mul(res.p, x.p)};
  };
  if (l < ls) add(range(sp, t->l.get(), l, std::min(r, ls), back));
  if (l <= ls && ls < r) add({sp.symbol(t->sym), sp.base()});
  if (r > ls + 1) add(range(sp, t->r.get(), std::max(l - ls - 1, 0), r - ls - 1, back));
  return res;
}

void collect(const Node* t, int l, int r, Str& out) {
  if (!t || l >= r) return;
  const int ls = sz(t->l);
  if (l < ls) collect(t->l.get(), l, std::min(r, ls), out);
  if (l <= ls && ls < r) out.push_back(t->sym);
  if (r > ls + 1) collect(t->r.get(), std::max(l - ls - 1, 0), r - ls - 1, out);
}

bool same(const FRope& s, int i, const FRope& t, int j, int len) {
  ++g_comparisons;
  return s.fingerprint(i, i + len) == t.fingerprint(j, j + len);
}

}  // namespace

FRope::FRope(const Str& s, std::shared_ptr<const FpSpace> sp) : sp_(std::move(sp)) {
  if (!sp_) throw std::invalid_argument("FRope: null fingerprint space");
  root_ = build(*sp_, s);
}

int FRope::length() const { return sz(root_); }

Symbol FRope::access(int i) const {
  if (i < 0 || i >= length()) throw std::out_of_range("FRope::access: index out of range");
  const Node* t = root_.get();
  while (true) {
    int ls = sz(t->l);
    if (i < ls) {
      t = t->l.get();
    } else if (i == ls) {
      return t->sym;
    } else {
      i -= ls + 1;
      t = t->r.get();
    }
  }
}

Str FRope::extract(int l, int r) const {
  if (l < 0 || r > length() || l > r) throw std::out_of_range("FRope::extract: bad range");
  Str out;
  out.reserve(r - l);
  collect(root_.get(), l, r, out);
  return out;
}

Fp FRope::fingerprint(int l, int r) const {
  if (l < 0 || r > length() || l > r) throw std::out_of_range("FRope::fingerprint: bad range");
  if (l == r) return {};
  return range(*sp_, root_.get(), l, r, false).h;
}

Fp FRope::reverse_fingerprint(int l, int r) const {
  if (l < 0 || r > length() || l > r) throw std::out_of_range("FRope::reverse_fingerprint: bad range");
  if (l == r) return {};
  return range(*sp_, root_.get(), l, r, true).h;
}

FRope FRope::edited(const Edit& e) const {
  const int n = length();
  if (e.op == Op::Ins) {
    if (e.pos < 0 || e.pos > n) throw std::out_of_range("FRope::edited: position out of range");
    auto [a, b] = wed::split(*sp_, root_, e.pos);
    NodePtr c = make(*sp_, nullptr, e.sym, next_priority(), nullptr);
    return FRope(merge(*sp_, merge(*sp_, a, c), b), sp_);
  }
  if (e.pos < 0 || e.pos >= n) throw std::out_of_range("FRope::edited: position out of range");
  auto [a, bc] = wed::split(*sp_, root_, e.pos);
  auto [b, c] = wed::split(*sp_, bc, 1);
  if (e.op == Op::Sub) b = make(*sp_, nullptr, e.sym, b->pri, nullptr);
  else b = nullptr;
  return FRope(merge(*sp_, merge(*sp_, a, b), c), sp_);
}

FRope FRope::concat(const FRope& o) const {
  if (sp_ != o.sp_) throw std::invalid_argument("FRope::concat: different fingerprint spaces");
  return FRope(merge(*sp_, root_, o.root_), sp_);
}

std::pair<FRope, FRope> FRope::split(int i) const {
  if (i < 0 || i > length()) throw std::out_of_range("FRope::split: index out of range");
  auto [a, b] = wed::split(*sp_, root_, i);
  return {FRope(a, sp_), FRope(b, sp_)};
}

int FRope::lcp(const FRope& s, int i, const FRope& t, int j) {
  if (s.sp_ != t.sp_) throw std::invalid_argument("lcp: different fingerprint spaces");
  if (i < 0 || j < 0 || i > s.length() || j > t.length()) throw std::out_of_range("lcp: bad position");
  const int lim = std::min(s.length() - i, t.length() - j);
  if (lim == 0 || s.access(i) != t.access(j)) return 0;
  int good = 1, step = 1;
  while (good < lim) {
    int len = std::min(lim, good + step);
    if (!same(s, i, t, j, len)) break;
    good = len;
    step *= 2;
  }
  if (good == lim) return lim;
  int bad = std::min(lim, good + step);
  while (bad - good > 1) {
    int mid = good + (bad - good) / 2;
    if (same(s, i, t, j, mid)) good = mid;
    else bad = mid;
  }
  return good;
}

int FRope::lcp_reverse(const FRope& s, int i, const FRope& t, int j) {
  if (s.sp_ != t.sp_) throw std::invalid_argument("lcp_reverse: different fingerprint spaces");
  if (i < 0 || j < 0 || i > s.length() || j > t.length()) throw std::out_of_range("lcp_reverse: bad position");
  const int lim = std::min(i, j);
  if (lim == 0 || s.access(i - 1) != t.access(j - 1)) return 0;
  int good = 1, step = 1;
  while (good < lim) {
    int len = std::min(lim, good + step);
    if (!same(s, i - len, t, j - len, len)) break;
    good = len;
    step *= 2;
  }
  if (good == lim) return lim;
  int bad = std::min(lim, good + step);
  while (bad - good > 1) {
    int mid = good + (bad - good) / 2;
    if (same(s, i - mid, t, j - mid, mid)) good = mid;
    else bad = mid;
  }
  return good;
}

long long FRope::comparisons() { return g_comparisons.load(); }

// --- waves ----------------------------------------------------------------

namespace {

enum class Step : std::uint8_t { None, Start, Keep, Sub, Del, Ins };

// Furthest-reaching waves over diagonals d = y - x in [dlo, dhi] of an
// n x m grid.  Diagonal steps and slides are disabled on d = 0 when
// main_free is false.
struct Wave {
  int n, m, k, dlo, dhi;
  bool main_free;
  const FRope &x, &y;
  int width() const { return dhi - dlo + 1; }
  std::vector<int> reach, pre;  // [e * width + (d - dlo)]
  std::vector<Step> how;

  Wave(const FRope& xx, const FRope& yy, int kk, int lo, int hi, bool mf)
      : n(xx.length()), m(yy.length()), k(kk), dlo(lo), dhi(hi), main_free(mf), x(xx), y(yy) {
    reach.assign(static_cast<std::size_t>(k + 1) * width(), INT_MIN);
    pre.assign(reach.size(), INT_MIN);
    how.assign(reach.size(), Step::None);
  }
  int idx(int e, int d) const { return e * width() + (d - dlo); }
  bool diag_ok(int d) const { return main_free || d != 0; }
  int slide(int d, int xx) const { return diag_ok(d) ? xx + FRope::lcp(x, xx, y, xx + d) : xx; }
  int xmax(int d) const { return std::min(n, m - d); }

  void start(int d, int xx) {
    int i = idx(0, d);
    reach[i] = slide(d, xx);
    pre[i] = xx;
    how[i] = Step::Start;
  }
  void advance(int e) {
    for (int d = dlo; d <= dhi; ++d) {
      int best = INT_MIN;
      Step kind = Step::None;
      auto offer = [&](int v, Step s) {
        if (v > best) best = v, kind = s;
      };
      int here = reach[idx(e - 1, d)];
      if (here != INT_MIN) {
        offer(here, Step::Keep);
        if (diag_ok(d) && here + 1 <= xmax(d)) offer(here + 1, Step::Sub);
      }
      if (d + 1 <= dhi) {
        int v = reach[idx(e - 1, d + 1)];
        if (v != INT_MIN && v + 1 <= n) offer(v + 1, Step::Del);
      }
      if (d - 1 >= dlo) {
        int v = reach[idx(e - 1, d - 1)];
        if (v != INT_MIN && v + d <= m) offer(v, Step::Ins);
      }
      if (kind == Step::None) continue;
      int i = idx(e, d);
      pre[i] = best;
      how[i] = kind;
      reach[i] = kind == Step::Keep ? best : slide(d, best);
    }
  }
  LvResult backtrack(int e, int d) const {
    LvResult res;
    res.value = 0;
    Breakpoints rv{{n, n + d}};
    while (true) {
      int i = idx(e, d);
      int p = pre[i];
      Step s = how[i];
      if (s == Step::Start) {
        rv.push_back({p, p + d});
        break;
      }
      if (s == Step::Keep) {
        --e;
        continue;
      }
      ++res.value;
      if (s == Step::Sub) {
        rv.push_back({p - 1, p - 1 + d});
      } else if (s == Step::Del) {
        rv.push_back({p - 1, p + d});
        ++d;
      } else {
        rv.push_back({p, p + d - 1});
        --d;
      }
      --e;
    }
    std::reverse(rv.begin(), rv.end());
    for (const Vertex& v : rv)
      if (res.alignment.empty() || !(res.alignment.back() == v)) res.alignment.push_back(v);
    return res;
  }
};

}  // namespace

std::optional<LvResult> lv_ed(const FRope& x, const FRope& y, int k) {
  if (k < 0) throw std::invalid_argument("lv_ed: negative k");
  const int n = x.length(), m = y.length(), target = m - n;
  if (std::abs(target) > k) return std::nullopt;
  Wave w(x, y, k, std::max(-k, -n), std::min(k, m), true);
  w.start(0, 0);
  for (int e = 0; e <= k; ++e) {
    if (e > 0) w.advance(e);
    if (w.reach[w.idx(e, target)] == n) return w.backtrack(e, target);
  }
  return std::nullopt;
}

std::optional<LvResult> lv_ed(const Str& x, const Str& y, int k) {
  auto sp = FpSpace::global();
  return lv_ed(FRope(x, sp), FRope(y, sp), k);
}

std::optional<LvResult> self_ed(const FRope& x, int k) {
  if (k < 1) throw std::invalid_argument("self_ed: k must be positive");
  const int n = x.length();
  if (n == 0) return LvResult{0, {{0, 0}}};
  Wave w(x, x, k, 0, std::min(k, n), false);
  w.start(0, 0);
  for (int e = 0; e <= k; ++e) {
    if (e > 0) w.advance(e);
    if (w.reach[w.idx(e, 0)] == n) return w.backtrack(e, 0);
  }
  return std::nullopt;
}

std::optional<LvResult> self_ed(const Str& x, int k) { return self_ed(FRope(x), k); }

namespace {

// Dense version for |X| < k: full-grid DP with the free leading deletions.
std::optional<LvResult> sed_k_dense(const FRope& xr, int k) {
  const Str x = xr.to_str();
  const int n = static_cast<int>(x.size()), free = std::min(n, k);
  const int big = INT_MAX / 4;
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(n + 1, big));
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      int& v = d[a][b];
      if (b == 0 && a <= free) {
        v = 0;
        continue;
      }
      if (a > 0) v = std::min(v, d[a - 1][b] + 1);
      if (b > 0) v = std::min(v, d[a][b - 1] + 1);
      if (a > 0 && b > 0 && a != b) v = std::min(v, d[a - 1][b - 1] + (x[a - 1] != x[b - 1]));
    }
  int by = -1;
  for (int b = n; b >= std::max(0, n - k); --b)
    if (by < 0 || d[n][b] < d[n][by]) by = b;
  if (d[n][by] > k) return std::nullopt;
  LvResult res;
  res.value = d[n][by];
  Breakpoints rv{{n, by}};
  int a = n, b = by;
  while (!(b == 0 && a <= free)) {
    const int v = d[a][b];
    const bool diag = a > 0 && b > 0 && a != b;
    if (diag && x[a - 1] == x[b - 1] && d[a - 1][b - 1] == v) {
      --a, --b;
      continue;
    }
    if (diag && d[a - 1][b - 1] + 1 == v) --a, --b;
    else if (a > 0 && d[a - 1][b] + 1 == v) --a;
    else --b;
    rv.push_back({a, b});
  }
  rv.push_back({a, b});
  std::reverse(rv.begin(), rv.end());
  for (const Vertex& v : rv)
    if (res.alignment.empty() || !(res.alignment.back() == v)) res.alignment.push_back(v);
  return res;
}

}  // namespace

std::optional<LvResult> sed_k(const FRope& x, int k) {
  if (k < 1) throw std::invalid_argument("sed_k: k must be positive");
  const int n = x.length();
  if (n < k) return sed_k_dense(x, k);
  // Paths stay on or below the main diagonal (x >= y), within 2k of it.
  Wave w(x, x, k, -std::min(2 * k, n), 0, false);
  for (int d = -std::min(n, k); d <= 0; ++d) w.start(d, -d);
  for (int e = 0; e <= k; ++e) {
    if (e > 0) w.advance(e);
    for (int d = 0; d >= -std::min(n, k); --d)
      if (w.reach[w.idx(e, d)] == n) return w.backtrack(e, d);
  }
  return std::nullopt;
}

std::optional<LvResult> sed_k(const Str& x, int k) { return sed_k(FRope(x), k); }

EditScript rope_script(const FRope& x, const FRope& y, const Breakpoints& bp) {
  EditScript s;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    Vertex a = bp[i], b = bp[i + 1];
    int dx = b.x - a.x, dy = b.y - a.y;
    if (dx < 0 || dy < 0 || std::abs(dx - dy) > 1 || (dx == 0 && dy == 0))
      throw std::invalid_argument("rope_script: not a breakpoint sequence");
    if (dx == dy) {
      Symbol c = y.access(a.y);
      if (x.access(a.x) != c) s.push_back({Op::Sub, a.x, c});
    } else if (dx > dy) {
      s.push_back({Op::Del, a.x, 0});
    } else {
      s.push_back({Op::Ins, a.x, y.access(a.y)});
    }
  }
  return s;
}

int smallest_period(const Str& s) {
  const int n = static_cast<int>(s.size());
  if (n == 0) return 0;
  std::vector<int> pi(n, 0);
  for (int i = 1; i < n; ++i) {
    int j = pi[i - 1];
    while (j > 0 && s[i] != s[j]) j = pi[j - 1];
    if (s[i] == s[j]) ++j;
    pi[i] = j;
  }
  return n - pi[n - 1];
}

}  // namespace wed
