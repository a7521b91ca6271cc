// SPDX-License-Identifier: Apache-2.0
#include "wed/hardgen.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "wed/dp_oracle.hpp"

namespace wed {

namespace {

using Rng = std::mt19937_64;

int uni(Rng& r, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(r); }

Str cat(std::initializer_list<const Str*> parts) {
  Str out;
  for (const Str* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

Str wrap(Symbol c, const Str& s) {
  Str out{c};
  out.insert(out.end(), s.begin(), s.end());
  out.push_back(c);
  return out;
}

int hamming(const Str& a, const Str& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

Edit rand_edit(Rng& rng, int n, int sigma) {
  int op = n == 0 ? 0 : uni(rng, 0, 2);
  if (op == 0) return {Op::Ins, uni(rng, 0, n), uni(rng, 0, sigma - 1)};
  if (op == 1) return {Op::Del, uni(rng, 0, n - 1), 0};
  return {Op::Sub, uni(rng, 0, n - 1), uni(rng, 0, sigma - 1)};
}

}  // namespace

BatchedInstance gen_batched(int m, int x, int y, int h, std::uint64_t seed, const BatchedOptions& opt) {
  if (m < 1 || h < 1 || 2 * h > x || x > y) throw std::invalid_argument("gen_batched: need m >= 1, h >= 1 and 2h <= x <= y");
  if (opt.sigma_x < 1 || opt.sigma_y < 1 || opt.den < 1) throw std::invalid_argument("gen_batched: bad alphabet or DEN");
  if (opt.plant && (*opt.plant < 1 || *opt.plant > m)) throw std::invalid_argument("gen_batched: plant index out of range");
  Rng rng(seed);
  BatchedInstance b;
  b.h = h;
  b.sigma_x = opt.sigma_x;
  b.sigma_y = opt.sigma_y;
  const int sigma = opt.sigma_x + opt.sigma_y;
  const Weight den = opt.den;
  b.w = WeightTable(sigma, den);
  std::uniform_int_distribution<Weight> sub(den, 2 * den);
  for (int a = 0; a < sigma; ++a)
    for (int c = a + 1; c < sigma; ++c) b.w.at(a, c) = b.w.at(c, a) = sub(rng);
  for (int a = 0; a < sigma; ++a) {
    Weight indel = a < opt.sigma_x ? den : 2 * den;
    b.w.at(a, sigma) = b.w.at(sigma, a) = indel;
  }
  b.y.resize(y);
  for (auto& c : b.y) c = opt.sigma_x + uni(rng, 0, opt.sigma_y - 1);
  Str cur(x);
  for (auto& c : cur) c = uni(rng, 0, opt.sigma_x - 1);
  b.xs.push_back(cur);
  for (int i = 1; i < m; ++i) {
    std::vector<int> pos(x);
    for (int j = 0; j < x; ++j) pos[j] = j;
    std::shuffle(pos.begin(), pos.end(), rng);
    for (int t = uni(rng, 0, h); t > 0; --t) cur[pos[t - 1]] = uni(rng, 0, opt.sigma_x - 1);
    b.xs.push_back(cur);
  }
  b.k = static_cast<Weight>(2 * y - x) * den + uni(rng, 0, static_cast<int>(den) - 1);
  if (opt.plant) {
    const Str& xi = b.xs[*opt.plant - 1];
    for (int j = 0; j < x; ++j) b.w.at(xi[j], b.y[j]) = b.w.at(b.y[j], xi[j]) = den;
  }
  return b;
}

std::string validate_batched(const BatchedInstance& b) {
  const int sx = b.sigma_x, sy = b.sigma_y, sigma = sx + sy;
  const Weight den = b.w.den();
  if (b.xs.empty()) return "no X strings";
  if (b.w.sigma() != sigma) return "weight table does not cover both alphabets";
  const int x = b.x(), y = b.ylen();
  for (const Str& s : b.xs) {
    if (static_cast<int>(s.size()) != x) return "X strings differ in length";
    for (Symbol c : s)
      if (c < 0 || c >= sx) return "X symbol outside Sigma_X";
  }
  for (Symbol c : b.y)
    if (c < sx || c >= sigma) return "Y symbol outside Sigma_Y";
  if (x > y) return "x > y";
  if (b.h < 1 || 2 * b.h > x) return "need 1 <= h and 2h <= x";
  for (int i = 0; i + 1 < b.m(); ++i)
    if (hamming(b.xs[i], b.xs[i + 1]) > b.h) return "consecutive X strings differ in more than h positions";
  for (int a = 0; a <= sigma; ++a)
    for (int c = 0; c <= sigma; ++c) {
      if (b.w(a, c) != b.w(c, a)) return "weights not symmetric";
      if (a == c) {
        if (b.w(a, c) != 0) return "nonzero diagonal";
      } else if (a < sigma && c < sigma) {
        if (b.w(a, c) < den || b.w(a, c) > 2 * den) return "substitution weight outside [DEN, 2 DEN]";
      }
    }
  for (int a = 0; a < sigma; ++a)
    if (b.w.del(a) != (a < sx ? den : 2 * den)) return "indel weight of a symbol is wrong";
  if (b.k < (2 * y - x) * den || b.k >= (2 * y - x + 1) * den) return "threshold outside [2y - x, 2y - x + 1)";
  return {};
}

HardParams hard_params(int m, int x, int y, int h, Weight k, Weight den) {
  HardParams p;
  p.r = (m - 1) * (8 * h + 8) + 2 * x + static_cast<int>(k / den) + 6 * h + 7;
  p.k_hat = static_cast<Weight>((m - 1) * (8 * h + 8) + 2 * p.r + 2 * x + 6 * h + 6) * den + k;
  p.k_tilde = p.k_hat + static_cast<Weight>(6 * p.r + 3 * x + 6 * y + 2) * den;
  return p;
}

HardPair lift(const BatchedInstance& b) {
  if (std::string e = validate_batched(b); !e.empty()) throw std::invalid_argument("lift: " + e);
  const int m = b.m(), x = b.x(), y = b.ylen(), h = b.h;
  const Weight den = b.w.den();
  const HardParams par = hard_params(m, x, y, h, b.k, den);
  HardPair hp;
  hp.r = par.r;
  const int r = hp.r, base = b.sigma_x + b.sigma_y;
  hp.u0 = base;
  hp.v0 = base + r;
  hp.diamond = base + 2 * r;
  hp.bot = hp.diamond + 1;
  hp.top = hp.diamond + 2;
  hp.dollar = hp.diamond + 3;
  hp.sigma = base + 2 * r + 4;

  // H_i for i in [1, m), empty elsewhere; F_i for i in [-1, m].
  auto H = [&](int i) {
    std::vector<int> out;
    if (i < 1 || i >= m) return out;
    for (int j = 0; j < x; ++j)
      if (b.xs[i - 1][j] != b.xs[i][j]) out.push_back(j);
    return out;
  };
  for (int i = -1; i <= m; ++i) {
    std::vector<char> in(x, 0);
    for (int j : H(i)) in[j] = 1;
    for (int j : H(i + 1)) in[j] = 1;
    int cnt = static_cast<int>(std::count(in.begin(), in.end(), 1));
    for (int j = 0; j < x && cnt < 2 * h; ++j)
      if (!in[j]) in[j] = 1, ++cnt;
    std::vector<int> f;
    for (int j = 0; j < x; ++j)
      if (in[j]) f.push_back(j);
    hp.f.push_back(std::move(f));
  }
  auto F = [&](int i) -> const std::vector<int>& { return hp.f[i + 1]; };
  auto X = [&](int i) -> const Str& { return b.xs[std::max(i, 1) - 1]; };  // X_0 = X_1
  for (int i = 0; i <= m; ++i) {
    Str t = X(i), s = X(i);
    for (int j : F(i - 1)) t[j] = hp.top;
    for (int j : F(i)) s[j] = hp.bot;
    hp.xtop.push_back(std::move(t));
    hp.xbot.push_back(std::move(s));
  }
  hp.u.resize(r);
  hp.v.resize(r);
  for (int j = 0; j < r; ++j) hp.u[j] = hp.u0 + j, hp.v[j] = hp.v0 + j;
  const Str dy = wrap(hp.diamond, b.y);
  const Str &U = hp.u, &V = hp.v, &Y = b.y;

  hp.xp = cat({&U, &hp.xtop[0], &V, &dy, &U, &hp.xbot[0], &V, &Y});
  for (int i = 1; i <= m; ++i) {
    const Str dx = wrap(hp.diamond, X(i));
    Str blk = cat({&U, &dx, &V, &Y, &U, &hp.xtop[i], &V, &dy, &U, &hp.xbot[i], &V, &Y});
    hp.xh.insert(hp.xh.end(), blk.begin(), blk.end());
    Str yb = cat({&U, &hp.xtop[i - 1], &V, &dy, &U, &hp.xbot[i - 1], &V, &Y, &U, &dx, &V, &Y});
    hp.yh.insert(hp.yh.end(), yb.begin(), yb.end());
  }
  Str tail = cat({&U, &hp.xtop[m], &V, &dy});
  hp.yh.insert(hp.yh.end(), tail.begin(), tail.end());
  hp.ys = cat({&U, &hp.xbot[m], &V, &Y});
  const Str dol{hp.dollar};
  hp.x_tilde = cat({&hp.xp, &dol, &hp.xh, &dol});
  hp.y_tilde = cat({&dol, &hp.yh, &dol, &hp.ys});

  hp.k_hat = par.k_hat;
  hp.k_tilde = par.k_tilde;
  hp.sent = ((hp.k_tilde + den - 1) / den + 1) * den;

  hp.w = WeightTable(hp.sigma, den);
  const int eps = hp.sigma, beps = b.w.sigma();
  auto in_base = [&](int a) { return a < base || a == eps; };
  auto gadget = [&](int a) { return a == hp.diamond || a == hp.bot || a == hp.top; };
  for (int a = 0; a <= eps; ++a)
    for (int c = 0; c <= eps; ++c) {
      Weight v;
      if (a == c) v = 0;
      else if (in_base(a) && in_base(c)) v = b.w(a == eps ? beps : a, c == eps ? beps : c);
      else if (gadget(a) && gadget(c)) v = 2 * den;
      else if (a == hp.dollar || c == hp.dollar) v = hp.sent;
      else v = den;
      hp.w.at(a, c) = v;
    }
  return hp;
}

SmallReport verify_small(const HardPair& hp, const BatchedInstance& b, int max_len) {
  if (static_cast<int>(hp.x_tilde.size()) > max_len || static_cast<int>(hp.y_tilde.size()) > max_len)
    throw std::invalid_argument("verify_small: instance too large for the quadratic program");
  SmallReport rep;
  const Weight den = b.w.den();
  const int m = b.m(), x = b.x(), y = b.ylen(), h = b.h, r = hp.r;
  rep.lifted = ed_full(hp.x_tilde, hp.y_tilde, hp.w);
  rep.batched = brute_min_batched(b.xs, b.y, b.w);
  rep.equivalent = (rep.lifted <= hp.k_tilde) == (rep.batched <= b.k);

  auto both = [&](const Str& s, const Str& t, Weight want) {
    return ed_full(s, t, hp.w) == want && ed_full(t, s, hp.w) == want;
  };
  rep.gadgets = true;
  for (int i = 0; i <= m; ++i) rep.gadgets &= both(hp.xtop[i], hp.xbot[i], 4 * h * den);
  for (int i = 1; i <= m; ++i) {
    rep.gadgets &= both(hp.xtop[i], hp.xbot[i - 1], 4 * h * den);
    const Str dx = wrap(hp.diamond, b.xs[i - 1]);
    for (const Str* z : {&hp.xtop[i], &hp.xbot[i], &hp.xtop[i - 1], &hp.xbot[i - 1]})
      rep.gadgets &= both(dx, *z, (2 * h + 2) * den);
  }

  // With the $-cells above the cost of any $-free alignment they act as
  // infinite on these strings.
  WeightTable wbig = hp.w;
  const Weight big = 2 * den * static_cast<Weight>(hp.x_tilde.size() + hp.y_tilde.size()) + 1;
  for (int a = 0; a <= hp.sigma; ++a)
    if (a != hp.dollar) wbig.at(a, hp.dollar) = wbig.at(hp.dollar, a) = big;
  const Weight exact = ed_full(hp.x_tilde, hp.y_tilde, wbig);
  const Weight hat = ed_full(hp.xh, hp.yh, hp.w);
  const Weight off = static_cast<Weight>(6 * r + 3 * x + 6 * y + 2) * den;
  rep.offset = exact == hat + off && (rep.lifted <= hp.k_tilde) == (exact <= hp.k_tilde) &&
               (rep.lifted > hp.k_tilde || rep.lifted == exact);

  auto strip = [&](const Str& s) {
    Str o;
    for (Symbol c : s)
      if (c != hp.dollar) o.push_back(c);
    return o;
  };
  auto dollars = [&](const Str& s) { return std::count(s.begin(), s.end(), hp.dollar); };
  rep.witness = hp.x_tilde.size() == hp.y_tilde.size() && dollars(hp.x_tilde) == 2 && dollars(hp.y_tilde) == 2 &&
                strip(hp.x_tilde) == strip(hp.y_tilde);
  return rep;
}

DaggerStream gen_dagger_stream(const std::vector<Str>& xs, const std::vector<Str>& ys, const std::vector<int>& ks,
                               const WeightTable& w) {
  const int m = static_cast<int>(xs.size());
  if (m < 1 || ys.size() != xs.size() || ks.size() != xs.size()) throw std::invalid_argument("gen_dagger_stream: block counts differ");
  const int k_hat = *std::max_element(ks.begin(), ks.end());
  if (k_hat < 1) throw std::invalid_argument("gen_dagger_stream: thresholds must be positive");
  const int sigma = w.sigma(), dagger = sigma;
  const Weight den = w.den();
  WeightTable wd(sigma + 1, den);
  const int eps = sigma + 1;
  for (int a = 0; a <= eps; ++a)
    for (int c = 0; c <= eps; ++c) {
      if (a == c) continue;
      if (a == dagger || c == dagger) wd.at(a, c) = static_cast<Weight>(k_hat + 1) * den;
      else wd.at(a, c) = w(a == eps ? sigma : a, c == eps ? sigma : c);
    }

  DaggerStream out;
  Workload& wl = out.workload;
  wl.k = k_hat;
  wl.w = wd;
  std::vector<EditScript> scripts;
  for (int i = 0; i < m; ++i) {
    for (Symbol c : xs[i])
      if (c < 0 || c >= sigma) throw std::invalid_argument("gen_dagger_stream: symbol out of range");
    EdResult u = ed_bounded_unit(xs[i], ys[i], 4, true);
    if (is_inf(u.value)) throw std::invalid_argument("gen_dagger_stream: block distance above 4");
    scripts.push_back(script_from_breakpoints(xs[i], ys[i], *u.alignment));
    wl.x.insert(wl.x.end(), xs[i].begin(), xs[i].end());
    wl.x.push_back(dagger);
    out.expected.push_back(ed_bounded(xs[i], ys[i], k_hat, wd, false).value);
  }
  wl.y = wl.x;
  wl.n = static_cast<int>(wl.x.size()) + 4;
  Str cur = wl.y;
  int off = 0;
  for (int i = 0; i < m; ++i) {
    std::vector<Edit> undo;
    for (auto it = scripts[i].rbegin(); it != scripts[i].rend(); ++it) {
      Edit e = *it;
      e.pos += off;
      Edit inv = e.op == Op::Ins ? Edit{Op::Del, e.pos, 0}
                 : e.op == Op::Del ? Edit{Op::Ins, e.pos, cur[e.pos]}
                                   : Edit{Op::Sub, e.pos, cur[e.pos]};
      cur = apply_edit(cur, e);
      undo.push_back(inv);
      wl.commands.push_back({false, Side::Y, e, 0});
    }
    wl.commands.push_back({true, Side::Y, {}, 0});
    for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
      cur = apply_edit(cur, *it);
      wl.commands.push_back({false, Side::Y, *it, 0});
    }
    off += static_cast<int>(xs[i].size()) + 1;
  }
  return out;
}

DaggerStream gen_dagger_random(int blocks, int len, int sigma, Weight den, int kmax, std::uint64_t seed) {
  if (blocks < 1 || len < 0 || sigma < 1 || den < 1 || kmax < 1) throw std::invalid_argument("gen_dagger_random: bad parameters");
  Rng rng(seed);
  WeightTable w(sigma, den);
  std::uniform_int_distribution<Weight> cell(den, 3 * den);
  for (int a = 0; a <= sigma; ++a)
    for (int c = 0; c <= sigma; ++c)
      if (a != c) w.at(a, c) = cell(rng);
  std::vector<Str> xs, ys;
  std::vector<int> ks;
  for (int i = 0; i < blocks; ++i) {
    Str s(uni(rng, std::max(len / 2, 0), len));
    for (auto& c : s) c = uni(rng, 0, sigma - 1);
    Str t = s;
    for (int e = uni(rng, 0, 4); e > 0; --e) t = apply_edit(t, rand_edit(rng, static_cast<int>(t.size()), sigma));
    xs.push_back(std::move(s));
    ys.push_back(std::move(t));
    ks.push_back(uni(rng, 1, kmax));
  }
  DaggerStream d = gen_dagger_stream(xs, ys, ks, w);
  d.workload.seed = seed;
  return d;
}

}  // namespace wed
