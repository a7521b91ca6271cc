// SPDX-License-Identifier: Apache-2.0
#include "wed/workload.hpp"

#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

#include "wed/dp_oracle.hpp"

namespace wed {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

template <class T>
T num(const std::string& s, int line, const char* what) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw ParseError(line, std::string("expected integer ") + what + ", got '" + s + "'");
  return v;
}

Str read_string(const std::vector<std::string>& t, int line, int sigma) {
  int len = num<int>(t.at(1), line, "length");
  if (len < 0 || static_cast<int>(t.size()) != len + 2) throw ParseError(line, "string length does not match symbol count");
  Str s(len);
  for (int i = 0; i < len; ++i) {
    s[i] = num<int>(t[i + 2], line, "symbol");
    if (s[i] < 0 || s[i] >= sigma) throw ParseError(line, "symbol out of range");
  }
  return s;
}

}  // namespace

Workload parse_workload(std::istream& in) {
  Workload wl;
  enum Stage { Magic, Params, Sigma, WHead, WRows, XLine, YLine, Cmds } st = Magic;
  int lineno = 0, sigma = 0, rows = 0, k = 0;
  Weight den = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) {
      auto c = tokens(line.substr(h + 1));
      if (c.size() == 2 && c[0] == "seed") wl.seed = num<std::uint64_t>(c[1], lineno, "seed");
      line.resize(h);
    }
    auto t = tokens(line);
    if (t.empty()) continue;
    switch (st) {
      case Magic:
        if (t.size() != 2 || t[0] != "WED" || t[1] != "1") throw ParseError(lineno, "expected header 'WED 1'");
        st = Params;
        break;
      case Params:
        if (t.size() != 6 || t[0] != "N" || t[2] != "K" || t[4] != "DEN") throw ParseError(lineno, "expected 'N <n> K <k> DEN <den>'");
        wl.n = num<int>(t[1], lineno, "n");
        k = num<int>(t[3], lineno, "k");
        den = num<Weight>(t[5], lineno, "den");
        if (wl.n < 0 || k < 1 || den < 1) throw ParseError(lineno, "need n >= 0, k >= 1, den >= 1");
        wl.k = k;
        st = Sigma;
        break;
      case Sigma:
        if (t.size() != 2 || t[0] != "SIGMA") throw ParseError(lineno, "expected 'SIGMA <s>'");
        sigma = num<int>(t[1], lineno, "sigma");
        if (sigma < 0) throw ParseError(lineno, "negative alphabet size");
        wl.w = WeightTable(sigma, den);
        st = WHead;
        break;
      case WHead:
        if (t.size() != 1 || t[0] != "W") throw ParseError(lineno, "expected 'W'");
        st = WRows;
        break;
      case WRows:
        if (static_cast<int>(t.size()) != sigma + 1) throw ParseError(lineno, "weight row must have SIGMA + 1 entries");
        for (int c = 0; c <= sigma; ++c) wl.w.at(rows, c) = num<Weight>(t[c], lineno, "weight");
        if (++rows == sigma + 1) {
          if (WeightCheck chk = validate_weights(wl.w); !chk.ok) throw ParseError(lineno, chk.message);
          st = XLine;
        }
        break;
      case XLine:
        if (t.size() < 2 || t[0] != "X") throw ParseError(lineno, "expected 'X <len> <ids...>'");
        wl.x = read_string(t, lineno, sigma);
        st = YLine;
        break;
      case YLine:
        if (t.size() < 2 || t[0] != "Y") throw ParseError(lineno, "expected 'Y <len> <ids...>'");
        wl.y = read_string(t, lineno, sigma);
        st = Cmds;
        break;
      case Cmds: {
        Command c;
        c.line = lineno;
        if (t.size() == 1 && t[0] == "Q") {
          c.query = true;
        } else {
          if (t.size() < 4 || t[0] != "U" || (t[1] != "X" && t[1] != "Y")) throw ParseError(lineno, "expected 'U X|Y <op> ...' or 'Q'");
          c.side = t[1] == "X" ? Side::X : Side::Y;
          c.edit.pos = num<int>(t[3], lineno, "position");
          if (t[2] == "DEL" && t.size() == 4) {
            c.edit.op = Op::Del;
          } else if ((t[2] == "SUB" || t[2] == "INS") && t.size() == 5) {
            c.edit.op = t[2] == "SUB" ? Op::Sub : Op::Ins;
            c.edit.sym = num<int>(t[4], lineno, "symbol");
            if (c.edit.sym < 0 || c.edit.sym >= sigma) throw ParseError(lineno, "symbol out of range");
          } else {
            throw ParseError(lineno, "unknown update '" + t[2] + "'");
          }
        }
        wl.commands.push_back(c);
        break;
      }
    }
  }
  if (st != Cmds) throw ParseError(lineno, "unexpected end of file");
  return wl;
}

Workload parse_workload_string(const std::string& s) {
  std::istringstream in(s);
  return parse_workload(in);
}

Workload load_workload(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  return parse_workload(in);
}

std::string print_workload(const Workload& wl) {
  std::ostringstream o;
  o << "WED 1\n";
  if (wl.seed) o << "# seed " << *wl.seed << "\n";
  o << "N " << wl.n << " K " << wl.k << " DEN " << wl.w.den() << "\n";
  o << "SIGMA " << wl.w.sigma() << "\nW\n";
  for (int a = 0; a < wl.w.dim(); ++a)
    for (int c = 0; c < wl.w.dim(); ++c) o << wl.w(a, c) << (c + 1 == wl.w.dim() ? '\n' : ' ');
  auto str = [&](char tag, const Str& s) {
    o << tag << ' ' << s.size();
    for (Symbol c : s) o << ' ' << c;
    o << '\n';
  };
  str('X', wl.x);
  str('Y', wl.y);
  for (const Command& c : wl.commands) {
    if (c.query) {
      o << "Q\n";
      continue;
    }
    o << "U " << (c.side == Side::X ? 'X' : 'Y') << ' ';
    switch (c.edit.op) {
      case Op::Sub: o << "SUB " << c.edit.pos << ' ' << c.edit.sym; break;
      case Op::Ins: o << "INS " << c.edit.pos << ' ' << c.edit.sym; break;
      case Op::Del: o << "DEL " << c.edit.pos; break;
    }
    o << '\n';
  }
  return o.str();
}

Workload gen_random_workload(const RandomWorkloadOptions& o, std::uint64_t seed) {
  if (o.n < 0 || o.k < 1 || o.sigma < 1 || o.den < 1 || o.updates < 0) throw std::invalid_argument("random workload: bad parameters");
  std::mt19937_64 rng(seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto rand_edit = [&](int n) {
    int op = n == 0 ? 0 : uni(0, 2);
    if (op == 0) return Edit{Op::Ins, uni(0, n), uni(0, o.sigma - 1)};
    if (op == 1) return Edit{Op::Del, uni(0, n - 1), 0};
    return Edit{Op::Sub, uni(0, n - 1), uni(0, o.sigma - 1)};
  };
  Workload wl;
  wl.seed = seed;
  wl.k = o.k;
  wl.w = WeightTable(o.sigma, o.den);
  std::uniform_int_distribution<Weight> cell(o.den, 3 * o.den);
  for (int a = 0; a <= o.sigma; ++a)
    for (int c = 0; c <= o.sigma; ++c)
      if (a != c) wl.w.at(a, c) = cell(rng);
  wl.x.resize(o.n);
  for (auto& c : wl.x) c = uni(0, o.sigma - 1);
  wl.y = wl.x;
  for (int e = uni(0, o.k); e > 0; --e) wl.y = apply_edit(wl.y, rand_edit(static_cast<int>(wl.y.size())));
  Str x = wl.x, y = wl.y;
  std::bernoulli_distribution ask(o.query_rate);
  auto push = [&](Side s, const Edit& e) {
    wl.commands.push_back({false, s, e, 0});
    Str& t = s == Side::X ? x : y;
    t = apply_edit(t, e);
  };
  int longest = o.n;
  for (int u = 0; u < o.updates; ++u) {
    if (is_inf(ed_bounded(x, y, o.k, wl.w, false).value)) {
      // pull Y back towards X
      int cap = o.k + 3;
      EdResult r = ed_bounded_unit(y, x, cap, true);
      if (is_inf(r.value)) r = ed_bounded_unit(y, x, static_cast<long long>(x.size() + y.size()) + 1, true);
      push(Side::Y, script_from_breakpoints(y, x, *r.alignment).front());
    } else {
      int c = uni(0, 3);
      if (c == 0) {
        push(Side::X, rand_edit(static_cast<int>(x.size())));
      } else if (c == 1) {
        push(Side::Y, rand_edit(static_cast<int>(y.size())));
      } else {
        // the same edit on both sides (positions clamped into Y)
        Edit e = rand_edit(static_cast<int>(x.size()));
        Edit f = e;
        int ny = static_cast<int>(y.size());
        if (f.op != Op::Ins && ny == 0) f = {Op::Ins, 0, e.sym};
        f.pos = std::min(f.pos, f.op == Op::Ins ? ny : ny - 1);
        push(Side::X, e);
        push(Side::Y, f);
      }
    }
    longest = std::max({longest, static_cast<int>(x.size()), static_cast<int>(y.size())});
    if (ask(rng)) wl.commands.push_back({true, Side::X, {}, 0});
  }
  wl.n = longest;
  return wl;
}

std::vector<Answer> run_workload(const Workload& wl, bool alignments, SessionOptions opt) {
  Session s(wl.x, wl.y, wl.k, wl.w, opt);
  std::vector<Answer> out;
  for (const Command& c : wl.commands) {
    if (c.query) {
      Answer a{s.report(), std::nullopt};
      if (alignments) a.alignment = s.alignment();
      out.push_back(std::move(a));
      continue;
    }
    try {
      s.apply(c.side, c.edit);
    } catch (const std::out_of_range& e) {
      throw InvalidUpdate(c.line, e.what());
    } catch (const std::invalid_argument& e) {
      throw InvalidUpdate(c.line, e.what());
    }
  }
  return out;
}

std::string format_answer(const Answer& a, bool alignments) {
  std::string s = is_inf(a.value) ? "D INF" : "D " + std::to_string(a.value);
  if (alignments && a.alignment) {
    s += "\nA";
    for (const Vertex& v : *a.alignment) s += " " + std::to_string(v.x) + " " + std::to_string(v.y);
  }
  return s;
}

VerifyResult verify_workload(const Workload& wl, std::uint64_t max_cells, Weight (*tamper)(Weight, int)) {
  auto guard = [&](const Str& x, const Str& y) {
    if (static_cast<std::uint64_t>(x.size() + 1) * (y.size() + 1) > max_cells) throw GuardExceeded("instance exceeds the verification guard");
  };
  Str x = wl.x, y = wl.y;
  guard(x, y);
  Session s(x, y, wl.k, wl.w);
  const WeightTable capped = cap_weights(wl.w, wl.k);
  VerifyResult res;
  auto check = [&](int idx, int line) {
    Weight got = s.report();
    if (tamper) got = tamper(got, idx);
    Weight want = ed_bounded(x, y, wl.k, wl.w, false).value;
    ++res.checks;
    bool good = got == want;
    if (good && !is_inf(got)) {
      auto a = s.alignment();
      good = a && alignment_cost(x, y, *a, capped) == got;
    }
    if (!good && res.ok) {
      res.ok = false;
      res.command = idx;
      res.line = line;
      res.session = got;
      res.oracle = want;
    }
    return good;
  };
  if (!check(-1, 0)) return res;
  for (int i = 0; i < static_cast<int>(wl.commands.size()); ++i) {
    const Command& c = wl.commands[i];
    if (!c.query) {
      Str& t = c.side == Side::X ? x : y;
      try {
        t = apply_edit(t, c.edit);
        s.apply(c.side, c.edit);
      } catch (const std::out_of_range& e) {
        throw InvalidUpdate(c.line, e.what());
      } catch (const std::invalid_argument& e) {
        throw InvalidUpdate(c.line, e.what());
      }
      guard(x, y);
    }
    if (!check(i, c.line)) return res;
  }
  return res;
}

}  // namespace wed
