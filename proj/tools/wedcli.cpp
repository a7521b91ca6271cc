// SPDX-License-Identifier: Apache-2.0
// wedcli: run, verify, generate and benchmark workloads.
//
// Exit codes: 0 ok, 1 verification divergence, 2 parse error, 3 invalid
// update or infeasible parameters, 4 verification guard exceeded.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wed/hardgen.hpp"
#include "wed/session.hpp"
#include "wed/workload.hpp"

using namespace wed;

namespace {

int cmd_run(const std::string& path, bool alignments) {
  Workload wl = load_workload(path);
  for (const Answer& a : run_workload(wl, alignments)) std::cout << format_answer(a, alignments) << '\n';
  return 0;
}

int cmd_verify(const std::string& path, std::uint64_t max_cells) {
  Workload wl = load_workload(path);
  VerifyResult r = verify_workload(wl, max_cells);
  if (r.ok) {
    std::cout << "OK " << r.checks << " checks\n";
    return 0;
  }
  auto show = [](Weight v) { return is_inf(v) ? std::string("INF") : std::to_string(v); };
  std::cout << "DIVERGE command " << r.command << " line " << r.line << " session " << show(r.session) << " oracle "
            << show(r.oracle) << '\n';
  return 1;
}

struct GenParams {
  std::string kind, out, sidecar;
  std::uint64_t seed = 1;
  RandomWorkloadOptions random;
  int m = 2, x = 4, y = 5, h = 1, plant = 0, sigma_x = 3, sigma_y = 3;
  int blocks = 4, len = 16, kmax = 8;
};

int cmd_gen(const GenParams& p) {
  Workload wl;
  nlohmann::json side = {{"kind", p.kind}, {"seed", p.seed}};
  if (p.kind == "random") {
    wl = gen_random_workload(p.random, p.seed);
    side["n"] = p.random.n;
    side["k"] = p.random.k;
  } else if (p.kind == "hard") {
    BatchedOptions o;
    o.sigma_x = p.sigma_x;
    o.sigma_y = p.sigma_y;
    o.den = p.random.den;
    if (p.plant > 0) o.plant = p.plant;
    BatchedInstance b = gen_batched(p.m, p.x, p.y, p.h, p.seed, o);
    HardPair hp = lift(b);
    wl.seed = p.seed;
    wl.w = hp.w;
    wl.x = hp.x_tilde;
    wl.y = hp.y_tilde;
    wl.n = static_cast<int>(wl.x.size());
    wl.k = static_cast<int>((hp.k_tilde + o.den - 1) / o.den);
    wl.commands.push_back({true, Side::X, {}, 0});
    side.update({{"m", p.m}, {"x", p.x}, {"y", p.y}, {"h", p.h}, {"r", hp.r}, {"den", o.den},
                 {"k", b.k}, {"k_hat", hp.k_hat}, {"k_tilde", hp.k_tilde}});
  } else if (p.kind == "dagger") {
    DaggerStream d = gen_dagger_random(p.blocks, p.len, p.random.sigma, p.random.den, p.kmax, p.seed);
    wl = d.workload;
    nlohmann::json exp = nlohmann::json::array();
    for (Weight v : d.expected) exp.push_back(is_inf(v) ? nlohmann::json("INF") : nlohmann::json(v));
    side.update({{"blocks", p.blocks}, {"len", p.len}, {"k_hat", wl.k}, {"expected", exp}});
  }
  wl.seed = p.seed;
  const std::string text = print_workload(wl);
  if (p.out.empty() || p.out == "-") {
    std::cout << text;
  } else {
    std::ofstream(p.out) << text;
  }
  std::string sc = p.sidecar;
  if (sc.empty() && !p.out.empty() && p.out != "-" && p.kind != "random") sc = p.out + ".json";
  if (!sc.empty()) std::ofstream(sc) << side.dump(2) << '\n';
  return 0;
}

long long median(std::vector<long long> v) {
  if (v.empty()) return 0;
  std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
  return v[v.size() / 2];
}

int cmd_bench(const std::string& path, int reps, const std::string& csv) {
  Workload wl = load_workload(path);
  using clk = std::chrono::steady_clock;
  auto ns = [](clk::time_point a, clk::time_point b) {
    return static_cast<long long>(std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count());
  };
  std::map<std::pair<std::string, std::string>, std::vector<long long>> samples;
  SessionOptions opt;
  opt.seed = wl.seed.value_or(1);
  for (int r = 0; r < std::max(reps, 1); ++r) {
    auto t0 = clk::now();
    Session s(wl.x, wl.y, wl.k, wl.w, opt);
    samples[{"init", "session_new"}].push_back(ns(t0, clk::now()));
    for (const Command& c : wl.commands) {
      auto t = clk::now();
      if (c.query) {
        s.report();
        samples[{"query", "report"}].push_back(ns(t, clk::now()));
      } else {
        try {
          s.apply(c.side, c.edit);
        } catch (const std::exception& e) {
          throw InvalidUpdate(c.line, e.what());
        }
        samples[{"edit", c.side == Side::X ? "update_x" : "update_y"}].push_back(ns(t, clk::now()));
      }
    }
  }
  std::ostringstream o;
  o << "phase,n,k,op,median_ns\n";
  for (const char* ph : {"init", "edit", "query"})
    for (auto& [key, v] : samples)
      if (key.first == ph) o << ph << ',' << wl.x.size() << ',' << wl.k << ',' << key.second << ',' << median(v) << '\n';
  if (csv.empty()) std::cout << o.str();
  else std::ofstream(csv) << o.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic bounded weighted edit distance workloads"};
  app.require_subcommand(1);

  std::string path, csv;
  bool alignments = false;
  std::uint64_t max_cells = 50'000'000, seed = 1;
  int reps = 3;
  GenParams gp;

  auto* run = app.add_subcommand("run", "Replay a workload and print one answer per Q");
  run->add_option("workload", path, "Workload file")->required();
  run->add_flag("-a", alignments, "Print a breakpoint line after each finite answer");

  auto* ver = app.add_subcommand("verify", "Compare the session with the quadratic oracle after every command");
  ver->add_option("workload", path, "Workload file")->required();
  ver->add_option("--max-verify-cells", max_cells, "Largest (|X|+1)(|Y|+1) the oracle may face");

  auto* gen = app.add_subcommand("gen", "Generate a workload");
  gen->add_option("kind", gp.kind, "random, hard or dagger")->required()->check(CLI::IsMember({"random", "hard", "dagger"}));
  gen->add_option("--seed", seed, "64-bit seed");
  gen->add_option("-o,--out", gp.out, "Output path (standard output by default)");
  gen->add_option("--sidecar", gp.sidecar, "JSON parameter file (default <out>.json for hard and dagger)");
  gen->add_option("--n", gp.random.n, "random: length of X");
  gen->add_option("--k", gp.random.k, "random: threshold");
  gen->add_option("--sigma", gp.random.sigma, "random, dagger: alphabet size");
  gen->add_option("--den", gp.random.den, "weight denominator");
  gen->add_option("--updates", gp.random.updates, "random: number of updates");
  gen->add_option("--query-rate", gp.random.query_rate, "random: probability of a query after an update");
  gen->add_option("--m", gp.m, "hard: number of X strings");
  gen->add_option("--x", gp.x, "hard: length of the X strings");
  gen->add_option("--y", gp.y, "hard: length of Y");
  gen->add_option("--hd", gp.h, "hard: Hamming bound between consecutive X strings");
  gen->add_option("--plant", gp.plant, "hard: force a YES at this index (1-based)");
  gen->add_option("--sigma-x", gp.sigma_x, "hard: size of the X alphabet");
  gen->add_option("--sigma-y", gp.sigma_y, "hard: size of the Y alphabet");
  gen->add_option("--blocks", gp.blocks, "dagger: number of blocks");
  gen->add_option("--len", gp.len, "dagger: block length");
  gen->add_option("--kmax", gp.kmax, "dagger: largest per-block threshold");

  auto* bench = app.add_subcommand("bench", "Time init, edits and queries; CSV of medians");
  bench->add_option("workload", path, "Workload file")->required();
  bench->add_option("--reps", reps, "Repetitions");
  bench->add_option("--csv", csv, "Write the CSV here instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  gp.seed = seed;

  try {
    if (*run) return cmd_run(path, alignments);
    if (*ver) return cmd_verify(path, max_cells);
    if (*gen) return cmd_gen(gp);
    if (*bench) return cmd_bench(path, reps, csv);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidUpdate& e) {
    std::cerr << "invalid update: " << e.what() << '\n';
    return 3;
  } catch (const GuardExceeded& e) {
    std::cerr << "guard: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
