// SPDX-License-Identifier: Apache-2.0
#pragma once

// Line-oriented text workloads:
//
//   WED 1
//   N <n> K <k> DEN <den>
//   SIGMA <s>
//   W
//   <s+1 rows of s+1 integers, index s is the empty symbol>
//   X <len> <ids...>
//   Y <len> <ids...>
//   U X|Y SUB <pos> <id> | U X|Y INS <pos> <id> | U X|Y DEL <pos> | Q
//
// '#' starts a comment.  A "# seed <u64>" comment is kept and printed back.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wed/core.hpp"
#include "wed/session.hpp"

namespace wed {

struct Command {
  bool query = false;
  Side side = Side::X;
  Edit edit;
  int line = 0;
  bool operator==(const Command& o) const {
    return query == o.query && (query || (side == o.side && edit == o.edit));
  }
};

struct Workload {
  int n = 0, k = 1;
  WeightTable w;
  Str x, y;
  std::vector<Command> commands;
  std::optional<std::uint64_t> seed;
};

struct ParseError : std::runtime_error {
  int line;
  ParseError(int l, const std::string& m) : std::runtime_error("line " + std::to_string(l) + ": " + m), line(l) {}
};

Workload parse_workload(std::istream& in);
Workload parse_workload_string(const std::string& s);
std::string print_workload(const Workload& wl);
Workload load_workload(const std::string& path);  // throws ParseError (line 0 if unreadable)

// Random workload: X of length n, Y a few edits away, updates on both sides
// with a query after each update, answered with probability query_rate.
struct RandomWorkloadOptions {
  int n = 100, k = 8, sigma = 4;
  Weight den = 2;
  int updates = 200;
  double query_rate = 1.0;
};
Workload gen_random_workload(const RandomWorkloadOptions& o, std::uint64_t seed);

struct Answer {
  Weight value = INF;
  std::optional<Breakpoints> alignment;
};

struct InvalidUpdate : std::runtime_error {
  int line;
  InvalidUpdate(int l, const std::string& m) : std::runtime_error("line " + std::to_string(l) + ": " + m), line(l) {}
};

// Replays the workload through a session; one answer per Q.
std::vector<Answer> run_workload(const Workload& wl, bool alignments, SessionOptions opt = {});
std::string format_answer(const Answer& a, bool alignments);

struct VerifyResult {
  bool ok = true;
  int command = -1, line = 0;  // first divergence
  Weight session = INF, oracle = INF;
  long long checks = 0;
};
struct GuardExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Compares the session against ed_bounded after every command.  tamper, when
// set, rewrites session answers before comparison (mutation testing).
VerifyResult verify_workload(const Workload& wl, std::uint64_t max_cells, Weight (*tamper)(Weight, int) = nullptr);

}  // namespace wed
