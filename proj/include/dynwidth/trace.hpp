#pragma once

// Trace file format, deterministic workload generators, and the replay
// runners behind the CLI.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "dynwidth/ints.hpp"

namespace dynwidth {

struct TraceOp {
  bool insert = true;
  u64 id = 0;
  i64 x = 0;  // meaningful for inserts only
  i64 y = 0;

  friend bool operator==(const TraceOp&, const TraceOp&) = default;
};

// Lines: `I <id> <x> <y>`, `D <id>`, blank, or `#` comment to end of line.
// Throws ParseError (with its 1-based line number) on malformed input or a
// coordinate outside the 2^30 bound.
std::vector<TraceOp> parse_trace(std::istream& in);
std::vector<TraceOp> parse_trace_file(const std::string& path);
std::string print_trace(const std::vector<TraceOp>& ops);

// Pure function of (mode, n, seed). Modes: incremental (n random inserts in
// a disk), decremental (n inserts then the same ids deleted in shuffled
// order), mixed (2n ops, uniform-random deletions, live count capped at n),
// churn (near-cocircular base set plus slightly-outside insert/delete pairs
// that each rewrite a whole hull arc). Throws Error on an unknown mode or
// n < 1.
std::vector<TraceOp> gen_trace(const std::string& mode, std::size_t n,
                               u64 seed);

// Replays ops on one engine, one CSV row per op. The time_ns column is kept
// at 0 so a replay is byte-identical; real timing lives in the bench
// harness. Returns 0, or 3 after reporting a duplicate/unknown id to err.
int run_trace(const std::vector<TraceOp>& ops, std::ostream& csv,
              std::ostream& err, double alpha);

// Replays ops, comparing the engine's squared width to the calipers oracle
// after every op. Returns 0 iff all match, 4 at the first mismatch (op index
// and both values reported to err), 3 on a semantic error. fault_inject
// corrupts the engine-reported value at op floor(N/2) to prove the
// comparison bites.
int verify_trace(const std::vector<TraceOp>& ops, std::ostream& err,
                 double alpha, bool fault_inject);

}  // namespace dynwidth
