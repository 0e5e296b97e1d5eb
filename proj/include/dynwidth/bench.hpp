#pragma once

// Benchmark harness: generated workloads timed per op on the engine, a
// sampled full-recompute baseline, total feature churn, and the fitted
// log-log slope of amortized time versus size.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "dynwidth/ints.hpp"

namespace dynwidth {

struct BenchRow {
  std::size_t n = 0;    // generator size parameter
  std::size_t ops = 0;  // trace length
  u64 engine_ns = 0;    // total engine time, I/O excluded
  u64 sum_k = 0;        // total features changed
  u64 naive_ns = 0;     // recompute-per-op baseline, extrapolated from samples
};

// One row per size, fastest engine time over `repeats` runs per size.
// Pre: sizes ascending.
std::vector<BenchRow> bench_run(const std::string& mode,
                                const std::vector<std::size_t>& sizes,
                                std::size_t repeats, double alpha, u64 seed);

// least-squares slope of log(engine_ns / ops) against log(n)
double loglog_slope(const std::vector<BenchRow>& rows);

// rows, then a trailing `slope,<fit>` line
void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);

}  // namespace dynwidth
