#include "dynwidth/bench.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "dynwidth/engine.hpp"
#include "dynwidth/oracle.hpp"
#include "dynwidth/trace.hpp"

namespace dynwidth {

namespace {

using Clock = std::chrono::steady_clock;

u64 ns_since(Clock::time_point t0) {
  return u64(std::chrono::duration_cast<std::chrono::nanoseconds>(
                 Clock::now() - t0)
                 .count());
}

BenchRow run_one(const std::string& mode, std::size_t n, double alpha,
                 u64 seed) {
  std::vector<TraceOp> ops = gen_trace(mode, n, seed);
  WidthEngine eng(alpha);
  BenchRow row;
  row.n = n;
  row.ops = ops.size();
  std::size_t stride = std::max<std::size_t>(1, ops.size() / 256);
  u64 naive_sampled = 0;
  std::size_t samples = 0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const TraceOp& op = ops[i];
    Clock::time_point t0 = Clock::now();
    WidthReport r = op.insert ? eng.insert(op.id, Point{op.x, op.y})
                              : eng.erase(op.id);
    row.engine_ns += ns_since(t0);
    row.sum_k += r.k;
    if (i % stride == 0) {
      // what a recompute-per-op client would pay for this state
      t0 = Clock::now();
      std::vector<Point> pts = eng.live_points();
      volatile int sink = cmp_sqdist(oracle::calipers_width(pts).width_sq,
                                     SquaredDistance::zero());
      (void)sink;
      naive_sampled += ns_since(t0);
      ++samples;
    }
  }
  if (samples)
    row.naive_ns = u64(double(naive_sampled) / double(samples) *
                       double(ops.size()));
  return row;
}

}  // namespace

std::vector<BenchRow> bench_run(const std::string& mode,
                                const std::vector<std::size_t>& sizes,
                                std::size_t repeats, double alpha, u64 seed) {
  assert(std::is_sorted(sizes.begin(), sizes.end()));
  if (repeats < 1) repeats = 1;
  std::vector<BenchRow> rows;
  for (std::size_t n : sizes) {
    BenchRow best;
    for (std::size_t rep = 0; rep < repeats; ++rep) {
      u64 s = seed + 1099511628211ull * rep + 1000003ull * n;
      BenchRow r = run_one(mode, n, alpha, s);
      if (rep == 0 || r.engine_ns < best.engine_ns) best = r;
    }
    rows.push_back(best);
  }
  return rows;
}

double loglog_slope(const std::vector<BenchRow>& rows) {
  assert(rows.size() >= 2);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double cnt = double(rows.size());
  for (const BenchRow& r : rows) {
    double x = std::log(double(r.n));
    double amort = double(std::max<u64>(r.engine_ns, 1)) /
                   double(std::max<std::size_t>(r.ops, 1));
    double y = std::log(std::max(amort, 1e-3));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << "n,ops,engine_ns,amortized_ns,sum_k,naive_ns,speedup\n";
  for (const BenchRow& r : rows) {
    char amort[64], speed[64];
    std::snprintf(amort, sizeof amort, "%.2f",
                  double(r.engine_ns) / double(std::max<std::size_t>(r.ops, 1)));
    std::snprintf(speed, sizeof speed, "%.2f",
                  r.engine_ns ? double(r.naive_ns) / double(r.engine_ns) : 0.0);
    out << r.n << ',' << r.ops << ',' << r.engine_ns << ',' << amort << ','
        << r.sum_k << ',' << r.naive_ns << ',' << speed << "\n";
  }
  if (rows.size() >= 2) {
    char s[64];
    std::snprintf(s, sizeof s, "%.4f", loglog_slope(rows));
    out << "slope," << s << "\n";
  }
}

}  // namespace dynwidth
