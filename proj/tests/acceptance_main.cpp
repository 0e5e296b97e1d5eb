// Acceptance gate. Each criterion prints exactly one PASS/FAIL line; the
// process exits with the number of failed criteria. Tolerances and workload
// parameters are pinned here, not configurable.

#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dynwidth/bench.hpp"
#include "dynwidth/engine.hpp"
#include "dynwidth/envelope.hpp"
#include "dynwidth/errors.hpp"
#include "dynwidth/oracle.hpp"
#include "dynwidth/trace.hpp"
#include "test_util.hpp"

using namespace dynwidth;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// C1: replayed generated traces match the calipers oracle after every op
std::string c1() {
  auto t0 = Clock::now();
  const char* modes[] = {"incremental", "decremental", "mixed", "churn"};
  for (int mi = 0; mi < 4; ++mi)
    for (u64 seed = 1; seed <= 100; ++seed) {
      std::size_t n = 1 + std::size_t(mix64(seed * 7919 + u64(mi)) % 512);
      auto ops = gen_trace(modes[mi], n, seed);
      if (ops.size() > 4096)
        return std::string(modes[mi]) + " n=" + std::to_string(n) +
               " produced " + std::to_string(ops.size()) + " ops";
      std::ostringstream err;
      if (verify_trace(ops, err, 0.25, false) != 0)
        return std::string(modes[mi]) + " seed " + std::to_string(seed) +
               ": " + err.str();
    }
  double s = seconds_since(t0);
  if (s >= 300) return "took " + std::to_string(s) + "s, budget 300s";
  return "";
}

// C2: sweep oracle equals the definitional minimum, witnesses included
std::string c2() {
  std::mt19937_64 g(4242);
  for (int it = 0; it < 1000; ++it) {
    i64 r = it % 3 == 0 ? 9 : it % 3 == 1 ? 4000 : 1000000;
    auto pts = tu::random_points(g, 3 + tu::rnd_below(g, 126), r);
    auto cal = oracle::calipers_width(pts);
    if (oracle::convex_hull(pts).size() < 3) {
      if (cmp_sqdist(cal.width_sq, SquaredDistance::zero()) != 0 ||
          cal.witness)
        return "degenerate set got a nonzero width at case " +
               std::to_string(it);
      continue;
    }
    auto def = oracle::all_pairs_width(pts);
    if (cmp_sqdist(cal.width_sq, def.width_sq) != 0)
      return "width mismatch at case " + std::to_string(it) + ": " +
             cal.width_sq.str() + " vs " + def.width_sq.str();
    if (!cal.witness || !def.witness ||
        !(cal.witness->first == def.witness->first) ||
        !(cal.witness->second == def.witness->second))
      return "witness mismatch at case " + std::to_string(it);
  }
  return "";
}

// C3: each side supports 1..2 corners; each corner's compatible sides form
// one contiguous run of the cyclic normal order
std::string c3() {
  std::mt19937_64 g(777);
  for (int it = 0; it < 500; ++it) {
    std::vector<Point> poly;
    if (it % 4 == 0) {
      std::size_t k = 16 + tu::rnd_below(g, 241);  // near-circular, n <= 256
      poly = oracle::convex_hull(
          tu::ring_points(k, 8000000.0, double(it) * 0.013));
    } else {
      poly = tu::random_polygon(g, 4 + tu::rnd_below(g, 250), 1000000);
    }
    auto f = oracle::hull_features(poly);
    for (const auto& s : f.sides) {
      int cnt = 0;
      for (const auto& c : f.corners) cnt += is_compatible(s, c);
      if (cnt < 1 || cnt > 2)
        return "side with " + std::to_string(cnt) + " corners at case " +
               std::to_string(it);
    }
    for (const auto& c : f.corners) {
      int starts = 0;  // false->true boundaries in the cyclic flag sequence
      std::size_t m = f.sides.size();
      for (std::size_t i = 0; i < m; ++i) {
        bool prev = is_compatible(f.sides[(i + m - 1) % m], c);
        bool cur = is_compatible(f.sides[i], c);
        starts += !prev && cur;
      }
      if (starts > 1)
        return "corner with a split compatible arc at case " +
               std::to_string(it);
    }
  }
  return "";
}

// C4: feature churn of generated workloads stays within the per-op and
// aggregate bounds, degenerate transitions exempt
std::string c4() {
  for (std::size_t n : {std::size_t(1) << 10, std::size_t(1) << 12,
                        std::size_t(1) << 14, std::size_t(1) << 17}) {
    auto ops = gen_trace("incremental", n, u64(n));
    WidthEngine eng;
    u64 sumk = 0;
    for (const auto& op : ops) {
      auto r = eng.insert(op.id, Point{op.x, op.y});
      sumk += r.k;
      if (r.hull_vertices <= 3) continue;  // forming or leaving a degenerate hull
      if (r.sides_added > 2 || r.corners_added > 3)
        return "insert added " + std::to_string(r.sides_added) + " sides, " +
               std::to_string(r.corners_added) + " corners at n=" +
               std::to_string(n);
    }
    if (sumk > 10 * u64(n))
      return "total churn " + std::to_string(sumk) + " over 10n at n=" +
             std::to_string(n);

    auto dec = gen_trace("decremental", n, u64(n) + 1);
    WidthEngine dei;
    for (const auto& op : dec) {
      if (op.insert) {
        dei.insert(op.id, Point{op.x, op.y});
        continue;
      }
      auto r = dei.erase(op.id);
      if (r.hull_vertices <= 3) continue;
      if (r.sides_removed > 2 || r.corners_removed > 3)
        return "delete removed " + std::to_string(r.sides_removed) +
               " sides, " + std::to_string(r.corners_removed) +
               " corners at n=" + std::to_string(n);
    }
  }
  return "";
}

// C5: amortized cost grows sublinearly and beats full recompute at scale
std::string c5() {
  auto t0 = Clock::now();
  std::vector<std::size_t> sizes;
  for (std::size_t n = 1 << 10; n <= (std::size_t(1) << 17); n <<= 1)
    sizes.push_back(n);
  auto rows = bench_run("incremental", sizes, 2, 0.25, 42);
  double slope = loglog_slope(rows);
  const auto& last = rows.back();
  double s = seconds_since(t0);
  if (slope > 0.8)
    return "log-log slope " + std::to_string(slope) + " over 0.8";
  if (double(last.naive_ns) < 5.0 * double(last.engine_ns))
    return "speedup at n=131072 only " +
           std::to_string(double(last.naive_ns) / double(last.engine_ns)) +
           "x";
  if (s >= 1800) return "took " + std::to_string(s) + "s, budget 1800s";
  return "";
}

// C6: the envelope agrees exactly with a linear scan across 1e5 mixed ops
std::string c6() {
  auto t0 = Clock::now();
  std::mt19937_64 g(606);
  auto poly = oracle::convex_hull(tu::ring_points(1200, 1000000.0, 0.29));
  std::vector<Halfplane> all;
  for (std::size_t i = 0; i < poly.size(); ++i)
    all.push_back(
        Halfplane::of(Side::through(poly[i], poly[(i + 1) % poly.size()])));

  HalfplaneEnvelope env;
  std::vector<std::size_t> in, out(all.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  u64 opcount = 0;
  for (int t = 0; opcount < 100000; ++t) {
    bool ins = in.empty() || (!out.empty() && tu::rnd_below(g, 100) < 52);
    if (ins) {
      std::size_t k = tu::rnd_below(g, out.size());
      std::swap(out[k], out.back());
      env.insert(all[out.back()]);
      in.push_back(out.back());
      out.pop_back();
    } else {
      std::size_t k = tu::rnd_below(g, in.size());
      std::swap(in[k], in.back());
      env.erase(all[in.back()].id);
      out.push_back(in.back());
      in.pop_back();
    }
    ++opcount;
    if (in.empty() || t % 2) continue;
    Point q{tu::rnd_range(g, -200000, 200000),
            tu::rnd_range(g, -200000, 200000)};
    ++opcount;
    auto [h, d] = env.nearest(q);
    bool found = false;
    Halfplane bh;
    SquaredDistance bd;
    for (std::size_t i : in) {
      const Halfplane& m = all[i];
      i128 gg = i128(m.a) * q.x + i128(m.b) * q.y + m.c;
      SquaredDistance cd = SquaredDistance::ratio(
          int256_t(gg) * int256_t(gg),
          int256_t(m.a) * m.a + int256_t(m.b) * m.b);
      int r = found ? cmp_sqdist(cd, bd) : -1;
      if (r < 0 || (r == 0 && m.id < bh.id)) bh = m, bd = cd, found = true;
    }
    if (!(h.id == bh.id) || cmp_sqdist(d, bd) != 0)
      return "nearest mismatch at op " + std::to_string(opcount);
  }
  double s = seconds_since(t0);
  if (s >= 60) return "took " + std::to_string(s) + "s, budget 60s";
  return "";
}

// C7: the full-state audit, write bound included, holds after every op
std::string c7() {
  const char* modes[] = {"incremental", "decremental", "mixed", "churn"};
  for (u64 seed = 1; seed <= 50; ++seed) {
    const char* mode = modes[seed % 4];
    std::size_t n = 8 + std::size_t(mix64(seed) % 249);
    auto ops = gen_trace(mode, n, seed);
    WidthEngine eng;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (ops[i].insert)
        eng.insert(ops[i].id, Point{ops[i].x, ops[i].y});
      else
        eng.erase(ops[i].id);
      auto a = eng.audit();
      if (!a.ok)
        return std::string(mode) + " seed " + std::to_string(seed) + " op " +
               std::to_string(i) + ": " + a.issue;
    }
  }
  return "";
}

}  // namespace

int main() {
  struct Criterion {
    const char* desc;
    std::string (*run)();
  };
  const Criterion cs[] = {
      {"replays match the width oracle after every op", c1},
      {"caliper sweep equals the all-pairs definition", c2},
      {"side/corner compatibility structure", c3},
      {"feature churn within per-op and 10n bounds", c4},
      {"sublinear scaling and 5x speedup over recompute", c5},
      {"envelope matches linear scan over 1e5 ops", c6},
      {"full-state audit holds after every op", c7},
  };
  int failures = 0;
  for (int i = 0; i < 7; ++i) {
    std::string err = cs[i].run();
    if (err.empty()) {
      std::printf("C%d PASS: %s\n", i + 1, cs[i].desc);
    } else {
      std::printf("C%d FAIL: %s (%s)\n", i + 1, cs[i].desc, err.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  return failures;
}
