#pragma once

// Shared test helpers: deterministic RNG, random clouds and polygons, and
// brute-force mirrors of the angular predicates.

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "dynwidth/geom.hpp"
#include "dynwidth/oracle.hpp"

namespace tu {

using namespace dynwidth;

inline u64 rnd_below(std::mt19937_64& g, u64 n) {
  u64 lim = u64(-1) - u64(-1) % n;
  u64 v;
  do v = g(); while (v >= lim);
  return v % n;
}

inline i64 rnd_range(std::mt19937_64& g, i64 lo, i64 hi) {  // inclusive
  return lo + i64(rnd_below(g, u64(hi - lo) + 1));
}

inline std::vector<Point> random_points(std::mt19937_64& g, std::size_t n,
                                        i64 r) {
  std::vector<Point> ps(n);
  for (auto& p : ps) p = Point{rnd_range(g, -r, r), rnd_range(g, -r, r)};
  return ps;
}

// CCW hull with at least minv vertices; redraws the cloud until it happens
inline std::vector<Point> random_polygon(std::mt19937_64& g, std::size_t n,
                                         i64 r, std::size_t minv = 3) {
  for (;;) {
    auto h = oracle::convex_hull(random_points(g, n, r));
    if (h.size() >= minv) return h;
  }
}

// m rounded points on a circle, CCW from angle phase; distinct for radius >> m
inline std::vector<Point> ring_points(std::size_t m, double radius,
                                      double phase = 0) {
  std::vector<Point> ps(m);
  for (std::size_t i = 0; i < m; ++i) {
    double t = phase + 2 * 3.14159265358979323846 * double(i) / double(m);
    ps[i] = Point{i64(std::llround(radius * std::cos(t))),
                  i64(std::llround(radius * std::sin(t)))};
  }
  return ps;
}

// closed CCW arc [a, b] membership in the cut-at-(1,0) angular order
inline bool in_arc(Dir a, Dir b, Dir w) {
  if (cmp_angle(a, b) <= 0) return cmp_angle(a, w) <= 0 && cmp_angle(w, b) <= 0;
  return cmp_angle(a, w) <= 0 || cmp_angle(w, b) <= 0;
}

inline Corner corner_of(const std::vector<Point>& cyc, std::size_t i) {
  std::size_t m = cyc.size();
  return Corner{cyc[(i + m - 1) % m], cyc[i], cyc[(i + 1) % m]};
}

inline SquaredDistance sq(long num, long den) {
  return SquaredDistance::ratio(num, den);
}

}  // namespace tu
