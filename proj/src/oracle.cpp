#include "dynwidth/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "dynwidth/errors.hpp"

namespace dynwidth::oracle {

std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<Point> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  std::size_t lowk = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lowk && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  if (h.size() < 3) return {pts.front(), pts.back()};  // all collinear
  return h;
}

HullFeatures hull_features(const std::vector<Point>& cycle) {
  HullFeatures f;
  std::size_t n = cycle.size();
  if (n < 3) return f;
  for (std::size_t i = 0; i < n; ++i) {
    f.sides.push_back(Side::through(cycle[i], cycle[(i + 1) % n]));
    f.corners.push_back(
        Corner{cycle[(i + n - 1) % n], cycle[i], cycle[(i + 1) % n]});
  }
  return f;
}

namespace {

// lexicographic (distance, corner identity, side identity); deterministic
bool better(const SquaredDistance& d, const Side& s, const Corner& c,
            const StaticWidthResult& best) {
  if (!best.witness) return true;
  int r = cmp_sqdist(d, best.width_sq);
  if (r != 0) return r < 0;
  return std::pair(c.key(), s.id()) <
         std::pair(best.witness->second.key(), best.witness->first.id());
}

}  // namespace

StaticWidthResult calipers_width(const std::vector<Point>& pts) {
  std::vector<Point> h = convex_hull(pts);
  std::size_t m = h.size();
  if (m < 3) return {SquaredDistance::zero(), std::nullopt};
  auto at = [&](std::size_t i) -> Point& { return h[i % m]; };
  StaticWidthResult best{SquaredDistance::infinite(), std::nullopt};
  std::size_t j = 1;
  for (std::size_t i = 0; i < m; ++i) {
    // farthest vertex from the edge line; its distance is unimodal around
    // the cycle, so the pointer only advances
    while (cross(at(i), at(i + 1), at(j + 1)) > cross(at(i), at(i + 1), at(j)))
      ++j;
    Side s = Side::through(at(i), at(i + 1));
    Corner c{at(j + m - 1), at(j), at(j + 1)};
    SquaredDistance d = squared_distance(s, c);
    assert(!d.infinite_value());
    if (better(d, s, c, best)) best = {d, std::pair(s, c)};
    if (cross(at(i), at(i + 1), at(j + 1)) == cross(at(i), at(i + 1), at(j))) {
      // opposite edge is parallel: both of its endpoints are farthest, and
      // the deterministic tie-break must see the second one too
      Corner c2{at(j), at(j + 1), at(j + 2)};
      SquaredDistance d2 = squared_distance(s, c2);
      assert(cmp_sqdist(d2, d) == 0);
      if (better(d2, s, c2, best)) best = {d2, std::pair(s, c2)};
    }
  }
  return best;
}

StaticWidthResult all_pairs_width(const std::vector<Point>& pts) {
  std::vector<Point> h = convex_hull(pts);
  if (h.size() < 3)
    throw DegenerateHull("all_pairs_width: hull has no features");
  HullFeatures f = hull_features(h);
  StaticWidthResult best{SquaredDistance::infinite(), std::nullopt};
  for (const Side& s : f.sides)
    for (const Corner& c : f.corners) {
      SquaredDistance d = squared_distance(s, c);
      if (d.infinite_value()) continue;
      if (better(d, s, c, best)) best = {d, std::pair(s, c)};
    }
  assert(best.witness);
  return best;
}

std::optional<std::pair<Side, SquaredDistance>> nearest_side_scan(
    const Corner& c, const std::vector<Side>& sides) {
  std::optional<std::pair<Side, SquaredDistance>> best;
  for (const Side& s : sides) {
    SquaredDistance d = squared_distance(s, c);
    if (d.infinite_value()) continue;
    if (!best) {
      best.emplace(s, d);
      continue;
    }
    int r = cmp_sqdist(d, best->second);
    if (r < 0 || (r == 0 && s.id() < best->first.id())) best->first = s, best->second = d;
  }
  return best;
}

namespace {

HullDiff features_diff(const std::vector<Point>& oldCycle,
                       const std::vector<Point>& newCycle) {
  HullFeatures of = hull_features(oldCycle), nf = hull_features(newCycle);
  std::map<SideId, Side> os, ns;
  std::map<CornerKey, Corner> oc, nc;
  for (const Side& s : of.sides) os.emplace(s.id(), s);
  for (const Side& s : nf.sides) ns.emplace(s.id(), s);
  for (const Corner& c : of.corners) oc.emplace(c.key(), c);
  for (const Corner& c : nf.corners) nc.emplace(c.key(), c);
  HullDiff d;
  for (const auto& [id, s] : os)
    if (!ns.count(id)) d.sides_removed.push_back(s);
  for (const auto& [id, s] : ns)
    if (!os.count(id)) d.sides_added.push_back(s);
  for (const auto& [k, c] : oc)
    if (!nc.count(k)) d.corners_removed.push_back(c);
  for (const auto& [k, c] : nc)
    if (!oc.count(k)) d.corners_added.push_back(c);
  return d;
}

}  // namespace

HullDiff NaiveHull::insert(Point p) {
  assert(!pts_.count(p));
  std::vector<Point> before = cycle();
  pts_.insert(p);
  return features_diff(before, cycle());
}

HullDiff NaiveHull::erase(Point p) {
  assert(pts_.count(p));
  std::vector<Point> before = cycle();
  pts_.erase(p);
  return features_diff(before, cycle());
}

std::vector<Point> NaiveHull::cycle() const {
  return convex_hull(std::vector<Point>(pts_.begin(), pts_.end()));
}

}  // namespace dynwidth::oracle
