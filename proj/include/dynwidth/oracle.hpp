#pragma once

// Brute-force reference implementations: static hull, rotating-calipers
// width, all-pairs width, a linear nearest-side scan, and a
// recompute-and-diff hull. They share the exact predicates with the main
// structures but none of the dynamic machinery, so disagreements between the
// two stacks point at real bugs.

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "dynwidth/diff.hpp"
#include "dynwidth/geom.hpp"

namespace dynwidth::oracle {

// CCW cycle of strict hull vertices starting at the lexicographic minimum;
// degenerate inputs yield 0, 1, or 2 points.
std::vector<Point> convex_hull(std::vector<Point> pts);

struct HullFeatures {
  std::vector<Side> sides;
  std::vector<Corner> corners;
};

// Features of a CCW vertex cycle; cycles shorter than 3 have none.
HullFeatures hull_features(const std::vector<Point>& cycle);

struct StaticWidthResult {
  SquaredDistance width_sq;
  std::optional<std::pair<Side, Corner>> witness;
};

// Exact squared width by antipodal sweep over the hull; O(n log n).
// Degenerate input gives 0 with no witness.
StaticWidthResult calipers_width(const std::vector<Point>& pts);

// Exact minimum of squared_distance over all side x corner pairs; O(n^2).
// Throws DegenerateHull when the hull has no features.
StaticWidthResult all_pairs_width(const std::vector<Point>& pts);

// Minimum over the compatible sides in the list, ties by smaller id.
std::optional<std::pair<Side, SquaredDistance>> nearest_side_scan(
    const Corner& c, const std::vector<Side>& sides);

// Full-recompute dynamic hull with the same diff semantics as DynamicHull;
// O(n log n) per update.
class NaiveHull {
 public:
  HullDiff insert(Point p);  // pre: !contains(p)
  HullDiff erase(Point p);   // pre: contains(p)
  bool contains(Point p) const { return pts_.count(p) != 0; }
  std::size_t size() const { return pts_.size(); }
  std::vector<Point> cycle() const;

 private:
  std::set<Point> pts_;
};

}  // namespace dynwidth::oracle
