#pragma once

// Dynamic strictly convex hull over a set of distinct points, reporting each
// update as an exact feature diff (sides and corners that appear and
// disappear). Small or mostly-rewritten hulls are diffed by recomputing the
// cycle; otherwise only a window of the cycle around the touched region is
// walked, so the cost stays proportional to the diff plus a polylog term.

#include <optional>
#include <vector>

#include "dynwidth/chain.hpp"
#include "dynwidth/diff.hpp"

namespace dynwidth {

class DynamicHull {
 public:
  // Distinct coordinates only; multiplicity bookkeeping is the caller's.
  HullDiff insert(Point p);  // pre: !contains(p)
  HullDiff erase(Point p);   // pre: contains(p)

  bool contains(Point p) const { return upper_.stores(p); }
  std::size_t size() const { return upper_.size(); }

  // number of strict hull vertices (cyclic); < 3 means degenerate, no features
  std::size_t hull_vertex_count() const;
  bool degenerate() const { return hull_vertex_count() < 3; }

  // CCW vertex cycle. Canonical start: the lexicographically extreme vertex
  // that begins the lower chain. Degenerate hulls yield 0..2 points.
  std::vector<Point> cycle() const;

  // Hull vertices maximizing d (it need not be a unit vector); two vertices
  // come back in CCW cycle order exactly when d is an edge normal.
  // Throws EmptyHull when no points are stored.
  std::vector<Point> extreme_vertices(Dir d) const;

  bool on_cycle(Point p) const;
  // The corner at a hull vertex (nullopt if p is not a vertex or the hull is
  // degenerate).
  std::optional<Corner> corner_at(Point apex) const;

  // The 1..2 corners whose wedge is compatible with a current hull side, in
  // CCW cycle order. Throws StaleSide if s is not an edge of the current
  // hull.
  std::vector<Corner> compatible_corners(const Side& s) const;

  void validate() const;  // test hook: cross-checks both chains and the cycle

 private:
  struct Cur {
    bool low;
    detail::ChainNode* n;
  };
  struct Walk;

  Walk walk() const;
  Cur next_(const Walk& w, Cur c) const;
  Cur prev_(const Walk& w, Cur c) const;
  std::optional<Cur> locate(Point p) const;
  std::vector<Point> cycle_from(const Walk& w, Cur start, std::size_t cnt) const;
  HullDiff full_update(Point p, bool is_insert);

  detail::HullChain upper_{false};
  detail::HullChain lower_{true};
};

}  // namespace dynwidth
