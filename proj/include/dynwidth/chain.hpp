#pragma once

// One monotone hull chain and the structure that maintains it under point
// insertion and deletion. Points are sheared to key = x * 2^32 +/- y, which
// is injective under the coordinate contract and turns both the upper and
// the lower hull of the original set into "upper hulls in mapped
// coordinates" of the same shape, so a single implementation serves both.
//
// Layout: a leaf-based weight-balanced tree over all stored points (the
// x-tree), where each internal node remembers the bridge (common tangent)
// between its children's partial hulls together with the chain pieces the
// bridge hides. The visible hull of the root is kept materialized as a
// treap doubly linked in chain order; updates dissolve it along one
// root-to-leaf path and reassemble it with fresh bridges on the way back.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "dynwidth/geom.hpp"

namespace dynwidth::detail {

struct ChainNode {
  i64 key = 0;   // sheared abscissa
  i64 my = 0;    // sheared ordinate (+y or -y)
  Point pt{};
  u64 prio = 0;  // deterministic treap priority
  u32 sz = 1;
  ChainNode* l = nullptr;
  ChainNode* r = nullptr;
  ChainNode* prev = nullptr;  // chain order, within the owning treap only
  ChainNode* next = nullptr;
};

class HullChain {
 public:
  struct XNode;  // definition is internal to chain.cpp

  explicit HullChain(bool negate_y) : neg_(negate_y) {}
  ~HullChain();
  HullChain(const HullChain&) = delete;
  HullChain& operator=(const HullChain&) = delete;

  void insert(Point p);  // pre: p not stored
  void erase(Point p);   // pre: p stored
  bool stores(Point p) const;
  std::size_t size() const { return count_; }

  std::size_t hull_size() const;
  ChainNode* first() const;  // leftmost hull node, nullptr when empty
  ChainNode* last() const;
  ChainNode* find_hull(Point p) const;  // hull node at p, else nullptr
  std::vector<Point> hull_points() const;

  // What insert(p) would do to this chain's hull, computed without changing
  // the structure: whether p becomes a chain vertex, which current vertices
  // stop being chain vertices, and p's surviving chain neighbors.
  struct InsertPlan {
    bool joins = false;
    std::vector<Point> covered;
    std::optional<Point> left;
    std::optional<Point> right;
  };
  InsertPlan plan_insert(Point p);

  // All hull vertices maximizing f, which the caller guarantees is unimodal
  // along the chain. Returned in chain order; at most 2 by strict convexity.
  std::vector<ChainNode*> peaks(const std::function<i128(Point)>& f) const;

  i64 key_of(Point p) const {
    return p.x * (i64(1) << 32) + (neg_ ? -p.y : p.y);
  }
  i64 mapped_y(Point p) const { return neg_ ? -p.y : p.y; }

  // Deep structural check against a scratch recomputation; test hook.
  void validate() const;

  std::vector<Point> stored_points() const;

 private:
  bool neg_;
  XNode* root_ = nullptr;
  ChainNode* hull_ = nullptr;
  std::size_t count_ = 0;

  ChainNode* make_node(Point p, i64 k) const;
  std::pair<ChainNode*, ChainNode*> down(XNode* v, ChainNode* u);
  ChainNode* up(XNode* v, ChainNode* ul, ChainNode* ur);
  ChainNode* insert_rec(XNode*& v, ChainNode* u, Point p, i64 k);
  ChainNode* erase_rec(XNode*& v, ChainNode* u, i64 k);
  ChainNode* rebuild(XNode*& v, ChainNode* ul, ChainNode* ur);
  void collect(XNode* x, std::vector<Point>& out);
  std::pair<XNode*, ChainNode*> build(const std::vector<Point>& pts,
                                      std::size_t lo, std::size_t hi);
  void free_x(XNode* x);
};

}  // namespace dynwidth::detail
