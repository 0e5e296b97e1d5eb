#pragma once

// Weight-balanced tree over the current hull sides in cyclic outward-normal
// order, cut at direction (1,0), with a halfplane envelope at every node
// covering exactly its subtree's sides. A corner's compatible sides form one
// closed angular arc (at most two key ranges after the cut), so the nearest
// compatible side is the exact minimum over O(log n) canonical envelope
// queries. Balance is restored by rebuilding the topmost violating subtree.

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dynwidth/envelope.hpp"
#include "dynwidth/geom.hpp"

namespace dynwidth {

class SideIndex {
 public:
  // alpha: minimum child weight fraction; clamped to [0.05, 0.33] so that a
  // freshly rebuilt subtree always satisfies it.
  explicit SideIndex(double alpha = 0.25);
  ~SideIndex();
  SideIndex(const SideIndex&) = delete;
  SideIndex& operator=(const SideIndex&) = delete;

  void insert_side(const Side& s);  // throws DuplicateSide
  void delete_side(const Side& s);  // throws UnknownSide
  std::size_t size() const;

  // Exact nearest side compatible with c, ties by smaller id; none when the
  // compatible arc holds no side. Pre: all indexed sides support the hull
  // that c is a corner of (so c.apex satisfies every halfplane).
  std::optional<std::pair<Side, SquaredDistance>> nearest_compatible_side(
      const Corner& c) const;

  // total leaves of all subtrees rebuilt so far; amortization probe
  u64 rebuild_nodes_total() const { return rebuilt_; }

  void validate() const;  // test hook: order, sizes, balance, envelopes

 private:
  struct Key {
    Dir n;       // outward normal
    SideId id;
  };
  static int cmp_key(const Key& a, const Key& b);
  static Key key_of(const Side& s) { return Key{s.outward(), s.id()}; }

  struct Node;
  struct Cand {
    bool found = false;
    SideId id;
    SquaredDistance d;
  };

  Node* make_leaf(const Side& s);
  static void pull(Node* v);
  Node* insert_rec(Node* v, Node* nl, const Halfplane& h,
                   std::vector<Node*>& path);
  Node* erase_rec(Node* v, const Key& k, SideId id, std::vector<Node*>& path);
  void rebalance_on(const std::vector<Node*>& path);
  void rebuild(Node*& ref);
  void collect(Node* v, std::vector<Side>& out) const;
  Node* build(const std::vector<Side>& ss, std::size_t lo, std::size_t hi);
  void free_tree(Node* v);
  void query(const Node* v, const Key* a, const Key* b, Point apex,
             Cand& best) const;

  double alpha_;
  Node* root_ = nullptr;
  std::unordered_map<SideId, Side, SideIdHash> side_of_;
  u64 rebuilt_ = 0;
};

}  // namespace dynwidth
