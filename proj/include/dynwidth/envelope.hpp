#pragma once

// Dynamic set of halfplanes answering exact nearest-boundary queries for
// points inside their common intersection. Layout: an insertion buffer of
// O(sqrt(m)) halfplanes scanned exactly, plus static blocks of ~sqrt(m)
// halfplanes each. A block stores its halfplanes sorted by boundary-normal
// angle and a small range tree of float summaries (angle span, minimum
// offset) that yield sound lower bounds on the distance any member can
// achieve; branch-and-bound descends only where the bound beats the current
// best, and every surviving candidate is compared with exact integers, so
// float error can only cost time, never correctness.

#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dynwidth/geom.hpp"

namespace dynwidth {

struct Halfplane {
  SideId id;
  i64 a = 0;
  i64 b = 0;
  i64 c = 0;  // a*x + b*y + c >= 0 on the contained region; (a,b) != 0

  static Halfplane of(const Side& s) { return Halfplane{s.id(), s.a, s.b, s.c}; }
};

class HalfplaneEnvelope {
 public:
  void insert(const Halfplane& h);  // throws DuplicateId
  void erase(SideId id);            // throws UnknownId
  std::size_t size() const { return live_; }

  // A halfplane whose boundary is nearest to q, ties by smallest id, with
  // the exact squared distance. q must lie in the closed intersection of all
  // resident halfplanes; a negative signed offset noticed during evaluation
  // raises PreconditionViolated (detection is best-effort, pruned blocks are
  // never inspected). Throws NoHalfplanes when empty.
  std::pair<Halfplane, SquaredDistance> nearest(Point q) const;

  std::vector<Halfplane> contents() const;  // audit hook, unspecified order

 private:
  struct Entry {
    Halfplane h;
    double theta = 0;  // boundary inward-normal angle, in [pi, 3*pi)
    double chat = 0;   // c / |(a,b)|, the signed offset of the origin
  };
  struct Summary {
    double tlo = 0;
    double thi = 0;
    double hlo = 0;
  };
  struct Block {
    std::vector<Entry> es;       // sorted by outward angle from (1,0), ties id
    std::vector<Summary> sums;   // heap-ordered range tree over es
  };

  struct Best {
    bool found = false;
    bool neg = false;  // winner had negative signed offset
    int256_t num = 0;
    int256_t den = 1;
    Halfplane h;
    double upper = 0;  // rounded-up sqrt(num/den), for pruning
  };

  static Entry make_entry(const Halfplane& h);
  static void sort_block(Block& b);
  static void build_sums(Block& b, std::size_t node, std::size_t lo,
                         std::size_t hi);
  static void scan(const Entry* es, std::size_t n, Point q, Best& best);
  static void descend(const Block& b, std::size_t node, std::size_t lo,
                      std::size_t hi, Point q, double qn, double phi,
                      Best& best);
  std::size_t target_block() const;
  void compile_buffer();
  void rebuild_all();

  std::vector<Entry> buffer_;
  std::vector<Block> blocks_;
  std::unordered_map<SideId, int, SideIdHash> loc_;  // -1 = buffer
  std::size_t live_ = 0;
  std::size_t erased_ = 0;  // deletions since the last global rebuild
};

}  // namespace dynwidth
