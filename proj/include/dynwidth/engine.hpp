#pragma once

// Top-level dynamic width maintainer. The dynamic hull reports each update
// as an exact feature diff; every corner keeps a pointer to its nearest
// compatible side; an exact priority queue over those pointers has the
// squared width at its minimum. Updates touch only the features named by the
// diff plus orphaned pointers, which a write counter enforces.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dynwidth/hull.hpp"
#include "dynwidth/side_index.hpp"

namespace dynwidth {

struct WidthReport {
  SquaredDistance width_sq;  // exact; zero when fewer than 3 hull vertices
  double width = 0;          // sqrt of width_sq, display only
  std::optional<std::pair<Side, Corner>> witness;
  std::size_t k = 0;  // total features changed by the op
  std::size_t corners_added = 0;
  std::size_t corners_removed = 0;
  std::size_t sides_added = 0;
  std::size_t sides_removed = 0;
  std::size_t hull_vertices = 0;
  u64 time_ns = 0;  // filled by runners, not the engine
};

class WidthEngine {
 public:
  explicit WidthEngine(double alpha = 0.25) : index_(alpha) {}

  // Multiset semantics: several ids may share one coordinate; the hull sees
  // each coordinate once.
  WidthReport insert(u64 id, Point p);  // throws DuplicateId
  WidthReport erase(u64 id);            // throws UnknownId

  WidthReport width() const;  // no mutation; k and counts left zero

  std::size_t live_ids() const { return pos_.size(); }
  std::vector<Point> live_points() const;  // distinct coordinates, sorted

  struct AuditResult {
    bool ok = true;
    std::string issue;
  };
  // Full-state check against brute force: hull vs scratch, feature maps,
  // pointer optimality, PQ and back-pointer consistency, width vs calipers,
  // and the per-update write bound. O(n^2); test use.
  AuditResult audit() const;

  // test hook: make one stored pointer distance wrong (audit must notice);
  // false when there is no pointer to damage
  bool corrupt_one_pointer();

 private:
  struct CornerEntry {
    Corner corner;
    std::optional<std::pair<Side, SquaredDistance>> nearest;
  };
  struct PQItem {
    SquaredDistance d;
    CornerKey ck;
  };
  struct PQLess {
    bool operator()(const PQItem& a, const PQItem& b) const {
      int r = cmp_sqdist(a.d, b.d);
      if (r != 0) return r < 0;
      return a.ck < b.ck;
    }
  };

  void apply_diff(const HullDiff& d);
  void unpoint(SideId sid, const CornerKey& ck);
  WidthReport report_after(const HullDiff& d) const;

  DynamicHull hull_;
  SideIndex index_;
  std::unordered_map<u64, Point> pos_;
  std::map<Point, std::set<u64>> ids_at_;
  std::map<CornerKey, CornerEntry> corners_;
  std::map<SideId, Side> sides_;
  std::map<SideId, std::vector<CornerKey>> pointed_by_;  // <= 2 each
  std::set<PQItem, PQLess> pq_;

  // last-op locality accounting
  std::size_t last_writes_ = 0;
  std::size_t last_ca_ = 0;
  std::size_t last_sa_ = 0;
  std::size_t last_orphans_ = 0;
};

}  // namespace dynwidth
