#include "dynwidth/engine.hpp"

#include <algorithm>
#include <cassert>

#include "dynwidth/errors.hpp"
#include "dynwidth/oracle.hpp"

namespace dynwidth {

WidthReport WidthEngine::report_after(const HullDiff& d) const {
  WidthReport r = width();
  r.corners_added = d.corners_added.size();
  r.corners_removed = d.corners_removed.size();
  r.sides_added = d.sides_added.size();
  r.sides_removed = d.sides_removed.size();
  r.k = d.k();
  return r;
}

WidthReport WidthEngine::insert(u64 id, Point p) {
  if (pos_.count(id)) throw DuplicateId("id already live: " + std::to_string(id));
  assert(std::abs(p.x) <= kCoordBound && std::abs(p.y) <= kCoordBound);
  pos_.emplace(id, p);
  auto& at = ids_at_[p];
  at.insert(id);
  last_writes_ = last_ca_ = last_sa_ = last_orphans_ = 0;
  if (at.size() > 1) return report_after(HullDiff{});  // repeated coordinate
  HullDiff d = hull_.insert(p);
  apply_diff(d);
  return report_after(d);
}

WidthReport WidthEngine::erase(u64 id) {
  auto it = pos_.find(id);
  if (it == pos_.end()) throw UnknownId("id not live: " + std::to_string(id));
  Point p = it->second;
  pos_.erase(it);
  auto ait = ids_at_.find(p);
  ait->second.erase(id);
  last_writes_ = last_ca_ = last_sa_ = last_orphans_ = 0;
  if (!ait->second.empty()) return report_after(HullDiff{});
  ids_at_.erase(ait);
  HullDiff d = hull_.erase(p);
  apply_diff(d);
  return report_after(d);
}

void WidthEngine::unpoint(SideId sid, const CornerKey& ck) {
  auto it = pointed_by_.find(sid);
  assert(it != pointed_by_.end());
  auto& v = it->second;
  auto pos = std::find(v.begin(), v.end(), ck);
  assert(pos != v.end());
  v.erase(pos);
  if (v.empty()) pointed_by_.erase(it);
}

void WidthEngine::apply_diff(const HullDiff& d) {
  last_ca_ = d.corners_added.size();
  last_sa_ = d.sides_added.size();

  // 1. corners that left the hull: drop their entries and PQ items
  for (const Corner& c : d.corners_removed) {
    auto it = corners_.find(c.key());
    assert(it != corners_.end());
    if (it->second.nearest) {
      pq_.erase(PQItem{it->second.nearest->second, c.key()});
      unpoint(it->second.nearest->first.id(), c.key());
    }
    corners_.erase(it);
  }

  // 2. sides that left: deindex; surviving corners that pointed at one
  //    become orphans (pointer cleared now, recomputed in step 6)
  std::vector<CornerKey> orphans;
  for (const Side& s : d.sides_removed) {
    index_.delete_side(s);
    sides_.erase(s.id());
    auto pit = pointed_by_.find(s.id());
    if (pit == pointed_by_.end()) continue;
    for (const CornerKey& ck : pit->second) {
      auto cit = corners_.find(ck);
      assert(cit != corners_.end() && cit->second.nearest);
      pq_.erase(PQItem{cit->second.nearest->second, ck});
      cit->second.nearest.reset();
      orphans.push_back(ck);
    }
    pointed_by_.erase(pit);
  }
  last_orphans_ = orphans.size();

  // 3. new sides into the index before any pointer is computed
  for (const Side& s : d.sides_added) {
    index_.insert_side(s);
    sides_.emplace(s.id(), s);
  }

  // 4. new corners get fresh pointers
  std::set<CornerKey> added;
  for (const Corner& c : d.corners_added) {
    added.insert(c.key());
    CornerEntry e{c, std::nullopt};
    auto res = index_.nearest_compatible_side(c);
    ++last_writes_;
    if (res) {
      e.nearest = res;
      pq_.insert(PQItem{res->second, c.key()});
      pointed_by_[res->first.id()].push_back(c.key());
    }
    corners_.emplace(c.key(), std::move(e));
  }

  // 5. each new side can improve the pointers of its <= 2 compatible
  //    corners; only strictly closer wins (incumbents keep exact ties)
  std::set<CornerKey> orph(orphans.begin(), orphans.end());
  for (const Side& s : d.sides_added) {
    for (const Corner& c : hull_.compatible_corners(s)) {
      CornerKey ck = c.key();
      if (added.count(ck) || orph.count(ck)) continue;
      auto cit = corners_.find(ck);
      assert(cit != corners_.end());
      SquaredDistance nd = squared_distance(s, c);
      assert(!nd.infinite_value());
      CornerEntry& e = cit->second;
      if (e.nearest && cmp_sqdist(nd, e.nearest->second) >= 0) continue;
      if (e.nearest) {
        pq_.erase(PQItem{e.nearest->second, ck});
        unpoint(e.nearest->first.id(), ck);
      }
      e.nearest = std::pair(s, nd);
      pq_.insert(PQItem{nd, ck});
      pointed_by_[s.id()].push_back(ck);
      ++last_writes_;
    }
  }

  // 6. orphans recompute from scratch
  for (const CornerKey& ck : orphans) {
    auto cit = corners_.find(ck);
    assert(cit != corners_.end());
    CornerEntry& e = cit->second;
    assert(!e.nearest);
    auto res = index_.nearest_compatible_side(e.corner);
    ++last_writes_;
    if (res) {
      e.nearest = res;
      pq_.insert(PQItem{res->second, ck});
      pointed_by_[res->first.id()].push_back(ck);
    }
  }
}

WidthReport WidthEngine::width() const {
  WidthReport r;
  r.hull_vertices = hull_.hull_vertex_count();
  if (pq_.empty()) return r;  // degenerate or empty: zero, no witness
  const PQItem& top = *pq_.begin();
  r.width_sq = top.d;
  r.width = top.d.root_double();
  const CornerEntry& e = corners_.at(top.ck);
  r.witness = std::pair(e.nearest->first, e.corner);
  return r;
}

std::vector<Point> WidthEngine::live_points() const {
  std::vector<Point> out;
  out.reserve(ids_at_.size());
  for (const auto& [p, ids] : ids_at_) out.push_back(p);
  return out;
}

bool WidthEngine::corrupt_one_pointer() {
  for (auto& [ck, e] : corners_) {
    if (!e.nearest) continue;
    pq_.erase(PQItem{e.nearest->second, ck});
    SquaredDistance wrong = SquaredDistance::ratio(
        e.nearest->second.num() + e.nearest->second.den(),
        e.nearest->second.den());
    e.nearest->second = wrong;
    pq_.insert(PQItem{wrong, ck});
    return true;
  }
  return false;
}

WidthEngine::AuditResult WidthEngine::audit() const {
  auto fail = [](std::string msg) { return AuditResult{false, std::move(msg)}; };

  // id bookkeeping
  std::size_t idsum = 0;
  for (const auto& [p, ids] : ids_at_) {
    if (ids.empty()) return fail("empty id set at a coordinate");
    idsum += ids.size();
    for (u64 id : ids) {
      auto it = pos_.find(id);
      if (it == pos_.end() || !(it->second == p))
        return fail("id/position maps disagree");
    }
  }
  if (idsum != pos_.size()) return fail("id count mismatch");

  // hull vs scratch recomputation, rotation-canonical
  std::vector<Point> want = oracle::convex_hull(live_points());
  std::vector<Point> got = hull_.cycle();
  if (want.size() != got.size()) return fail("hull vertex count mismatch");
  if (want.size() >= 3) {
    auto canon = [](std::vector<Point> v) {
      std::rotate(v.begin(), std::min_element(v.begin(), v.end()), v.end());
      return v;
    };
    if (canon(got) != canon(want)) return fail("hull cycle mismatch");
  } else {
    std::sort(got.begin(), got.end());
    if (got != want) return fail("degenerate hull mismatch");
  }

  // feature maps vs the cycle
  oracle::HullFeatures f = oracle::hull_features(want);
  if (f.sides.size() != sides_.size()) return fail("side map size mismatch");
  for (const Side& s : f.sides) {
    auto it = sides_.find(s.id());
    if (it == sides_.end()) return fail("missing side " + s.id().str());
    const Side& t = it->second;
    if (!(t == s) || t.a != s.a || t.b != s.b || t.c != s.c)
      return fail("side payload mismatch " + s.id().str());
  }
  if (f.corners.size() != corners_.size())
    return fail("corner map size mismatch");
  for (const Corner& c : f.corners) {
    auto it = corners_.find(c.key());
    if (it == corners_.end() || !(it->second.corner == c))
      return fail("corner map mismatch");
  }

  index_.validate();

  // pointer optimality against a full scan
  std::vector<Side> all;
  all.reserve(sides_.size());
  for (const auto& [id, s] : sides_) all.push_back(s);
  std::size_t with_ptr = 0;
  for (const auto& [ck, e] : corners_) {
    auto scan = oracle::nearest_side_scan(e.corner, all);
    if (!e.nearest) {
      if (scan) return fail("pointer missing, compatible side exists");
      continue;
    }
    ++with_ptr;
    if (!scan) return fail("pointer set, no compatible side exists");
    if (!sides_.count(e.nearest->first.id()))
      return fail("pointer at a side not in the map");
    SquaredDistance re = squared_distance(e.nearest->first, e.corner);
    if (re.infinite_value() || cmp_sqdist(re, e.nearest->second) != 0)
      return fail("pointer stale: stored distance wrong");
    if (cmp_sqdist(e.nearest->second, scan->second) != 0)
      return fail("pointer suboptimal");
    if (!pq_.count(PQItem{e.nearest->second, ck}))
      return fail("pointer missing from the priority queue");
  }
  if (pq_.size() != with_ptr) return fail("priority queue size mismatch");

  // back-pointer lists
  std::size_t listed = 0;
  for (const auto& [sid, list] : pointed_by_) {
    if (list.empty()) return fail("empty back-pointer list");
    if (list.size() > 2) return fail("side pointed at by more than 2 corners");
    if (!sides_.count(sid)) return fail("back-pointers for a dead side");
    for (const CornerKey& ck : list) {
      auto it = corners_.find(ck);
      if (it == corners_.end() || !it->second.nearest ||
          !(it->second.nearest->first.id() == sid))
        return fail("back-pointer list disagrees with a pointer");
    }
    listed += list.size();
  }
  if (listed != with_ptr) return fail("back-pointer count mismatch");

  // width against the calipers oracle
  oracle::StaticWidthResult cal = oracle::calipers_width(live_points());
  WidthReport w = width();
  if (cmp_sqdist(w.width_sq, cal.width_sq) != 0)
    return fail("width " + w.width_sq.str() + " != calipers " +
                cal.width_sq.str());
  if (bool(w.witness) != bool(cal.witness)) return fail("witness presence mismatch");

  // locality: the last update wrote only what the diff allows
  if (last_writes_ > last_ca_ + last_orphans_ + 2 * last_sa_)
    return fail("write counter above the locality bound");

  return AuditResult{};
}

}  // namespace dynwidth
