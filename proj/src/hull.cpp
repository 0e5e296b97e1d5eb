#include "dynwidth/hull.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "dynwidth/errors.hpp"

namespace dynwidth {

using detail::ChainNode;

// Junction nodes of the two chains, captured once per walk. The CCW cycle is
// the lower chain in its own order (top-left around the bottom to
// bottom-right), then the upper chain in reverse (top-right back along the
// top); shared endpoints are emitted exactly once, by the lower leg.
struct DynamicHull::Walk {
  ChainNode* loF;
  ChainNode* loL;
  ChainNode* upF;
  ChainNode* upL;
};

DynamicHull::Walk DynamicHull::walk() const {
  return Walk{lower_.first(), lower_.last(), upper_.first(), upper_.last()};
}

DynamicHull::Cur DynamicHull::next_(const Walk& w, Cur c) const {
  if (c.low) {
    if (c.n->next) return {true, c.n->next};
    // end of the lower leg: hop to the upper leg, skipping a shared vertex
    ChainNode* t = w.upL->pt == c.n->pt ? w.upL->prev : w.upL;
    assert(t);
    if (t->pt == w.loF->pt) return {true, w.loF};
    return {false, t};
  }
  ChainNode* p = c.n->prev;
  assert(p);
  if (p->pt == w.loF->pt) return {true, w.loF};
  return {false, p};
}

DynamicHull::Cur DynamicHull::prev_(const Walk& w, Cur c) const {
  if (c.low) {
    if (c.n->prev) return {true, c.n->prev};
    // cycle start: its predecessor sits on the upper chain just above it
    ChainNode* un = upper_.find_hull(c.n->pt);
    assert(un && un->next);
    ChainNode* t = un->next;
    if (t->pt == w.loL->pt) return {true, w.loL};
    return {false, t};
  }
  ChainNode* s = c.n->next;
  if (!s) return {true, w.loL};
  if (s->pt == w.upL->pt && w.upL->pt == w.loL->pt) return {true, w.loL};
  return {false, s};
}

std::optional<DynamicHull::Cur> DynamicHull::locate(Point p) const {
  if (ChainNode* n = lower_.find_hull(p)) return Cur{true, n};
  if (ChainNode* n = upper_.find_hull(p)) return Cur{false, n};
  return std::nullopt;
}

std::size_t DynamicHull::hull_vertex_count() const {
  std::size_t L = lower_.hull_size(), U = upper_.hull_size();
  if (L == 0) return 0;
  if (L == 1) return 1;
  // chains overlap in 1 point at a shared left end, 2 along a left vertical
  // edge (both endpoints sit on both chains), 1 at a shared right end, and 0
  // along a right vertical edge; collinear sets land on 2 either way
  std::size_t c = L + U;
  c -= lower_.first()->pt == upper_.first()->pt ? 1 : 2;
  c -= lower_.last()->pt == upper_.last()->pt ? 1 : 0;
  assert(c >= 2);
  return c;
}

std::vector<Point> DynamicHull::cycle_from(const Walk& w, Cur start,
                                           std::size_t cnt) const {
  std::vector<Point> out;
  out.reserve(cnt);
  Cur c = start;
  for (std::size_t i = 0; i < cnt; ++i) {
    out.push_back(c.n->pt);
    c = next_(w, c);
  }
  assert(c.low == start.low && c.n == start.n);
  return out;
}

std::vector<Point> DynamicHull::cycle() const {
  std::size_t cnt = hull_vertex_count();
  std::vector<Point> out;
  if (cnt == 0) return out;
  if (cnt <= 2) {
    for (ChainNode* n = lower_.first(); n; n = n->next) out.push_back(n->pt);
    assert(out.size() == cnt);
    return out;
  }
  Walk w = walk();
  return cycle_from(w, Cur{true, w.loF}, cnt);
}

bool DynamicHull::on_cycle(Point p) const { return locate(p).has_value(); }

std::optional<Corner> DynamicHull::corner_at(Point apex) const {
  if (hull_vertex_count() < 3) return std::nullopt;
  auto c = locate(apex);
  if (!c) return std::nullopt;
  Walk w = walk();
  return Corner{prev_(w, *c).n->pt, apex, next_(w, *c).n->pt};
}

std::vector<Point> DynamicHull::extreme_vertices(Dir d) const {
  if (size() == 0) throw EmptyHull("extreme_vertices: no points stored");
  assert(d.x != 0 || d.y != 0);
  auto f = [&](Point q) { return i128(d.x) * q.x + i128(d.y) * q.y; };
  std::size_t cnt = hull_vertex_count();
  std::vector<Point> out;
  if (cnt <= 2) {
    std::vector<Point> cyc = cycle();
    i128 best = f(cyc[0]);
    for (const Point& q : cyc) best = std::max(best, f(q));
    for (const Point& q : cyc)
      if (f(q) == best) out.push_back(q);
    return out;
  }
  if (d.y > 0) {
    // maximizers lie on the top boundary; d*p is unimodal along it
    auto pk = upper_.peaks(f);
    for (auto it = pk.rbegin(); it != pk.rend(); ++it) out.push_back((*it)->pt);
  } else if (d.y < 0) {
    auto pk = lower_.peaks(f);
    for (ChainNode* n : pk) out.push_back(n->pt);
  } else if (d.x > 0) {
    // right extreme: bottom-right then top-right is the CCW order
    Point a = lower_.last()->pt, b = upper_.last()->pt;
    out.push_back(a);
    if (!(b == a)) out.push_back(b);
  } else {
    Point a = lower_.first()->pt, b = upper_.first()->pt;
    out.push_back(a);
    if (!(b == a)) out.push_back(b);
  }
  return out;
}

std::vector<Corner> DynamicHull::compatible_corners(const Side& s) const {
  if (degenerate()) throw StaleSide("no sides on a degenerate hull");
  auto cu = locate(s.u);
  if (!cu) throw StaleSide("not a current hull side: " + s.id().str());
  Walk w = walk();
  if (!(next_(w, *cu).n->pt == s.v))
    throw StaleSide("not a current hull side: " + s.id().str());
  std::vector<Corner> out;
  for (const Point& q : extreme_vertices(s.inward())) {
    auto c = corner_at(q);
    assert(c && is_compatible(s, *c));
    out.push_back(*c);
  }
  return out;
}

namespace {

void path_features(const std::vector<Point>& path, bool cyclic,
                   std::map<SideId, Side>& sides,
                   std::map<CornerKey, Corner>& corners) {
  std::size_t n = path.size();
  if (cyclic) {
    assert(n >= 3);
    for (std::size_t i = 0; i < n; ++i) {
      Side s = Side::through(path[i], path[(i + 1) % n]);
      sides.emplace(s.id(), s);
      Corner c{path[(i + n - 1) % n], path[i], path[(i + 1) % n]};
      corners.emplace(c.key(), c);
    }
  } else {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      Side s = Side::through(path[i], path[i + 1]);
      sides.emplace(s.id(), s);
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      Corner c{path[i - 1], path[i], path[i + 1]};
      corners.emplace(c.key(), c);
    }
  }
}

HullDiff subtract_features(const std::map<SideId, Side>& os,
                           const std::map<CornerKey, Corner>& oc,
                           const std::map<SideId, Side>& ns,
                           const std::map<CornerKey, Corner>& nc) {
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

HullDiff diff_paths(const std::vector<Point>& ow, const std::vector<Point>& nw) {
  std::map<SideId, Side> os, ns;
  std::map<CornerKey, Corner> oc, nc;
  path_features(ow, false, os, oc);
  path_features(nw, false, ns, nc);
  return subtract_features(os, oc, ns, nc);
}

}  // namespace

HullDiff DynamicHull::full_update(Point p, bool is_insert) {
  std::vector<Point> oldCycle = cycle();
  if (is_insert) {
    upper_.insert(p);
    lower_.insert(p);
  } else {
    upper_.erase(p);
    lower_.erase(p);
  }
  std::vector<Point> newCycle = cycle();
  std::map<SideId, Side> os, ns;
  std::map<CornerKey, Corner> oc, nc;
  if (oldCycle.size() >= 3) path_features(oldCycle, true, os, oc);
  if (newCycle.size() >= 3) path_features(newCycle, true, ns, nc);
  return subtract_features(os, oc, ns, nc);
}

HullDiff DynamicHull::insert(Point p) {
  assert(!contains(p));
  std::size_t oldCount = hull_vertex_count();
  auto up = upper_.plan_insert(p);
  auto lp = lower_.plan_insert(p);
  if (!up.joins && !lp.joins) {
    // strictly inside (or on the boundary of) the current hull
    upper_.insert(p);
    lower_.insert(p);
    return {};
  }

  // A vertex leaves the cycle iff it is covered in every chain it was on.
  std::set<Point> covUp(up.covered.begin(), up.covered.end());
  std::set<Point> covLo(lp.covered.begin(), lp.covered.end());
  std::set<Point> zone;
  for (const Point& q : up.covered)
    if (covLo.count(q) || !lower_.find_hull(q)) zone.insert(q);
  for (const Point& q : lp.covered)
    if (covUp.count(q) || !upper_.find_hull(q)) zone.insert(q);

  if (oldCount <= 12 || oldCount < zone.size() + 8) return full_update(p, true);

  Walk w = walk();
  Cur ls{}, rs{};
  if (!zone.empty()) {
    auto c0 = locate(*zone.begin());
    assert(c0);
    ls = *c0;
    rs = *c0;
    std::size_t guard = 0;
    while (zone.count(ls.n->pt)) {
      ls = prev_(w, ls);
      assert(++guard <= zone.size() + 1);
    }
    guard = 0;
    while (zone.count(rs.n->pt)) {
      rs = next_(w, rs);
      assert(++guard <= zone.size() + 1);
    }
  } else {
    // nothing leaves the cycle: p splices between two adjacent survivors,
    // recoverable from the planned chain neighbors of p
    Point LSp{}, RSp{};
    bool got = false;
    if (lp.joins && lp.left && lp.right) {
      LSp = *lp.left;
      RSp = *lp.right;
      got = true;
    } else if (lp.joins && !lp.left && lp.right && up.joins && up.right) {
      LSp = *up.right;  // p starts the new cycle; predecessor is up the left side
      RSp = *lp.right;
      got = true;
    } else if (lp.joins && lp.left && !lp.right && up.joins && up.left &&
               !up.right) {
      LSp = *lp.left;  // unique new rightmost vertex
      RSp = *up.left;
      got = true;
    } else if (lp.joins && lp.left && !lp.right && !up.joins && upper_.last()) {
      LSp = *lp.left;  // p becomes the bottom end of a right vertical edge
      RSp = upper_.last()->pt;
      got = true;
    } else if (!lp.joins && up.joins && up.left && up.right) {
      LSp = *up.right;  // upper leg runs in reverse chain order
      RSp = *up.left;
      got = true;
    } else if (!lp.joins && up.joins && up.left && !up.right && lower_.last()) {
      LSp = lower_.last()->pt;  // p becomes the top end of a right vertical edge
      RSp = *up.left;
      got = true;
    }
    if (!got) return full_update(p, true);
    auto lc = locate(LSp), rc = locate(RSp);
    if (!lc || !rc) return full_update(p, true);
    ls = *lc;
    rs = *rc;
  }

  Cur a1 = prev_(w, ls), a0 = prev_(w, a1);
  Cur b1 = next_(w, rs), b0 = next_(w, b1);
  std::vector<Point> ow;
  ow.reserve(zone.size() + 6);
  for (Cur c = a0;; c = next_(w, c)) {
    ow.push_back(c.n->pt);
    if (c.n == b0.n && c.low == b0.low) break;
    assert(ow.size() <= zone.size() + 6);
  }
  assert(ow.size() == zone.size() + 6);

  upper_.insert(p);
  lower_.insert(p);

  Walk w2 = walk();
  auto na = locate(ow.front());
  assert(na);
  std::vector<Point> nw;
  nw.reserve(8);
  for (Cur c = *na;; c = next_(w2, c)) {
    nw.push_back(c.n->pt);
    if (c.n->pt == ow.back()) break;
    assert(nw.size() <= 8);
  }
  assert(nw.size() == 7);
  return diff_paths(ow, nw);
}

HullDiff DynamicHull::erase(Point p) {
  assert(contains(p));
  auto loc = locate(p);
  if (!loc) {
    // interior (or collinear non-vertex) point: no feature change
    upper_.erase(p);
    lower_.erase(p);
    return {};
  }
  std::size_t oldCount = hull_vertex_count();
  if (oldCount <= 12) return full_update(p, false);

  Walk w = walk();
  Cur ls = prev_(w, *loc), rs = next_(w, *loc);
  Cur a1 = prev_(w, ls), a0 = prev_(w, a1);
  Cur b1 = next_(w, rs), b0 = next_(w, b1);
  std::vector<Point> ow = {a0.n->pt, a1.n->pt, ls.n->pt, p,
                           rs.n->pt, b1.n->pt, b0.n->pt};

  upper_.erase(p);
  lower_.erase(p);

  Walk w2 = walk();
  auto na = locate(ow.front());
  assert(na);
  std::vector<Point> nw;
  for (Cur c = *na;; c = next_(w2, c)) {
    nw.push_back(c.n->pt);
    if (c.n->pt == ow.back()) break;
    assert(nw.size() <= size() + 2);  // bounded by the re-exposed run
  }
  return diff_paths(ow, nw);
}

namespace {

// scratch CCW hull (strict vertices) for validation
std::vector<Point> scratch_cycle(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<Point> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  std::size_t lowk = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {  // upper
    while (k >= lowk && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  if (h.size() < 3) return {pts.front(), pts.back()};  // all collinear
  return h;
}

std::vector<Point> rotate_to_min(std::vector<Point> v) {
  auto it = std::min_element(v.begin(), v.end());
  std::rotate(v.begin(), it, v.end());
  return v;
}

}  // namespace

void DynamicHull::validate() const {
  upper_.validate();
  lower_.validate();
  std::vector<Point> want = scratch_cycle(upper_.stored_points());
  std::vector<Point> got = cycle();
  assert(got.size() == hull_vertex_count());
  if (want.size() <= 2) {
    assert(got.size() == want.size());
    std::vector<Point> a = got, b = want;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    assert(a == b);
    return;
  }
  assert(rotate_to_min(got) == rotate_to_min(want));
}

}  // namespace dynwidth
