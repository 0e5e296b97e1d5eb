#include "dynwidth/side_index.hpp"

#include <algorithm>
#include <cassert>

#include "dynwidth/errors.hpp"

namespace dynwidth {

struct SideIndex::Node {
  Node* l = nullptr;
  Node* r = nullptr;
  std::size_t size = 1;  // leaves below
  Key lo{}, hi{};
  HalfplaneEnvelope env;
  Side side{};  // leaf payload
  bool leaf = true;
};

int SideIndex::cmp_key(const Key& a, const Key& b) {
  int r = cmp_angle(a.n, b.n);
  if (r != 0) return r;
  if (a.id < b.id) return -1;
  return a.id == b.id ? 0 : 1;
}

SideIndex::SideIndex(double alpha)
    : alpha_(std::clamp(alpha, 0.05, 0.33)) {}

SideIndex::~SideIndex() { free_tree(root_); }

std::size_t SideIndex::size() const { return root_ ? root_->size : 0; }

SideIndex::Node* SideIndex::make_leaf(const Side& s) {
  Node* v = new Node;
  v->side = s;
  v->lo = v->hi = key_of(s);
  v->env.insert(Halfplane::of(s));
  return v;
}

void SideIndex::pull(Node* v) {
  v->size = v->l->size + v->r->size;
  v->lo = v->l->lo;
  v->hi = v->r->hi;
}

void SideIndex::free_tree(Node* v) {
  if (!v) return;
  free_tree(v->l);
  free_tree(v->r);
  delete v;
}

SideIndex::Node* SideIndex::insert_rec(Node* v, Node* nl, const Halfplane& h,
                                       std::vector<Node*>& path) {
  if (v->leaf) {
    Node* in = new Node;
    in->leaf = false;
    bool left = cmp_key(nl->lo, v->lo) < 0;
    in->l = left ? nl : v;
    in->r = left ? v : nl;
    pull(in);
    in->env.insert(Halfplane::of(in->l->side));
    in->env.insert(Halfplane::of(in->r->side));
    return in;
  }
  path.push_back(v);
  v->env.insert(h);
  if (cmp_key(nl->lo, v->l->hi) <= 0)
    v->l = insert_rec(v->l, nl, h, path);
  else
    v->r = insert_rec(v->r, nl, h, path);
  pull(v);
  return v;
}

SideIndex::Node* SideIndex::erase_rec(Node* v, const Key& k, SideId id,
                                      std::vector<Node*>& path) {
  if (v->leaf) {
    assert(cmp_key(v->lo, k) == 0);
    delete v;
    return nullptr;
  }
  path.push_back(v);
  v->env.erase(id);
  bool left = cmp_key(k, v->l->hi) <= 0;
  Node*& child = left ? v->l : v->r;
  child = erase_rec(child, k, id, path);
  if (!child) {
    // the removed leaf's parent collapses into its sibling; the leaf call
    // pushed nothing, so v is still the back of the path
    Node* other = left ? v->r : v->l;
    path.pop_back();
    delete v;
    return other;
  }
  pull(v);
  return v;
}

// Weights changed only along the recorded path, so any balance violation is
// on it. Rebuilding the topmost violator perfectly balances everything under
// it, which includes the rest of the path; nodes above it were just checked.
// The path must be the one the update actually took: re-routing by key after
// an erase can diverge from it when the erased key was a subtree maximum.
void SideIndex::rebalance_on(const std::vector<Node*>& path) {
  for (std::size_t i = 0; i < path.size(); ++i) {
    Node* v = path[i];
    double floor_w = alpha_ * double(v->size);
    if (double(v->l->size) < floor_w || double(v->r->size) < floor_w) {
      Node** ref = i == 0 ? &root_
                          : path[i - 1]->l == v ? &path[i - 1]->l
                                                : &path[i - 1]->r;
      assert(*ref == v);
      rebuild(*ref);
      return;
    }
  }
}

void SideIndex::collect(Node* v, std::vector<Side>& out) const {
  if (v->leaf) {
    out.push_back(v->side);
    return;
  }
  collect(v->l, out);
  collect(v->r, out);
}

SideIndex::Node* SideIndex::build(const std::vector<Side>& ss, std::size_t lo,
                                  std::size_t hi) {
  if (hi - lo == 1) return make_leaf(ss[lo]);
  std::size_t mid = lo + (hi - lo) / 2;
  Node* v = new Node;
  v->leaf = false;
  v->l = build(ss, lo, mid);
  v->r = build(ss, mid, hi);
  pull(v);
  for (std::size_t i = lo; i < hi; ++i) v->env.insert(Halfplane::of(ss[i]));
  return v;
}

void SideIndex::rebuild(Node*& ref) {
  std::vector<Side> ss;
  ss.reserve(ref->size);
  collect(ref, ss);
  rebuilt_ += ss.size();
  free_tree(ref);
  ref = build(ss, 0, ss.size());
}

void SideIndex::insert_side(const Side& s) {
  if (side_of_.count(s.id()))
    throw DuplicateSide("side already indexed: " + s.id().str());
  side_of_.emplace(s.id(), s);
  Node* nl = make_leaf(s);
  if (!root_) {
    root_ = nl;
    return;
  }
  std::vector<Node*> path;
  root_ = insert_rec(root_, nl, Halfplane::of(s), path);
  rebalance_on(path);
}

void SideIndex::delete_side(const Side& s) {
  auto it = side_of_.find(s.id());
  if (it == side_of_.end())
    throw UnknownSide("side not indexed: " + s.id().str());
  side_of_.erase(it);
  std::vector<Node*> path;
  root_ = erase_rec(root_, key_of(s), s.id(), path);
  rebalance_on(path);
}

void SideIndex::query(const Node* v, const Key* a, const Key* b, Point apex,
                      Cand& best) const {
  if (!v) return;
  if ((a && cmp_key(v->hi, *a) < 0) || (b && cmp_key(v->lo, *b) > 0)) return;
  if ((!a || cmp_key(*a, v->lo) <= 0) && (!b || cmp_key(v->hi, *b) <= 0)) {
    auto [h, d] = v->env.nearest(apex);
    int r = best.found ? cmp_sqdist(d, best.d) : -1;
    if (r < 0 || (r == 0 && h.id < best.id)) {
      best.found = true;
      best.id = h.id;
      best.d = d;
    }
    return;
  }
  // a leaf's range is a single key, so partial overlap implies internal
  assert(!v->leaf);
  query(v->l, a, b, apex, best);
  query(v->r, a, b, apex, best);
}

std::optional<std::pair<Side, SquaredDistance>>
SideIndex::nearest_compatible_side(const Corner& c) const {
  if (!root_) return std::nullopt;
  NormalCone cone = normal_cone(c);
  // compatible outward normals form the closed arc [-lo, -hi]
  Dir a1{-cone.lo.x, -cone.lo.y};
  Dir a2{-cone.hi.x, -cone.hi.y};
  Key ka{a1, SideId{0, 0}};
  Key kb{a2, SideId{~u64(0), ~u64(0)}};
  Cand best;
  if (cmp_angle(a1, a2) > 0) {
    // arc crosses the cut: [a1, wrap) plus [cut, a2]
    query(root_, &ka, nullptr, c.apex, best);
    query(root_, nullptr, &kb, c.apex, best);
  } else {
    query(root_, &ka, &kb, c.apex, best);
  }
  if (!best.found) return std::nullopt;
  auto it = side_of_.find(best.id);
  assert(it != side_of_.end());
  assert(is_compatible(it->second, c));
  return std::pair(it->second, best.d);
}

void SideIndex::validate() const {
  // in-order strictly increasing keys, exact sizes and spans, balance at
  // every internal node, and envelope contents equal to subtree sides
  struct Walker {
    const SideIndex* ix;
    std::vector<Side> order;

    void walk(const Node* v) {
      if (v->leaf) {
        assert(v->size == 1);
        assert(cmp_key(v->lo, v->hi) == 0);
        check_env(v);
        order.push_back(v->side);
        return;
      }
      assert(v->l && v->r);
      assert(v->size == v->l->size + v->r->size);
      double floor_w = ix->alpha_ * double(v->size);
      assert(double(v->l->size) >= floor_w && double(v->r->size) >= floor_w);
      assert(cmp_key(v->lo, v->l->lo) == 0 && cmp_key(v->hi, v->r->hi) == 0);
      assert(cmp_key(v->l->hi, v->r->lo) < 0);
      std::size_t before = order.size();
      walk(v->l);
      walk(v->r);
      assert(order.size() - before == v->size);
      check_env(v);
    }

    void check_env(const Node* v) {
      std::vector<Side> want;
      want.reserve(v->size);
      ix->collect(const_cast<Node*>(v), want);
      std::vector<Halfplane> got = v->env.contents();
      assert(got.size() == want.size());
      auto by_id_s = [](const Side& x, const Side& y) { return x.id() < y.id(); };
      auto by_id_h = [](const Halfplane& x, const Halfplane& y) {
        return x.id < y.id;
      };
      std::sort(want.begin(), want.end(), by_id_s);
      std::sort(got.begin(), got.end(), by_id_h);
      for (std::size_t i = 0; i < got.size(); ++i) {
        assert(got[i].id == want[i].id());
        assert(got[i].a == want[i].a && got[i].b == want[i].b &&
               got[i].c == want[i].c);
      }
    }
  };
  if (!root_) {
    assert(side_of_.empty());
    return;
  }
  Walker w{this, {}};
  w.walk(root_);
  assert(w.order.size() == side_of_.size());
  for (std::size_t i = 1; i < w.order.size(); ++i)
    assert(cmp_key(key_of(w.order[i - 1]), key_of(w.order[i])) < 0);
}

}  // namespace dynwidth
