#include "dynwidth/chain.hpp"

#include <algorithm>
#include <cassert>

namespace dynwidth::detail {

namespace {

u32 sz_of(const ChainNode* t) { return t ? t->sz : 0; }
void pull(ChainNode* t) { t->sz = 1 + sz_of(t->l) + sz_of(t->r); }

ChainNode* leftmost(ChainNode* t) {
  while (t->l) t = t->l;
  return t;
}
ChainNode* rightmost(ChainNode* t) {
  while (t->r) t = t->r;
  return t;
}

void free_tree(ChainNode* t) {
  if (!t) return;
  free_tree(t->l);
  free_tree(t->r);
  delete t;
}

void split_raw(ChainNode* t, i64 k, bool leq, ChainNode*& a, ChainNode*& b) {
  if (!t) {
    a = b = nullptr;
    return;
  }
  if (leq ? t->key <= k : t->key < k) {
    split_raw(t->r, k, leq, t->r, b);
    a = t;
    pull(a);
  } else {
    split_raw(t->l, k, leq, a, t->l);
    b = t;
    pull(b);
  }
}

// keys <= k (or < k when leq is false) go left; cuts the chain link at the
// boundary so each part's linked list covers exactly its own nodes.
void split(ChainNode* t, i64 k, bool leq, ChainNode*& a, ChainNode*& b) {
  split_raw(t, k, leq, a, b);
  if (a && b) {
    ChainNode* ra = rightmost(a);
    ChainNode* lb = leftmost(b);
    assert(ra->next == lb && lb->prev == ra);
    ra->next = nullptr;
    lb->prev = nullptr;
  }
}

ChainNode* join_raw(ChainNode* a, ChainNode* b) {
  if (!a) return b;
  if (!b) return a;
  if (a->prio > b->prio) {
    a->r = join_raw(a->r, b);
    pull(a);
    return a;
  }
  b->l = join_raw(a, b->l);
  pull(b);
  return b;
}

// all keys of a below all keys of b; relinks the boundary
ChainNode* join(ChainNode* a, ChainNode* b) {
  if (a && b) {
    ChainNode* ra = rightmost(a);
    ChainNode* lb = leftmost(b);
    assert(!ra->next && !lb->prev);
    ra->next = lb;
    lb->prev = ra;
  }
  return join_raw(a, b);
}

// sign of (q - p) x (r - p) in sheared coordinates; key diffs need i128
i128 orient3(const ChainNode* p, const ChainNode* q, const ChainNode* r) {
  i128 qx = i128(q->key) - p->key, qy = i128(q->my) - p->my;
  i128 rx = i128(r->key) - p->key, ry = i128(r->my) - p->my;
  return qx * ry - qy * rx;
}

enum class St { Left, Right, Tan };

// Contact classification against the current candidate line (a, b), using
// true chain neighbors. Canonical bridge: leftmost contact on the left
// chain, rightmost on the right, so collinear runs collapse deterministically
// and the merged chain stays strictly convex.
St status_a(const ChainNode* a, const ChainNode* b) {
  if (a->next && orient3(a, b, a->next) > 0) return St::Right;
  if (a->prev && orient3(a, b, a->prev) >= 0) return St::Left;
  return St::Tan;
}
St status_b(const ChainNode* a, const ChainNode* b) {
  if (b->prev && orient3(a, b, b->prev) > 0) return St::Left;
  if (b->next && orient3(a, b, b->next) >= 0) return St::Right;
  return St::Tan;
}

struct Ln {
  i128 A, B, C;  // A x + B y + C = 0 through two mapped points
};

Ln line_through(const ChainNode* p, const ChainNode* q) {
  i128 A = i128(q->my) - p->my;
  i128 B = i128(p->key) - q->key;
  i128 C = -(A * p->key + B * p->my);
  return {A, B, C};
}

// Two-finger bridge search over separate treaps A (keys <= X) and B
// (keys > X). Fingers descend; at most depth(A) + depth(B) steps. In the
// both-concave case the abscissa m of the supporting lines' intersection
// against X decides which finger is provably wrong:
//   m <= X  forces the left contact strictly right of a,
//   m >  X  forces the right contact strictly left of b.
std::pair<ChainNode*, ChainNode*> bridge(ChainNode* A, ChainNode* B, i64 X) {
  ChainNode* a = A;
  ChainNode* b = B;
  int guard = 0;
  for (;;) {
    assert(++guard < 300);
    St sa = status_a(a, b);
    if (sa == St::Left) {
      a = a->l;
      assert(a);
      continue;
    }
    St sb = status_b(a, b);
    if (sb == St::Right) {
      b = b->r;
      assert(b);
      continue;
    }
    if (sa == St::Tan && sb == St::Tan) return {a, b};
    if (sa == St::Right && sb == St::Tan) {
      a = a->r;
      assert(a);
      continue;
    }
    if (sa == St::Tan && sb == St::Left) {
      b = b->l;
      assert(b);
      continue;
    }
    // (Right, Left): neither local tangent is global; cut by separator
    Ln la = line_through(a, a->next);
    Ln lb = line_through(b->prev, b);
    i128 D = la.A * lb.B - lb.A * la.B;
    assert(D != 0);  // slopes straddle slope(a, b) here
    int256_t Nx = int256_t(la.B) * int256_t(lb.C) - int256_t(lb.B) * int256_t(la.C);
    int256_t XD = int256_t(X) * int256_t(D);
    bool m_le_X = D > 0 ? Nx <= XD : Nx >= XD;
    if (m_le_X) {
      a = a->r;
      assert(a);
    } else {
      b = b->l;
      assert(b);
    }
  }
}

}  // namespace

struct HullChain::XNode {
  XNode* l = nullptr;
  XNode* r = nullptr;
  u32 size = 1;
  i64 max_key = 0;
  bool leaf = true;
  Point pt{};
  // internal nodes: the recorded bridge and the hidden chain pieces
  i64 bridge_key = 0;
  ChainNode* rest_l = nullptr;
  ChainNode* rest_r = nullptr;
};

namespace {
// min(|l|, |r|) >= alpha * size with alpha = 1/4; rebuild on violation
bool unbalanced(const HullChain::XNode* v);
}  // namespace

ChainNode* HullChain::make_node(Point p, i64 k) const {
  ChainNode* n = new ChainNode;
  n->key = k;
  n->my = mapped_y(p);
  n->pt = p;
  n->prio = mix64(u64(k));
  return n;
}

std::pair<ChainNode*, ChainNode*> HullChain::down(XNode* v, ChainNode* u) {
  ChainNode *akeep, *bkeep;
  split(u, v->bridge_key, true, akeep, bkeep);
  ChainNode* ul = join(akeep, v->rest_l);
  ChainNode* ur = join(v->rest_r, bkeep);
  v->rest_l = v->rest_r = nullptr;
  return {ul, ur};
}

ChainNode* HullChain::up(XNode* v, ChainNode* ul, ChainNode* ur) {
  auto [as, bs] = bridge(ul, ur, v->l->max_key);
  v->bridge_key = as->key;
  ChainNode *akeep, *arest, *brest, *bkeep;
  split(ul, as->key, true, akeep, arest);
  split(ur, bs->key, false, brest, bkeep);
  v->rest_l = arest;
  v->rest_r = brest;
  return join(akeep, bkeep);
}

ChainNode* HullChain::insert_rec(XNode*& v, ChainNode* u, Point p, i64 k) {
  if (v->leaf) {
    assert(v->max_key != k);
    XNode* nl = new XNode;
    nl->pt = p;
    nl->max_key = k;
    XNode* par = new XNode;
    par->leaf = false;
    ChainNode* np = make_node(p, k);
    ChainNode *ul, *ur;
    if (k < v->max_key) {
      par->l = nl;
      par->r = v;
      ul = np;
      ur = u;
    } else {
      par->l = v;
      par->r = nl;
      ul = u;
      ur = np;
    }
    par->size = 2;
    par->max_key = par->r->max_key;
    v = par;
    return up(par, ul, ur);
  }
  auto [ul, ur] = down(v, u);
  if (k <= v->l->max_key)
    ul = insert_rec(v->l, ul, p, k);
  else
    ur = insert_rec(v->r, ur, p, k);
  v->size = v->l->size + v->r->size;
  v->max_key = v->r->max_key;
  if (unbalanced(v)) return rebuild(v, ul, ur);
  return up(v, ul, ur);
}

ChainNode* HullChain::erase_rec(XNode*& v, ChainNode* u, i64 k) {
  if (v->leaf) {
    assert(v->max_key == k);
    assert(u && !u->l && !u->r);
    delete u;
    delete v;
    v = nullptr;
    return nullptr;
  }
  auto [ul, ur] = down(v, u);
  if (k <= v->l->max_key) {
    ul = erase_rec(v->l, ul, k);
    if (!v->l) {
      XNode* keep = v->r;
      delete v;
      v = keep;
      return ur;
    }
  } else {
    ur = erase_rec(v->r, ur, k);
    if (!v->r) {
      XNode* keep = v->l;
      delete v;
      v = keep;
      return ul;
    }
  }
  v->size = v->l->size + v->r->size;
  v->max_key = v->r->max_key;
  if (unbalanced(v)) return rebuild(v, ul, ur);
  return up(v, ul, ur);
}

namespace {
bool unbalanced(const HullChain::XNode* v) {
  u32 lo = std::min(v->l->size, v->r->size);
  return lo * 4 < v->size;
}
}  // namespace

ChainNode* HullChain::rebuild(XNode*& v, ChainNode* ul, ChainNode* ur) {
  free_tree(ul);
  free_tree(ur);
  std::vector<Point> pts;
  pts.reserve(v->size);
  collect(v, pts);
  auto [nv, nu] = build(pts, 0, pts.size());
  v = nv;
  return nu;
}

void HullChain::collect(XNode* x, std::vector<Point>& out) {
  if (x->leaf) {
    out.push_back(x->pt);
    delete x;
    return;
  }
  free_tree(x->rest_l);
  free_tree(x->rest_r);
  collect(x->l, out);
  collect(x->r, out);
  delete x;
}

std::pair<HullChain::XNode*, ChainNode*> HullChain::build(
    const std::vector<Point>& pts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) {
    XNode* x = new XNode;
    x->pt = pts[lo];
    x->max_key = key_of(pts[lo]);
    return {x, make_node(pts[lo], x->max_key)};
  }
  std::size_t mid = lo + (hi - lo) / 2;
  auto [lx, lu] = build(pts, lo, mid);
  auto [rx, ru] = build(pts, mid, hi);
  XNode* x = new XNode;
  x->leaf = false;
  x->l = lx;
  x->r = rx;
  x->size = lx->size + rx->size;
  x->max_key = rx->max_key;
  ChainNode* u = up(x, lu, ru);
  return {x, u};
}

void HullChain::free_x(XNode* x) {
  if (!x) return;
  if (!x->leaf) {
    free_tree(x->rest_l);
    free_tree(x->rest_r);
    free_x(x->l);
    free_x(x->r);
  }
  delete x;
}

HullChain::~HullChain() {
  free_tree(hull_);
  free_x(root_);
}

void HullChain::insert(Point p) {
  i64 k = key_of(p);
  ++count_;
  if (!root_) {
    root_ = new XNode;
    root_->pt = p;
    root_->max_key = k;
    hull_ = make_node(p, k);
    return;
  }
  hull_ = insert_rec(root_, hull_, p, k);
}

void HullChain::erase(Point p) {
  assert(root_);
  --count_;
  hull_ = erase_rec(root_, hull_, key_of(p));
}

bool HullChain::stores(Point p) const {
  i64 k = key_of(p);
  const XNode* v = root_;
  if (!v) return false;
  while (!v->leaf) v = k <= v->l->max_key ? v->l : v->r;
  return v->max_key == k;
}

std::size_t HullChain::hull_size() const { return sz_of(hull_); }

ChainNode* HullChain::first() const { return hull_ ? leftmost(hull_) : nullptr; }

ChainNode* HullChain::last() const { return hull_ ? rightmost(hull_) : nullptr; }

ChainNode* HullChain::find_hull(Point p) const {
  i64 k = key_of(p);
  ChainNode* t = hull_;
  while (t) {
    if (t->key == k) return t;
    t = k < t->key ? t->l : t->r;
  }
  return nullptr;
}

std::vector<Point> HullChain::hull_points() const {
  std::vector<Point> out;
  out.reserve(hull_size());
  for (ChainNode* n = first(); n; n = n->next) out.push_back(n->pt);
  return out;
}

HullChain::InsertPlan HullChain::plan_insert(Point p) {
  InsertPlan plan;
  i64 k = key_of(p);
  if (!hull_) {
    plan.joins = true;
    return plan;
  }
  ChainNode *L, *R;
  split(hull_, k, true, L, R);
  ChainNode tmp{};
  tmp.key = k;
  tmp.my = mapped_y(p);
  tmp.pt = p;
  if (L && R) {
    ChainNode* l0 = rightmost(L);
    ChainNode* r0 = leftmost(R);
    plan.joins = orient3(l0, r0, &tmp) > 0;  // strictly outside the edge
    if (plan.joins) {
      auto [as, pa] = bridge(L, &tmp, k - 1);
      (void)pa;
      plan.left = as->pt;
      for (ChainNode* w = as->next; w; w = w->next) plan.covered.push_back(w->pt);
      auto [pb, bs] = bridge(&tmp, R, k);
      (void)pb;
      plan.right = bs->pt;
      for (ChainNode* w = bs->prev; w; w = w->prev) plan.covered.push_back(w->pt);
    }
  } else if (!L) {
    plan.joins = true;  // new leftmost endpoint always a chain vertex
    auto [pb, bs] = bridge(&tmp, R, k);
    (void)pb;
    plan.right = bs->pt;
    for (ChainNode* w = bs->prev; w; w = w->prev) plan.covered.push_back(w->pt);
  } else {
    plan.joins = true;
    auto [as, pa] = bridge(L, &tmp, k - 1);
    (void)pa;
    plan.left = as->pt;
    for (ChainNode* w = as->next; w; w = w->next) plan.covered.push_back(w->pt);
  }
  hull_ = join(L, R);  // same keys, same priorities: original shape restored
  return plan;
}

std::vector<ChainNode*> HullChain::peaks(
    const std::function<i128(Point)>& f) const {
  std::vector<ChainNode*> out;
  if (!hull_) return out;
  ChainNode* cur = hull_;
  for (;;) {
    i128 fc = f(cur->pt);
    if (cur->next && f(cur->next->pt) > fc) {
      cur = cur->r;  // the peak is strictly later in the chain
      assert(cur);
      continue;
    }
    if (cur->prev && f(cur->prev->pt) > fc) {
      cur = cur->l;
      assert(cur);
      continue;
    }
    break;
  }
  if (cur->prev && f(cur->prev->pt) == f(cur->pt)) out.push_back(cur->prev);
  out.push_back(cur);
  if (cur->next && f(cur->next->pt) == f(cur->pt)) out.push_back(cur->next);
  return out;
}

std::vector<Point> HullChain::stored_points() const {
  std::vector<Point> out;
  out.reserve(count_);
  struct Rec {
    static void go(const XNode* x, std::vector<Point>& o) {
      if (!x) return;
      if (x->leaf) {
        o.push_back(x->pt);
        return;
      }
      go(x->l, o);
      go(x->r, o);
    }
  };
  Rec::go(root_, out);
  return out;
}

namespace {

// scratch upper hull of mapped points sorted by key; strict vertices only
std::vector<std::pair<i64, i64>> scratch_hull(std::vector<std::pair<i64, i64>> m) {
  std::sort(m.begin(), m.end());
  std::vector<std::pair<i64, i64>> h;
  for (const auto& q : m) {
    while (h.size() >= 2) {
      const auto& a = h[h.size() - 2];
      const auto& b = h[h.size() - 1];
      i128 cr = (i128(b.first) - a.first) * (i128(q.second) - a.second) -
                (i128(b.second) - a.second) * (i128(q.first) - a.first);
      if (cr >= 0)  // b not strictly above the chord: drop it
        h.pop_back();
      else
        break;
    }
    h.push_back(q);
  }
  return h;
}

void check_treap(const ChainNode* t, const ChainNode* par, std::size_t& n,
                 std::vector<i64>& inorder) {
  if (!t) return;
  if (par) assert(par->prio >= t->prio);
  assert(t->sz == 1 + sz_of(t->l) + sz_of(t->r));
  check_treap(t->l, t, n, inorder);
  ++n;
  inorder.push_back(t->key);
  check_treap(t->r, t, n, inorder);
}

std::size_t count_rests(const HullChain::XNode* x);

}  // namespace

void HullChain::validate() const {
  // hull equals a scratch recomputation over the stored points
  std::vector<std::pair<i64, i64>> m;
  for (const Point& p : stored_points()) m.push_back({key_of(p), mapped_y(p)});
  auto want = scratch_hull(std::move(m));
  auto got = hull_points();
  assert(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    assert(key_of(got[i]) == want[i].first);
    assert(mapped_y(got[i]) == want[i].second);
  }
  // treap shape, sizes, chain links; linked order matches treap in-order
  std::size_t n = 0;
  std::vector<i64> inorder;
  check_treap(hull_, nullptr, n, inorder);
  assert(n == hull_size());
  const ChainNode* prev = nullptr;
  std::size_t walked = 0;
  for (const ChainNode* c = first(); c; c = c->next) {
    assert(c->prev == prev);
    if (prev) assert(prev->key < c->key);
    assert(walked < inorder.size() && inorder[walked] == c->key);
    prev = c;
    ++walked;
  }
  assert(walked == n);
  // no chain node lost: visible hull plus hidden rests account for all
  assert(n + count_rests(root_) == count_);
}

namespace {
std::size_t count_rests(const HullChain::XNode* x) {
  if (!x || x->leaf) return 0;
  return sz_of(x->rest_l) + sz_of(x->rest_r) + count_rests(x->l) +
         count_rests(x->r);
}
}  // namespace

}  // namespace dynwidth::detail
