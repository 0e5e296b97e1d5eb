#include "dynwidth/envelope.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "dynwidth/errors.hpp"

namespace dynwidth {

namespace {

constexpr std::size_t kLeaf = 8;
constexpr double kPi = 3.14159265358979323846;

// signed offset of the boundary line at q, exact; |g| < 2^63.6 fits i128
i128 offset_at(const Halfplane& h, Point q) {
  return i128(h.a) * q.x + i128(h.b) * q.y + h.c;
}

}  // namespace

HalfplaneEnvelope::Entry HalfplaneEnvelope::make_entry(const Halfplane& h) {
  Entry e;
  e.h = h;
  double nrm = std::hypot(double(h.a), double(h.b));
  double out = std::atan2(double(-h.b), double(-h.a));  // outward angle
  if (out < 0) out += 2 * kPi;                          // into [0, 2pi)
  e.theta = out + kPi;                                  // inward, [pi, 3pi)
  e.chat = double(h.c) / nrm;
  return e;
}

void HalfplaneEnvelope::sort_block(Block& b) {
  std::sort(b.es.begin(), b.es.end(), [](const Entry& x, const Entry& y) {
    int r = cmp_angle(Dir{-x.h.a, -x.h.b}, Dir{-y.h.a, -y.h.b});
    if (r != 0) return r < 0;
    return x.h.id < y.h.id;
  });
}

void HalfplaneEnvelope::build_sums(Block& b, std::size_t node, std::size_t lo,
                                   std::size_t hi) {
  Summary s;
  s.tlo = std::numeric_limits<double>::infinity();
  s.thi = -s.tlo;
  s.hlo = s.tlo;
  for (std::size_t i = lo; i < hi; ++i) {
    s.tlo = std::min(s.tlo, b.es[i].theta);
    s.thi = std::max(s.thi, b.es[i].theta);
    s.hlo = std::min(s.hlo, b.es[i].chat);
  }
  s.tlo -= 1e-7;  // angle pad swallows atan2 rounding
  s.thi += 1e-7;
  b.sums[node] = s;
  if (hi - lo <= kLeaf) return;
  std::size_t mid = lo + (hi - lo) / 2;
  build_sums(b, 2 * node, lo, mid);
  build_sums(b, 2 * node + 1, mid, hi);
}

// Sound lower bound on the distance any member of the summarized range can
// have from q: min over the padded normal-angle arc of (unit normal . q)
// plus the minimum origin offset, minus slack dominating all float error.
static double lb_of(double tlo, double thi, double hlo, Point q, double qn,
                    double phi) {
  bool anti = false;
  for (int k = 0; k < 3 && !anti; ++k) {
    double cand = phi + 2 * kPi * k;
    if (cand >= tlo && cand <= thi) anti = true;
  }
  double md;
  if (anti) {
    md = -qn;
  } else {
    double dlo = std::cos(tlo) * double(q.x) + std::sin(tlo) * double(q.y);
    double dhi = std::cos(thi) * double(q.x) + std::sin(thi) * double(q.y);
    md = std::min(dlo, dhi);
  }
  return hlo + md - (1e-2 + 1e-9 * (qn + std::abs(hlo)));
}

void HalfplaneEnvelope::scan(const Entry* es, std::size_t n, Point q,
                             Best& best) {
  for (std::size_t i = 0; i < n; ++i) {
    const Halfplane& h = es[i].h;
    i128 g = offset_at(h, q);
    if (g < 0)
      throw PreconditionViolated("query point outside halfplane " +
                                 h.id.str());
    int256_t num = int256_t(g) * g;
    int256_t den = int256_t(h.a) * h.a + int256_t(h.b) * h.b;
    bool take;
    if (!best.found) {
      take = true;
    } else {
      int512_t lhs = int512_t(num) * best.den;
      int512_t rhs = int512_t(best.num) * den;
      take = lhs < rhs || (lhs == rhs && h.id < best.h.id);
    }
    if (take) {
      best.found = true;
      best.num = num;
      best.den = den;
      best.h = h;
      best.upper =
          std::sqrt(num.convert_to<double>() / den.convert_to<double>()) *
              (1 + 1e-9) +
          1e-9;
    }
  }
}

void HalfplaneEnvelope::descend(const Block& b, std::size_t node,
                                std::size_t lo, std::size_t hi, Point q,
                                double qn, double phi, Best& best) {
  const Summary& s = b.sums[node];
  if (best.found && lb_of(s.tlo, s.thi, s.hlo, q, qn, phi) > best.upper)
    return;
  if (hi - lo <= kLeaf) {
    scan(b.es.data() + lo, hi - lo, q, best);
    return;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  const Summary& l = b.sums[2 * node];
  const Summary& r = b.sums[2 * node + 1];
  double ll = lb_of(l.tlo, l.thi, l.hlo, q, qn, phi);
  double lr = lb_of(r.tlo, r.thi, r.hlo, q, qn, phi);
  if (ll <= lr) {
    descend(b, 2 * node, lo, mid, q, qn, phi, best);
    descend(b, 2 * node + 1, mid, hi, q, qn, phi, best);
  } else {
    descend(b, 2 * node + 1, mid, hi, q, qn, phi, best);
    descend(b, 2 * node, lo, mid, q, qn, phi, best);
  }
}

std::size_t HalfplaneEnvelope::target_block() const {
  double r = std::ceil(std::sqrt(double(live_ + 1)));
  return std::max<std::size_t>(16, std::size_t(r));
}

void HalfplaneEnvelope::compile_buffer() {
  Block b;
  b.es = std::move(buffer_);
  buffer_.clear();
  sort_block(b);
  b.sums.assign(std::max<std::size_t>(2, 4 * b.es.size()), Summary{});
  build_sums(b, 1, 0, b.es.size());
  int idx = int(blocks_.size());
  for (const Entry& e : b.es) loc_[e.h.id] = idx;
  blocks_.push_back(std::move(b));
}

void HalfplaneEnvelope::rebuild_all() {
  std::vector<Entry> all = std::move(buffer_);
  buffer_.clear();
  for (Block& b : blocks_)
    for (Entry& e : b.es) all.push_back(std::move(e));
  blocks_.clear();
  loc_.clear();
  erased_ = 0;
  std::size_t B = target_block();
  std::size_t i = 0;
  while (all.size() - i >= B) {
    Block b;
    b.es.assign(all.begin() + i, all.begin() + i + B);
    i += B;
    sort_block(b);
    b.sums.assign(std::max<std::size_t>(2, 4 * b.es.size()), Summary{});
    build_sums(b, 1, 0, b.es.size());
    int idx = int(blocks_.size());
    for (const Entry& e : b.es) loc_[e.h.id] = idx;
    blocks_.push_back(std::move(b));
  }
  for (; i < all.size(); ++i) {
    loc_[all[i].h.id] = -1;
    buffer_.push_back(std::move(all[i]));
  }
}

void HalfplaneEnvelope::insert(const Halfplane& h) {
  assert(h.a != 0 || h.b != 0);
  if (loc_.count(h.id)) throw DuplicateId("halfplane already present: " + h.id.str());
  buffer_.push_back(make_entry(h));
  loc_[h.id] = -1;
  ++live_;
  if (buffer_.size() > target_block()) compile_buffer();
}

void HalfplaneEnvelope::erase(SideId id) {
  auto it = loc_.find(id);
  if (it == loc_.end()) throw UnknownId("halfplane not present: " + id.str());
  int where = it->second;
  loc_.erase(it);
  if (where < 0) {
    auto bit = std::find_if(buffer_.begin(), buffer_.end(),
                            [&](const Entry& e) { return e.h.id == id; });
    assert(bit != buffer_.end());
    *bit = std::move(buffer_.back());
    buffer_.pop_back();
  } else {
    Block& b = blocks_[std::size_t(where)];
    auto bit = std::find_if(b.es.begin(), b.es.end(),
                            [&](const Entry& e) { return e.h.id == id; });
    assert(bit != b.es.end());
    b.es.erase(bit);
    b.sums.assign(std::max<std::size_t>(2, 4 * b.es.size()), Summary{});
    if (!b.es.empty()) build_sums(b, 1, 0, b.es.size());
  }
  --live_;
  ++erased_;
  if (erased_ > live_ || blocks_.size() > 2 * (live_ / target_block() + 2))
    rebuild_all();
}

std::pair<Halfplane, SquaredDistance> HalfplaneEnvelope::nearest(
    Point q) const {
  if (live_ == 0) throw NoHalfplanes("nearest on an empty halfplane set");
  Best best;
  best.upper = std::numeric_limits<double>::infinity();
  double qn = std::hypot(double(q.x), double(q.y));
  double phi = std::atan2(double(-q.y), double(-q.x));
  scan(buffer_.data(), buffer_.size(), q, best);
  for (const Block& b : blocks_) {
    if (b.es.empty()) continue;
    descend(b, 1, 0, b.es.size(), q, qn, phi, best);
  }
  assert(best.found);
  return {best.h, SquaredDistance::ratio(best.num, best.den)};
}

std::vector<Halfplane> HalfplaneEnvelope::contents() const {
  std::vector<Halfplane> out;
  out.reserve(live_);
  for (const Entry& e : buffer_) out.push_back(e.h);
  for (const Block& b : blocks_)
    for (const Entry& e : b.es) out.push_back(e.h);
  return out;
}

}  // namespace dynwidth
