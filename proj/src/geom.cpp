#include "dynwidth/geom.hpp"

#include <cassert>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace dynwidth {

i128 cross(Point p, Point q, Point r) {
  return i128(q.x - p.x) * (r.y - p.y) - i128(q.y - p.y) * (r.x - p.x);
}

Orient orientation(Point p, Point q, Point r) {
  i128 c = cross(p, q, r);
  if (c > 0) return Orient::CCW;
  if (c < 0) return Orient::CW;
  return Orient::Collinear;
}

u64 pack_point(Point p) {
  assert(p.x >= -kCoordBound && p.x <= kCoordBound);
  assert(p.y >= -kCoordBound && p.y <= kCoordBound);
  return (u64(p.x + kCoordBound) << 32) | u64(p.y + kCoordBound);
}

static Point unpack_point(u64 k) {
  return Point{i64(k >> 32) - kCoordBound, i64(k & 0xffffffffULL) - kCoordBound};
}

std::string SideId::str() const {
  Point a = unpack_point(u), b = unpack_point(v);
  return "((" + std::to_string(a.x) + "," + std::to_string(a.y) + ")->(" +
         std::to_string(b.x) + "," + std::to_string(b.y) + "))";
}

Side Side::through(Point u, Point v) {
  assert(!(u == v));
  Side s;
  s.u = u;
  s.v = v;
  s.a = u.y - v.y;
  s.b = v.x - u.x;
  // c fits i64: |a*u.x + b*u.y| <= 2*2^31*2^30 = 2^62
  s.c = -(s.a * u.x + s.b * u.y);
  return s;
}

i128 signed_offset(const Side& s, Point q) {
  return i128(s.a) * q.x + i128(s.b) * q.y + s.c;
}

bool is_compatible(const Side& s, const Corner& c) {
  i128 dp = i128(s.a) * (c.prev.x - c.apex.x) + i128(s.b) * (c.prev.y - c.apex.y);
  i128 dn = i128(s.a) * (c.next.x - c.apex.x) + i128(s.b) * (c.next.y - c.apex.y);
  return dp <= 0 && dn <= 0;
}

SquaredDistance SquaredDistance::infinite() {
  SquaredDistance d;
  d.inf_ = true;
  return d;
}

SquaredDistance SquaredDistance::ratio(int256_t num, int256_t den) {
  assert(den > 0);
  assert(num >= 0);
  SquaredDistance d;
  d.num_ = std::move(num);
  d.den_ = std::move(den);
  return d;
}

SquaredDistance SquaredDistance::canonical() const {
  if (inf_) return *this;
  SquaredDistance d;
  int256_t g = boost::multiprecision::gcd(num_, den_);
  if (g == 0) g = 1;  // num == 0: keep den as 1
  if (num_ == 0) {
    d.num_ = 0;
    d.den_ = 1;
  } else {
    d.num_ = num_ / g;
    d.den_ = den_ / g;
  }
  return d;
}

std::string SquaredDistance::str() const {
  if (inf_) return "inf";
  SquaredDistance c = canonical();
  return c.num_.str() + "/" + c.den_.str();
}

double SquaredDistance::root_double() const {
  if (inf_) return std::numeric_limits<double>::infinity();
  using F = boost::multiprecision::cpp_bin_float_50;
  F v = sqrt(F(num_) / F(den_));
  return v.convert_to<double>();
}

int cmp_sqdist(const SquaredDistance& a, const SquaredDistance& b) {
  if (a.infinite_value() || b.infinite_value()) {
    if (a.infinite_value() && b.infinite_value()) return 0;
    return a.infinite_value() ? 1 : -1;
  }
  // cross multiplication in int512: |num| < 2^126, |den| <= 2^63
  int512_t lhs = int512_t(a.num()) * int512_t(b.den());
  int512_t rhs = int512_t(b.num()) * int512_t(a.den());
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

SquaredDistance squared_distance(const Side& s, const Corner& c) {
  if (!is_compatible(s, c)) return SquaredDistance::infinite();
  i128 g = signed_offset(s, c.apex);
  // distance to the line is |g| / sqrt(a^2+b^2); squared = g^2 / (a^2+b^2)
  int256_t num = int256_t(g) * int256_t(g);
  int256_t den = int256_t(s.a) * s.a + int256_t(s.b) * s.b;
  return SquaredDistance::ratio(std::move(num), std::move(den));
}

int quadrant(Dir d) {
  assert(d.x != 0 || d.y != 0);
  if (d.x > 0 && d.y >= 0) return 0;
  if (d.x <= 0 && d.y > 0) return 1;
  if (d.x < 0 && d.y <= 0) return 2;
  return 3;
}

int cmp_angle(Dir a, Dir b) {
  int qa = quadrant(a), qb = quadrant(b);
  if (qa != qb) return qa < qb ? -1 : 1;
  // same quadrant spans < 90 degrees: cross sign orders it
  i128 cr = i128(a.x) * b.y - i128(a.y) * b.x;
  if (cr > 0) return -1;  // b is CCW of a
  if (cr < 0) return 1;
  return 0;
}

NormalCone normal_cone(const Corner& c) {
  NormalCone nc;
  nc.lo = Dir{c.apex.y - c.prev.y, c.prev.x - c.apex.x};
  nc.hi = Dir{c.next.y - c.apex.y, c.apex.x - c.next.x};
  return nc;
}

}  // namespace dynwidth
