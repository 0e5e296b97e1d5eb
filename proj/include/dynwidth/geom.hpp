#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>

#include "dynwidth/ints.hpp"

namespace dynwidth {

// Coordinate contract: |x|, |y| <= 2^30. Every internal bound below is sized
// from this, so all predicates stay exact in fixed-width integers:
//   cross products fit i128, line offsets fit i128, squared distances fit
//   int256, and squared-distance comparisons fit int512.
inline constexpr i64 kCoordBound = i64(1) << 30;

struct Point {
  i64 x = 0;
  i64 y = 0;

  friend bool operator==(const Point&, const Point&) = default;
  // lexicographic (x, y)
  friend auto operator<=>(const Point&, const Point&) = default;
};

// Direction vector (normals, cone bounds). Never the zero vector.
struct Dir {
  i64 x = 0;
  i64 y = 0;

  friend bool operator==(const Dir&, const Dir&) = default;
};

i128 cross(Point p, Point q, Point r);  // (q-p) x (r-p)

enum class Orient { CW = -1, Collinear = 0, CCW = 1 };

Orient orientation(Point p, Point q, Point r);

// Order-preserving packing of a point into 64 bits: pack(p) < pack(q) iff
// p < q lexicographically. Relies on the coordinate contract.
u64 pack_point(Point p);

// Value identity of a directed hull edge: packed endpoints, ordered
// lexicographically by (u.x, u.y, v.x, v.y).
struct SideId {
  u64 u = 0;
  u64 v = 0;

  friend bool operator==(const SideId&, const SideId&) = default;
  friend auto operator<=>(const SideId&, const SideId&) = default;

  std::string str() const;
};

// Value identity of a corner: packed (prev, apex, next).
struct CornerKey {
  u64 prev = 0;
  u64 apex = 0;
  u64 next = 0;

  friend bool operator==(const CornerKey&, const CornerKey&) = default;
  friend auto operator<=>(const CornerKey&, const CornerKey&) = default;
};

// Directed hull edge u -> v with the set on its left. Stored line
// coefficients satisfy a*x + b*y + c >= 0 on the set; (a, b) is the inward
// normal, (-a, -b) the outward normal.
//   |a|, |b| <= 2^31, |c| <= 2^62.
struct Side {
  Point u;
  Point v;
  i64 a = 0;
  i64 b = 0;
  i64 c = 0;

  static Side through(Point u, Point v);
  SideId id() const { return SideId{pack_point(u), pack_point(v)}; }
  Dir inward() const { return Dir{a, b}; }
  Dir outward() const { return Dir{-a, -b}; }

  friend bool operator==(const Side& s, const Side& t) {
    return s.u == t.u && s.v == t.v;
  }
};

// Strictly convex hull vertex with its CCW neighbors.
struct Corner {
  Point prev;
  Point apex;
  Point next;

  CornerKey key() const {
    return CornerKey{pack_point(prev), pack_point(apex), pack_point(next)};
  }

  friend bool operator==(const Corner&, const Corner&) = default;
};

// a*x + b*y + c at q; >= 0 means q on the set's side. |result| < 2^63.
i128 signed_offset(const Side& s, Point q);

// True iff the side's halfplane and the corner's wedge can be translated to
// be disjoint (closed convention: touching along the boundary still counts).
// Equivalently, sliding the side's line to the apex keeps both incident
// edges on the non-set side: inward-dot(prev - apex) <= 0 and
// inward-dot(next - apex) <= 0.
bool is_compatible(const Side& s, const Corner& c);

// Exact nonnegative rational, or the formal infinity used for incompatible
// pairs. Finite values are a num/den pair compared by int512 cross
// multiplication; reduction happens only on demand (printing, canonical()).
class SquaredDistance {
 public:
  SquaredDistance() = default;  // zero

  static SquaredDistance zero() { return SquaredDistance(); }
  static SquaredDistance infinite();
  // den > 0, num >= 0 required. Stored as given (not reduced).
  static SquaredDistance ratio(int256_t num, int256_t den);

  bool infinite_value() const { return inf_; }
  const int256_t& num() const { return num_; }
  const int256_t& den() const { return den_; }

  // gcd-reduced copy; infinity is its own canonical form.
  SquaredDistance canonical() const;

  // "num/den" after reduction, or "inf".
  std::string str() const;

  // sqrt(num/den) rounded through 50-digit floats; display only.
  double root_double() const;

 private:
  int256_t num_ = 0;
  int256_t den_ = 1;
  bool inf_ = false;
};

// -1 / 0 / +1; exact, reduction-independent. Infinity compares greater than
// every finite value and equal to itself.
int cmp_sqdist(const SquaredDistance& a, const SquaredDistance& b);

// Squared distance between the side's line and the corner's apex if the pair
// is compatible, infinite otherwise.
SquaredDistance squared_distance(const Side& s, const Corner& c);

// Exact CCW angular order with the cut at direction (1, 0):
// quadrant 0 = [0,90), 1 = [90,180), 2 = [180,270), 3 = [270,360).
int quadrant(Dir d);
int cmp_angle(Dir a, Dir b);  // -1 / 0 / +1; 0 iff same ray

// Outward normals of the corner's incident edges, in CCW order:
// lo from edge (prev -> apex), hi from edge (apex -> next). A side is
// compatible with the corner iff its outward normal lies in the closed CCW
// arc [-lo, -hi] (the antipodal cone), which spans less than pi.
struct NormalCone {
  Dir lo;
  Dir hi;
};
NormalCone normal_cone(const Corner& c);

// splitmix-combined hashes for unordered containers.
struct SideIdHash {
  std::size_t operator()(const SideId& s) const {
    return std::size_t(mix64(s.u) ^ mix64(s.v + 0x9e3779b97f4a7c15ULL));
  }
};
struct CornerKeyHash {
  std::size_t operator()(const CornerKey& c) const {
    return std::size_t(mix64(c.prev) ^ mix64(c.apex + 0x9e3779b97f4a7c15ULL) ^
                       mix64(c.next + 0x3c6ef372fe94f82aULL));
  }
};

}  // namespace dynwidth
