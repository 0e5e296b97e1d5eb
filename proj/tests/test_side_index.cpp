#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dynwidth/errors.hpp"
#include "dynwidth/oracle.hpp"
#include "dynwidth/side_index.hpp"
#include "test_util.hpp"

using namespace dynwidth;

namespace {

std::vector<Side> sides_of(const std::vector<Point>& cyc) {
  std::vector<Side> ss;
  for (std::size_t i = 0; i < cyc.size(); ++i)
    ss.push_back(Side::through(cyc[i], cyc[(i + 1) % cyc.size()]));
  return ss;
}

void check_corner(const SideIndex& ix, const Corner& c,
                  const std::vector<Side>& ss) {
  auto got = ix.nearest_compatible_side(c);
  auto want = oracle::nearest_side_scan(c, ss);
  REQUIRE(got.has_value() == want.has_value());
  if (got) {
    CHECK(got->first.id() == want->first.id());
    CHECK(cmp_sqdist(got->second, want->second) == 0);
  }
}

}  // namespace

TEST_CASE("square corners resolve with exact ties") {
  auto ss = sides_of({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  SideIndex ix;
  for (const auto& s : ss) ix.insert_side(s);
  CHECK(ix.size() == 4);
  ix.validate();

  struct Want {
    Corner c;
    Side s;
  };
  // every corner sees a two-side tie at distance 2; smaller id wins
  std::vector<Want> wants = {
      {{{0, 2}, {0, 0}, {2, 0}}, Side::through({2, 0}, {2, 2})},
      {{{0, 0}, {2, 0}, {2, 2}}, Side::through({0, 2}, {0, 0})},
      {{{2, 0}, {2, 2}, {0, 2}}, Side::through({0, 0}, {2, 0})},
      {{{2, 2}, {0, 2}, {0, 0}}, Side::through({0, 0}, {2, 0})},
  };
  for (const auto& w : wants) {
    auto got = ix.nearest_compatible_side(w.c);
    REQUIRE(got.has_value());
    CHECK(got->first == w.s);
    CHECK(cmp_sqdist(got->second, tu::sq(4, 1)) == 0);
    check_corner(ix, w.c, ss);
  }
}

TEST_CASE("triangle corners") {
  auto ss = sides_of({{0, 0}, {4, 0}, {0, 3}});
  SideIndex ix;
  for (const auto& s : ss) ix.insert_side(s);
  ix.validate();

  auto at_origin = ix.nearest_compatible_side({{0, 3}, {0, 0}, {4, 0}});
  REQUIRE(at_origin.has_value());
  CHECK(at_origin->first == Side::through({4, 0}, {0, 3}));
  CHECK(cmp_sqdist(at_origin->second, tu::sq(144, 25)) == 0);

  auto at_top = ix.nearest_compatible_side({{4, 0}, {0, 3}, {0, 0}});
  REQUIRE(at_top.has_value());
  CHECK(at_top->first == Side::through({0, 0}, {4, 0}));
  CHECK(cmp_sqdist(at_top->second, tu::sq(9, 1)) == 0);

  auto at_right = ix.nearest_compatible_side({{0, 0}, {4, 0}, {0, 3}});
  REQUIRE(at_right.has_value());
  CHECK(at_right->first == Side::through({0, 3}, {0, 0}));
  CHECK(cmp_sqdist(at_right->second, tu::sq(16, 1)) == 0);
}

TEST_CASE("cones that dodge every normal, straddling the cut or not") {
  // octagon with side normals near 22.5 + 45k degrees
  auto octA = oracle::convex_hull(tu::ring_points(8, 1000000.0));
  REQUIRE(octA.size() == 8);
  SideIndex ix;
  for (const auto& s : sides_of(octA)) ix.insert_side(s);
  ix.validate();

  // wedge at the center whose compatible arc is [30, 60] degrees
  Corner narrow{{-500, 866}, {0, 0}, {866, -500}};
  CHECK_FALSE(ix.nearest_compatible_side(narrow).has_value());
  // arc [350, 10] degrees wraps the angular cut and still misses
  Corner wrap{{174, 985}, {0, 0}, {174, -985}};
  CHECK_FALSE(ix.nearest_compatible_side(wrap).has_value());
  check_corner(ix, narrow, sides_of(octA));
  check_corner(ix, wrap, sides_of(octA));

  // rotate the octagon so a side normal sits at 0 degrees: the wrapped arc
  // now contains it
  auto octB = oracle::convex_hull(
      tu::ring_points(8, 1000000.0, 22.5 * 3.14159265358979323846 / 180));
  REQUIRE(octB.size() == 8);
  SideIndex ixB;
  for (const auto& s : sides_of(octB)) ixB.insert_side(s);
  auto hit = ixB.nearest_compatible_side(wrap);
  REQUIRE(hit.has_value());
  CHECK(hit->first.outward().y == 0);
  CHECK(hit->first.outward().x > 0);
  check_corner(ixB, wrap, sides_of(octB));
}

TEST_CASE("random polygons agree with the linear scan") {
  std::mt19937_64 g(113);
  for (int it = 0; it < 120; ++it) {
    auto poly = tu::random_polygon(g, 4 + tu::rnd_below(g, 60), 1000000);
    auto ss = sides_of(poly);
    SideIndex ix;
    for (const auto& s : ss) ix.insert_side(s);
    ix.validate();
    auto feats = oracle::hull_features(poly);
    for (const auto& c : feats.corners) check_corner(ix, c, ss);
  }
}

TEST_CASE("near-circular polygon, every corner") {
  auto poly = oracle::convex_hull(tu::ring_points(300, 1000000.0, 0.11));
  auto ss = sides_of(poly);
  SideIndex ix;
  for (const auto& s : ss) ix.insert_side(s);
  ix.validate();
  auto feats = oracle::hull_features(poly);
  for (const auto& c : feats.corners) check_corner(ix, c, ss);
}

TEST_CASE("interleaved insert and delete stays consistent") {
  std::mt19937_64 g(127);
  auto poly = oracle::convex_hull(tu::ring_points(128, 1000000.0));
  auto ss = sides_of(poly);
  auto feats = oracle::hull_features(poly);

  SideIndex ix(0.2);
  std::vector<std::size_t> in, out(ss.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  for (int t = 0; t < 1200; ++t) {
    bool ins = in.empty() || (!out.empty() && tu::rnd_below(g, 100) < 55);
    if (ins) {
      std::size_t k = tu::rnd_below(g, out.size());
      std::swap(out[k], out.back());
      ix.insert_side(ss[out.back()]);
      in.push_back(out.back());
      out.pop_back();
    } else {
      std::size_t k = tu::rnd_below(g, in.size());
      std::swap(in[k], in.back());
      ix.delete_side(ss[in.back()]);
      out.push_back(in.back());
      in.pop_back();
    }
    CHECK(ix.size() == in.size());
    if (t % 16 == 0) ix.validate();
    if (!in.empty() && t % 5 == 0) {
      std::vector<Side> live;
      for (auto i : in) live.push_back(ss[i]);
      check_corner(ix, feats.corners[tu::rnd_below(g, feats.corners.size())],
                   live);
    }
  }
  ix.validate();
}

TEST_CASE("index rejects duplicates and unknowns") {
  SideIndex ix;
  Side s = Side::through({0, 0}, {4, 0});
  ix.insert_side(s);
  CHECK_THROWS_AS(ix.insert_side(s), DuplicateSide);
  CHECK_THROWS_AS(ix.delete_side(Side::through({1, 0}, {5, 0})), UnknownSide);
  ix.delete_side(s);
  CHECK(ix.size() == 0);
  CHECK_THROWS_AS(ix.delete_side(s), UnknownSide);
}

TEST_CASE("sorted insertion keeps rebuild work quasilinear") {
  std::size_t n = 2048;
  auto poly = oracle::convex_hull(tu::ring_points(n, 20000000.0));
  REQUIRE(poly.size() == n);
  auto ss = sides_of(poly);
  // normals ascend from the cut: the worst case for a balanced tree
  std::sort(ss.begin(), ss.end(), [](const Side& a, const Side& b) {
    int r = cmp_angle(a.outward(), b.outward());
    return r != 0 ? r < 0 : a.id() < b.id();
  });

  SideIndex ix;
  for (const auto& s : ss) ix.insert_side(s);
  ix.validate();
  double cap = 16.0 * double(n) * std::log2(double(n));
  CHECK(double(ix.rebuild_nodes_total()) < cap);

  auto feats = oracle::hull_features(poly);
  for (std::size_t i = 0; i < feats.corners.size(); i += 97)
    check_corner(ix, feats.corners[i], ss);

  for (const auto& s : ss) ix.delete_side(s);  // sorted teardown
  CHECK(ix.size() == 0);
  CHECK(double(ix.rebuild_nodes_total()) < 2 * cap);
}
