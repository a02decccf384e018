#include <random>
#include <vector>

#include "doctest.h"
#include "lecs/geometry.hpp"

using namespace lecs;

namespace {

Point2 p2(long x, long y) { return {Scalar(x), Scalar(y)}; }
Point3 p3(long x, long y, long z) { return {Scalar(x), Scalar(y), Scalar(z)}; }

const std::vector<Point2> kSquare = {p2(0, 0), p2(1, 0), p2(1, 1), p2(0, 1)};

// Independent 3D containment oracle: every plane through three non-collinear points that leaves
// the whole set on one side is a facet plane; containment is checked against all of them.
Side brute_classify3(const Point3& p, const std::vector<Point3>& s) {
  bool any_plane = false, boundary = false;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      for (std::size_t k = j + 1; k < s.size(); ++k) {
        int pos = 0, neg = 0;
        for (const auto& q : s) {
          int o = orient3(s[i], s[j], s[k], q);
          pos += o > 0;
          neg += o < 0;
        }
        if (pos + neg == 0) continue;  // degenerate triple or coplanar set
        if (pos && neg) continue;
        any_plane = true;
        int o = orient3(s[i], s[j], s[k], p);
        if ((pos && o < 0) || (neg && o > 0)) return Side::Outside;
        if (o == 0) boundary = true;
      }
  REQUIRE(any_plane);
  return boundary ? Side::Boundary : Side::Interior;
}

}  // namespace

TEST_CASE("orient2 examples") {
  CHECK(orient2(p2(0, 0), p2(1, 0), p2(0, 1)) == 1);
  CHECK(orient2(p2(0, 0), p2(1, 1), p2(2, 2)) == 0);
  CHECK(orient2(p2(0, 0), p2(0, 1), p2(1, 0)) == -1);
}

TEST_CASE("orient3 examples") {
  auto o = p3(0, 0, 0), x = p3(1, 0, 0), y = p3(0, 1, 0), z = p3(0, 0, 1);
  CHECK(orient3(o, x, y, z) == 1);
  CHECK(orient3(p3(0, 0, 2), p3(1, 0, 2), p3(5, 3, 2), p3(-1, 7, 2)) == 0);
  CHECK(orient3(x, o, y, z) == -1);
}

TEST_CASE("classify_in_hull against the unit square") {
  CHECK(classify_in_hull(Point2{make_scalar(1, 2), make_scalar(1, 2)}, kSquare) == Side::Interior);
  CHECK(classify_in_hull(p2(0, 0), kSquare) == Side::Boundary);
  CHECK(classify_in_hull(p2(2, 2), kSquare) == Side::Outside);
  CHECK(classify_in_hull(Point2{make_scalar(1, 2), Scalar(0)}, kSquare) == Side::Boundary);
}

TEST_CASE("hull_vertices") {
  CHECK(hull_vertices(std::span<const Point2>(kSquare)) == std::vector<std::size_t>{0, 1, 2, 3});
  auto with_center = kSquare;
  with_center.push_back(Point2{make_scalar(1, 2), make_scalar(1, 2)});
  CHECK(hull_vertices(std::span<const Point2>(with_center)) ==
        std::vector<std::size_t>{0, 1, 2, 3});
  std::vector<Point2> line = {p2(1, 1), p2(0, 0), p2(2, 2)};
  CHECK(hull_vertices(std::span<const Point2>(line)) == std::vector<std::size_t>{1, 2});
}

TEST_CASE("strict convex position") {
  std::vector<Point2> pentagon = {p2(0, 0), p2(4, 0), p2(5, 3), p2(2, 5), p2(-1, 3)};
  CHECK(is_strictly_convex_position(std::span<const Point2>(pentagon)));
  std::vector<Point2> line = {p2(0, 0), p2(1, 1), p2(2, 2)};
  CHECK_FALSE(is_strictly_convex_position(std::span<const Point2>(line)));
  auto with_center = kSquare;
  with_center.push_back(Point2{make_scalar(1, 2), make_scalar(1, 2)});
  CHECK_FALSE(is_strictly_convex_position(std::span<const Point2>(with_center)));
}

TEST_CASE("emptiness uses the closed hull") {
  auto amb = kSquare;
  amb.push_back(Point2{make_scalar(1, 2), make_scalar(1, 2)});
  CHECK_FALSE(is_empty_in(kSquare, amb));
  amb.back() = p2(5, 5);
  CHECK(is_empty_in(kSquare, amb));
  amb.back() = Point2{make_scalar(1, 2), Scalar(1)};
  CHECK_FALSE(is_empty_in(kSquare, amb));
  std::vector<Point2> stranger = {p2(9, 9)};
  CHECK_THROWS_AS(is_empty_in(stranger, amb), GeometryError);
}

TEST_CASE("is_valid_solution examples") {
  std::vector<Point2> tri = {p2(0, 0), p2(3, 0), p2(0, 3)};
  CHECK(is_valid_solution(tri, tri));
  auto amb = kSquare;
  amb.push_back(Point2{make_scalar(1, 2), make_scalar(1, 2)});
  CHECK_FALSE(is_valid_solution(kSquare, amb));
  std::vector<Point2> single = {amb[2]};
  CHECK(is_valid_solution(single, amb));
}

TEST_CASE("3D classification of lower-dimensional hulls never reports INTERIOR") {
  std::vector<Point3> flat = {p3(0, 0, 1), p3(2, 0, 1), p3(0, 2, 1)};
  CHECK(classify_in_hull(Point3{make_scalar(1, 2), make_scalar(1, 2), Scalar(1)}, flat) ==
        Side::Boundary);
  CHECK(classify_in_hull(p3(0, 0, 2), flat) == Side::Outside);
  std::vector<Point3> seg = {p3(0, 0, 0), p3(2, 2, 2)};
  CHECK(classify_in_hull(p3(1, 1, 1), seg) == Side::Boundary);
  CHECK(classify_in_hull(p3(3, 3, 3), seg) == Side::Outside);
  std::vector<Point3> cube;
  for (int m = 0; m < 8; ++m) cube.push_back(p3(m & 1, (m >> 1) & 1, (m >> 2) & 1));
  CHECK(classify_in_hull(Point3{make_scalar(1, 2), make_scalar(1, 2), make_scalar(1, 2)}, cube) ==
        Side::Interior);
  CHECK(classify_in_hull(Point3{make_scalar(1, 2), make_scalar(1, 2), Scalar(1)}, cube) ==
        Side::Boundary);
  CHECK(hull_vertices(std::span<const Point3>(cube)).size() == 8);
}

TEST_CASE("property: orientation antisymmetry and translation invariance") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-6, 6);
  auto r = [&] { return make_scalar(d(rng), 1 + (d(rng) + 6) % 4); };
  for (int t = 0; t < 300; ++t) {
    Point2 a{r(), r()}, b{r(), r()}, c{r(), r()}, s{r(), r()};
    CHECK(orient2(a, b, c) == -orient2(b, a, c));
    CHECK(orient2(a, b, c) == -orient2(a, c, b));
    Point2 a2{a.x + s.x, a.y + s.y}, b2{b.x + s.x, b.y + s.y}, c2{c.x + s.x, c.y + s.y};
    CHECK(orient2(a, b, c) == orient2(a2, b2, c2));
    Point3 A{r(), r(), r()}, B{r(), r(), r()}, C{r(), r(), r()}, D{r(), r(), r()};
    CHECK(orient3(A, B, C, D) == -orient3(B, A, C, D));
    CHECK(orient3(A, B, C, D) == -orient3(A, B, D, C));
    Point3 T{r(), r(), r()};
    auto tr = [&](const Point3& p) { return Point3{p.x + T.x, p.y + T.y, p.z + T.z}; };
    CHECK(orient3(A, B, C, D) == orient3(tr(A), tr(B), tr(C), tr(D)));
  }
}

TEST_CASE("property: 2D classification is affine invariant; strict convexity is hereditary") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(0, 5);
  for (int t = 0; t < 200; ++t) {
    std::vector<Point2> s;
    int n = 1 + t % 7;
    for (int i = 0; i < n; ++i) s.push_back(p2(d(rng), d(rng)));
    Point2 p = p2(d(rng), d(rng));
    // x' = 2x + y + 1, y' = x - 3y  (det = -7)
    auto f = [](const Point2& q) { return Point2{2 * q.x + q.y + 1, q.x - 3 * q.y}; };
    std::vector<Point2> fs;
    for (const auto& q : s) fs.push_back(f(q));
    CHECK(classify_in_hull(p, s) == classify_in_hull(f(p), fs));
    if (is_strictly_convex_position(std::span<const Point2>(s))) {
      for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<Point2> sub;
        for (int i = 0; i < n; ++i)
          if (mask >> i & 1) sub.push_back(s[i]);
        CHECK(is_strictly_convex_position(std::span<const Point2>(sub)));
      }
    }
  }
}

TEST_CASE("property: Hull3 agrees with the brute-force facet oracle") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(0, 3);
  int full = 0;
  for (int t = 0; t < 400; ++t) {
    std::vector<Point3> s;
    int n = 4 + t % 6;
    for (int i = 0; i < n; ++i) s.push_back(p3(d(rng), d(rng), t % 3 == 0 ? 0 : d(rng)));
    Hull3 h(s);
    if (h.dimension() != 3) continue;
    ++full;
    for (int q = 0; q < 10; ++q) {
      Point3 p = p3(d(rng), d(rng), d(rng));
      CHECK(h.classify(p) == brute_classify3(p, s));
    }
    // a point is a vertex exactly when it lies outside the hull of the remaining points
    std::vector<std::size_t> expect;
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::vector<Point3> rest;
      for (std::size_t j = 0; j < s.size(); ++j)
        if (j != i) rest.push_back(s[j]);
      Hull3 hr(rest);
      if (hr.classify(s[i]) == Side::Outside) expect.push_back(i);
    }
    CHECK(h.vertices() == expect);
  }
  CHECK(full > 100);
}

TEST_CASE("property: paraboloid points are in strictly convex position") {
  std::vector<Point3> q;
  for (int x = -2; x <= 2; ++x)
    for (int y = -2; y <= 2; ++y) q.push_back(p3(x, y, x * x + y * y));
  CHECK(is_strictly_convex_position(std::span<const Point3>(q)));
  q.push_back(p3(0, 0, 5));
  CHECK_FALSE(is_strictly_convex_position(std::span<const Point3>(q)));
}
