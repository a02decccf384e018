#include <set>

#include "doctest.h"
#include "lecs/gadget.hpp"

using namespace lecs;

namespace {

Point2 P(long x, long y) { return {Scalar(x), Scalar(y)}; }

struct Bar {
  TrackRef left, right;
  Gadget g;
};

Bar hbar(int n) {
  auto l = make_track(0, P(0, 0), P(0, 1), vertex_labels(n));
  auto r = make_track(1, P(1, 0), P(1, 1), vertex_labels(n));
  return {l, r, build_hbar(n, unit_cell(0, 0), l, r)};
}

std::vector<std::vector<bool>> adjacency(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false));
  for (auto [u, v] : edges) a[u - 1][v - 1] = a[v - 1][u - 1] = true;
  return a;
}

Gadget star(int n, const std::vector<std::pair<int, int>>& edges) {
  auto l = make_track(0, P(0, 0), P(0, 1), vertex_labels(n));
  auto r = make_track(1, P(1, 0), P(1, 1), vertex_labels(n));
  return build_star(n, adjacency(n, edges), unit_cell(0, 0), l, r);
}

Gadget tee(int n) {
  auto l = make_track(0, P(0, 0), P(0, 1), vertex_labels(n));
  auto r = make_track(1, P(1, 0), P(1, 1), vertex_labels(n));
  auto b = make_track(2, P(0, 0), P(1, 0), vertex_labels(n));
  return build_tee(n, unit_cell(0, 0), l, r, b);
}

void check_every_maximum_valid(const Gadget& g, const Enumeration& e) {
  auto pts = g.points();
  for (const auto& m : e.maxima) CHECK(is_valid_solution(m.points, pts));
}

void check_in_frame(const Gadget& g) {
  for (const auto* s : simple_parts(g)) {
    for (const auto& t : s->tracks)
      for (const auto& p : t->points()) CHECK(s->frame.contains(p));
    for (const auto& l : s->lines)
      for (const auto& cp : l.points) CHECK(s->frame.strictly_contains(cp.p));
  }
}

}  // namespace

TEST_CASE("track coordinates follow the slot law") {
  auto t = make_track(7, P(0, 0), P(0, 1), vertex_labels(3));
  REQUIRE(t->size() == 3);
  // pair t at (t+1)/4 -/+ 1/128
  CHECK(t->pairs[0].first == Point2{0, make_scalar(31, 128)});
  CHECK(t->pairs[0].second == Point2{0, make_scalar(33, 128)});
  CHECK(t->pairs[2].second == Point2{0, make_scalar(97, 128)});
  CHECK(t->slot_of({2, 0}) == 1);
  auto w = pair_labels(2, true);
  CHECK(w[1] == Label{2, 1});
  CHECK(pair_labels(2, false)[1] == Label{1, 2});
}

TEST_CASE("hbar point counts and maxima") {
  for (int n = 1; n <= 4; ++n) {
    auto b = hbar(n);
    CHECK(b.g.points().size() == static_cast<std::size_t>(4 * n + n * (n - 1) + 2));
    CHECK(b.g.interior_count() == static_cast<std::size_t>(n * (n - 1) + 2));
    check_in_frame(b.g);
    auto e = enumerate_valid_subsets(b.g);
    CHECK(e.max_size == 6);
    REQUIRE(e.maxima.size() == static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      CHECK(e.maxima[i].labels == std::vector<Label>{{i + 1, 0}, {i + 1, 0}});
    }
    check_every_maximum_valid(b.g, e);
  }
}

TEST_CASE("hbar maxima use the two line points nearest their parallelogram") {
  auto b = hbar(3);
  auto e = enumerate_valid_subsets(b.g);
  const auto& line = b.g.lines[0].points;
  for (const auto& m : e.maxima) {
    std::vector<std::size_t> on_line;
    for (const auto& p : m.points)
      for (std::size_t j = 0; j < line.size(); ++j)
        if (line[j].p == p) on_line.push_back(j);
    REQUIRE(on_line.size() == 2);
    CHECK(on_line[1] == on_line[0] + 1);
  }
}

TEST_CASE("vbar is an hbar on horizontal tracks") {
  auto bot = make_track(0, P(0, 0), P(1, 0), vertex_labels(3));
  auto top = make_track(1, P(0, 1), P(1, 1), vertex_labels(3));
  auto g = build_vbar(3, unit_cell(0, 0), bot, top);
  CHECK(g.interior_count() == 8);
  auto e = enumerate_valid_subsets(g);
  CHECK(e.max_size == 6);
  CHECK(e.maxima.size() == 3);
}

TEST_CASE("diag law for narrow and wide tracks") {
  for (int m : {1, 2, 3, 4}) {
    auto in = make_track(0, P(0, 0), P(0, 1), vertex_labels(m));
    auto out = make_track(1, P(0, 0), P(1, 0), vertex_labels(m));
    auto g = build_diag(m, unit_cell(0, 0), in, out);
    check_in_frame(g);
    auto e = enumerate_valid_subsets(g);
    CHECK(e.max_size == 6);
    CHECK(e.maxima.size() == static_cast<std::size_t>(m));
    check_every_maximum_valid(g, e);
  }
  auto in = make_track(0, P(0, 0), P(0, 1), pair_labels(2, false));
  auto out = make_track(1, P(0, 0), P(1, 0), pair_labels(2, false));
  auto g = build_diag(2, unit_cell(0, 0), in, out);
  auto e = enumerate_valid_subsets(g);
  CHECK(e.max_size == 6);
  CHECK(e.maxima.size() == 4);
}

TEST_CASE("trimux law") {
  for (int n = 1; n <= 3; ++n) {
    for (int comp = 0; comp < 2; ++comp) {
      auto narrow = make_track(0, P(0, 0), P(0, 1), vertex_labels(n));
      auto wide = make_track(1, P(1, 0), P(1, 1), pair_labels(n, comp == 0));
      auto g = build_trimux(n, unit_cell(0, 0), narrow, wide, comp, false);
      auto e = enumerate_valid_subsets(g);
      CHECK(e.max_size == 6);
      CHECK(e.maxima.size() == static_cast<std::size_t>(n * n));
      for (const auto& m : e.maxima) {
        int w = comp == 0 ? m.labels[1].first : m.labels[1].second;
        CHECK(w == m.labels[0].first);
      }
      if (n == 2) CHECK(g.interior_count() == 6);
    }
  }
}

TEST_CASE("star maxima are the ordered edges") {
  auto k3 = star(3, {{1, 2}, {1, 3}, {2, 3}});
  auto e = enumerate_valid_subsets(k3);
  CHECK(e.max_size == 6);
  CHECK(e.maxima.size() == 6);
  for (const auto& m : e.maxima) CHECK(m.labels[0] != m.labels[1]);
  std::size_t cancels = 0;
  for (const auto& cp : k3.lines[0].points) cancels += cp.role == Role::Cancel;
  CHECK(cancels == 3);

  auto empty = star(3, {});
  auto ee = enumerate_valid_subsets(empty);
  CHECK(ee.max_size < 6);

  auto one = star(2, {{1, 2}});
  auto eo = enumerate_valid_subsets(one);
  REQUIRE(eo.maxima.size() == 2);
  CHECK(eo.maxima[0].labels == std::vector<Label>{{1, 0}, {2, 0}});
  CHECK(eo.maxima[1].labels == std::vector<Label>{{2, 0}, {1, 0}});
}

TEST_CASE("tee law") {
  for (int n = 1; n <= 3; ++n) {
    auto g = tee(n);
    CHECK(g.points().size() == static_cast<std::size_t>(6 * n + 4 * n));
    check_in_frame(g);
    auto e = enumerate_valid_subsets(g);
    CHECK(e.max_size == 10);
    REQUIRE(e.maxima.size() == static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      CHECK(e.maxima[i].labels == std::vector<Label>(3, Label{i + 1, 0}));
    check_every_maximum_valid(g, e);
  }
}

TEST_CASE("cross joint choices") {
  for (int n = 1; n <= 2; ++n) {
    auto l = make_track(0, P(0, 1), P(0, 2), vertex_labels(n));
    auto b = make_track(1, P(1, 0), P(2, 0), vertex_labels(n));
    auto r = make_track(2, P(4, 1), P(4, 2), vertex_labels(n));
    auto t = make_track(3, P(1, 4), P(2, 4), vertex_labels(n));
    auto g = build_cross(n, Frame{P(0, 0), 4, 4}, l, b, r, t, 10);
    CHECK(g.parts.size() == 8);
    check_in_frame(g);
    auto jc = joint_choices(g);
    CHECK(jc.size() == static_cast<std::size_t>(n * n));
    CHECK(jc == g.valid_choices);
  }
}

TEST_CASE("builders reject misplaced tracks") {
  auto l = make_track(0, P(0, 0), P(0, 1), vertex_labels(2));
  auto bad = make_track(1, P(0, 0), P(1, 0), vertex_labels(2));
  CHECK_THROWS_AS(build_hbar(2, unit_cell(0, 0), l, bad), BuildError);
  CHECK_THROWS_AS(build_hbar(3, unit_cell(0, 0), l, l), BuildError);
}
