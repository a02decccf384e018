#include <sstream>

#include "doctest.h"
#include "lecs/io.hpp"

using namespace lecs;

namespace {

Graph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

InstanceDoc reparse(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

Gadget hbar(int n) {
  auto l = make_track(0, {0, 0}, {0, 1}, vertex_labels(n));
  auto r = make_track(1, {1, 0}, {1, 1}, vertex_labels(n));
  return build_hbar(n, unit_cell(0, 0), l, r);
}

}  // namespace

TEST_CASE("graph files") {
  auto g = parse("3 2\n1 2\n2 3\n");
  CHECK(g.n == 3);
  CHECK(g.adjacent(1, 2));
  CHECK_FALSE(g.adjacent(1, 3));
  CHECK(format_graph(g) == "3 2\n1 2\n2 3\n");
  CHECK(parse("# comment\n1 0\n").n == 1);
  CHECK_THROWS_AS(parse("3 1\n3 3\n"), ParseError);        // self-loop
  CHECK_THROWS_AS(parse("3 2\n1 2\n1 2\n"), ParseError);   // duplicate
  CHECK_THROWS_AS(parse("3 1\n1 4\n"), ParseError);        // out of range
  CHECK_THROWS_AS(parse("3 1\n2 1\n"), ParseError);        // u > v
  CHECK_THROWS_AS(parse("3 2\n1 2\n"), ParseError);        // count mismatch
  CHECK_THROWS_AS(parse("x 1\n1 2\n"), ParseError);
}

TEST_CASE("exact rationals in text") {
  CHECK(format_scalar(make_scalar(3, 6)) == "1/2");
  CHECK(format_scalar(Scalar(-4)) == "-4/1");
  CHECK(parse_scalar("2/4") == make_scalar(1, 2));
  CHECK(parse_scalar("-7") == Scalar(-7));
  CHECK_THROWS_AS(parse_scalar("1/0"), ParseError);
  CHECK_THROWS_AS(parse_scalar("0.5"), ParseError);
  CHECK_THROWS_AS(parse_scalar("1/-2"), ParseError);
}

TEST_CASE("instance files round-trip bit-exactly") {
  auto k3 = Graph::complete(3);
  auto planar = assemble(k3, 2);
  for (const auto& doc : {instance_doc(planar), instance_doc(lift(planar)), gadget_doc(hbar(3))}) {
    auto text = format_instance(doc);
    auto back = reparse(text);
    CHECK(back == doc);
    CHECK(format_instance(back) == text);
  }
  auto lifted = instance_doc(lift(planar));
  CHECK(lifted.points.size() == planar.points.size());  // lifting adds no points
  CHECK(lifted.frames.size() == planar.simple().size());
}

TEST_CASE("instance parse errors name the line") {
  CHECK_THROWS_AS(reparse("lecs-instance 2\ndim 2\n"), ParseError);
  CHECK_THROWS_AS(reparse("lecs-instance 1\ndim 4\n"), ParseError);
  try {
    reparse("lecs-instance 1\ndim 2\n1/2 1/3 0 pair 0 0 0 -1 - -\n1/2 0 oops\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("svg and obj rendering") {
  auto doc = gadget_doc(hbar(3));
  auto svg = render_svg(doc);
  std::size_t circles = 0;
  for (auto at = svg.find("<circle"); at != std::string::npos; at = svg.find("<circle", at + 1)) ++circles;
  CHECK(circles == 20);
  CHECK(render_svg(doc) == svg);  // deterministic
  SvgOptions overlay;
  overlay.show_choices = true;
  auto with = render_svg(doc, overlay);
  CHECK(with.find("stroke-dasharray") != std::string::npos);  // cancelled choices
  CHECK(with.find("#2ca02c\"/>") != std::string::npos);       // valid choices
  CHECK(svg.find("lecs-instance 1") != std::string::npos);    // exact geometry kept in a comment

  auto inst = lift(assemble(Graph::complete(2), 2));
  auto ldoc = instance_doc(inst);
  CHECK_THROWS_AS(render_svg(ldoc), std::invalid_argument);
  CHECK_THROWS_AS(render_obj(doc), std::invalid_argument);
  auto obj = render_obj(ldoc);
  std::size_t faces = 0, verts = 0;
  std::istringstream lines(obj);
  for (std::string line; std::getline(lines, line);) {
    faces += line.rfind("f ", 0) == 0;
    verts += line.rfind("v ", 0) == 0;
  }
  CHECK(faces == inst.simple().size());
  CHECK(verts > inst.points.size());
  CHECK(render_obj(ldoc) == obj);
}
