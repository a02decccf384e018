#pragma once

#include <compare>
#include <string>
#include <vector>

#include "lecs/geometry.hpp"

namespace lecs {

/// Vertex label carried by a track pair: a single vertex (second == 0) or an ordered pair.
struct Label {
  int first = 0;
  int second = 0;

  bool is_pair() const { return second != 0; }
  auto operator<=>(const Label&) const = default;
};

std::string to_string(const Label& l);
Label parse_label(const std::string& s);

enum class Role { PairPoint, Cancel, Sentinel, GapBlocker, Bracket };

const char* to_string(Role r);
Role parse_role(const std::string& s);

struct PointLabel {
  std::vector<int> gadgets;  // one entry, or two for points on a shared track
  Role role = Role::PairPoint;
  int track = -1;  // pair points
  int slot = -1;
  int pos = -1;    // 0 or 1 within the pair
  int line = -1;   // index of the gadget's interior line for non-track points
  Label a, b;      // cancel: the combination it blocks; bracket: a = owning label

  bool operator==(const PointLabel&) const = default;
};

/// Points of a construction, planar or lifted, each with exactly one label record.
struct LabeledPointSet {
  int dim = 2;
  std::vector<Point3> coords;  // z is zero for planar sets
  std::vector<PointLabel> labels;

  std::size_t size() const { return coords.size(); }
  Point2 point2(std::size_t i) const { return {coords[i].x, coords[i].y}; }
  std::vector<Point2> points2() const;
  std::vector<Point3> points3() const { return coords; }

  bool operator==(const LabeledPointSet&) const = default;
};

}  // namespace lecs
