#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lecs/geometry.hpp"
#include "lecs/point_set.hpp"

namespace lecs {

class BuildError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Axis-aligned rectangle.
struct Frame {
  Point2 lower_left;
  Scalar width = 1, height = 1;

  Scalar x0() const { return lower_left.x; }
  Scalar y0() const { return lower_left.y; }
  Scalar x1() const { return lower_left.x + width; }
  Scalar y1() const { return lower_left.y + height; }
  bool contains(const Point2& p) const;          // closed
  bool strictly_contains(const Point2& p) const; // open
  bool operator==(const Frame&) const = default;
};

Frame unit_cell(long x, long y);

struct PointPair {
  Point2 first, second;
};

/// m collinear point pairs on a frame edge. Slots are numbered by position from `start` to `end`;
/// pair t sits at carrier parameters (t+1)/(m+1) -/+ 1/(8(m+1)^2).
struct Track {
  int id = -1;
  Point2 start, end;
  std::vector<Label> labels;  // label of the pair in each slot
  std::vector<PointPair> pairs;

  std::size_t size() const { return pairs.size(); }
  /// Slot holding `l`, or -1.
  int slot_of(const Label& l) const;
  std::vector<Point2> points() const;
};

using TrackRef = std::shared_ptr<const Track>;

TrackRef make_track(int id, const Point2& start, const Point2& end, std::vector<Label> labels);
/// Labels 1..n.
std::vector<Label> vertex_labels(int n);
/// Labels (a,b) for a,b in 1..n, ordered so that slot = (b-1)*n + (a-1) when `first_fast`,
/// otherwise slot = (a-1)*n + (b-1).
std::vector<Label> pair_labels(int n, bool first_fast);

struct CancelPoint {
  Point2 p;
  Role role = Role::Cancel;
  Label a, b;  // cancel: the blocked combination; bracket: a is the owning label
};

/// Interior line of a gadget with its points ordered along `direction`.
struct CancelLine {
  Point2 origin, direction;
  std::vector<CancelPoint> points;
};

enum class GadgetKind { HBar, VBar, Diag, Tee, Mux, Demux, Star, Cross };

const char* to_string(GadgetKind k);
/// Inverse of to_string; throws std::invalid_argument on unknown names.
GadgetKind parse_kind(const std::string& s);

struct Gadget {
  int id = -1;
  GadgetKind kind = GadgetKind::HBar;
  Frame frame;
  int n = 0;
  int multiplicity = 0;  // largest track multiplicity
  std::vector<TrackRef> tracks;
  std::vector<CancelLine> lines;
  /// Intended valid choices: one label per track, in track order.
  std::vector<std::vector<Label>> valid_choices;
  /// Subgadgets of a composite, empty otherwise.
  std::vector<Gadget> parts;

  /// Points of a simple gadget: track points (track order, slot order) then line points.
  /// For a composite, the union of its parts' points (shared tracks once).
  std::vector<Point2> points() const;
  LabeledPointSet point_set() const;
  std::size_t interior_count() const;
};

// Two-track gadgets. Track A's pair labels must match track B's for the choice to be valid.
Gadget build_hbar(int n, const Frame& frame, TrackRef left, TrackRef right);
Gadget build_vbar(int n, const Frame& frame, TrackRef bottom, TrackRef top);
/// Tracks on two adjacent sides; the cancel line runs diagonally through their common corner.
Gadget build_diag(int n, const Frame& frame, TrackRef in_track, TrackRef out_track);
/// `component` selects which coordinate of the wide labels must equal the narrow label (0 or 1).
Gadget build_trimux(int n, const Frame& frame, TrackRef narrow, TrackRef wide, int component,
                    bool demux);
Gadget build_star(int n, const std::vector<std::vector<bool>>& adjacency, const Frame& frame,
                  TrackRef left, TrackRef right);
/// `a` and `b` lie on opposite sides, `stem` on a third side; valid choices share one label.
Gadget build_tee(int n, const Frame& frame, TrackRef a, TrackRef b, TrackRef stem);

/// Composite on a 4x4 frame. Inputs enter on the left (row y0+1) and bottom (column x0+1);
/// outputs leave on the right (row y0+1) and top (column x0+1). Internal tracks receive ids
/// first_internal_id, first_internal_id+1, ...
Gadget build_cross(int n, const Frame& frame, TrackRef in_left, TrackRef in_bottom,
                   TrackRef out_right, TrackRef out_top, int first_internal_id);

/// The simple gadgets of `g`: itself, or its parts for a composite.
std::vector<const Gadget*> simple_parts(const Gadget& g);

/// Labeled union of the points of simple gadgets. A track referenced by several gadgets
/// contributes its points once, labeled with every referencing gadget id.
LabeledPointSet collect_points(const std::vector<const Gadget*>& simple);

/// One maximum valid subset of a simple gadget.
struct LocalMaximum {
  std::vector<std::size_t> indices;  // into Gadget::points()
  std::vector<Point2> points;
  std::vector<int> slots;            // pair slot per track, -1 when no full pair is used
  std::vector<Label> labels;         // label per track (zero label when slot is -1)
};

struct Enumeration {
  std::size_t max_size = 0;
  std::vector<LocalMaximum> maxima;  // ordered by labels, then indices
  std::uint64_t nodes = 0;
};

/// Collinear classes of a simple gadget as index lists into Gadget::points(): one per track, then
/// one per interior line, each ordered along its line.
std::vector<std::vector<std::size_t>> gadget_lines(const Gadget& g);

/// All maximum-cardinality valid subsets of a simple gadget's own point set, found by a
/// line-structured search (at most one consecutive pair per collinear line).
Enumeration enumerate_valid_subsets(const Gadget& g);

/// The intended maximum subset of a simple gadget for one label per track: the labeled pairs plus,
/// on every interior line, the nearest point on each side of the pairs' hull.
/// Throws BuildError when the labels are not one of the gadget's valid choices.
std::vector<Point2> choice_subset(const Gadget& g, const std::vector<Label>& labels);

/// Joint label choices of a composite on its four external tracks, obtained by joining the parts'
/// maxima along shared tracks. Ordered lexicographically.
std::vector<std::vector<Label>> joint_choices(const Gadget& composite);

}  // namespace lecs
