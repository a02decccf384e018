#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "lecs/gadget.hpp"
#include "lecs/point_set.hpp"
#include "lecs/reduction.hpp"

namespace lecs {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Graph file: a header "n m", then m lines "u v" with 1 <= u < v <= n.
Graph parse_graph(std::istream& in);
Graph read_graph(const std::string& path);
std::string format_graph(const Graph& g);

/// Facet rectangle of one simple gadget, kept alongside the points for rendering.
struct FrameRecord {
  int gadget = 0;
  GadgetKind kind = GadgetKind::HBar;
  Frame frame;
  bool operator==(const FrameRecord& o) const {
    return gadget == o.gadget && kind == o.kind && frame.lower_left == o.frame.lower_left &&
           frame.width == o.frame.width && frame.height == o.frame.height;
  }
};

/// Contents of an instance file.
///
///   lecs-instance 1
///   dim 2|3
///   frame <gadget> <kind> <x0> <y0> <width> <height>      (any number)
///   <x> <y> [<z>] <gadgets> <role> <track> <slot> <pos> <line> <a> <b>
///
/// Coordinates are exact rationals "num/den"; gadgets is a comma-separated id list; a and b are
/// labels ("-", "i" or "i.j"). Lines starting with '#' are comments.
struct InstanceDoc {
  LabeledPointSet points;
  std::vector<FrameRecord> frames;
  bool operator==(const InstanceDoc&) const = default;
};

inline constexpr int kInstanceVersion = 1;

std::string format_scalar(const Scalar& s);  // always "num/den"
Scalar parse_scalar(const std::string& s);

std::string format_instance(const InstanceDoc& doc);
InstanceDoc parse_instance(std::istream& in);
InstanceDoc read_instance(const std::string& path);

/// Raw point file: one point per line, "x y" or "x y z", '#' comments allowed. Also accepts an
/// instance file.
InstanceDoc read_points(const std::string& path);

InstanceDoc instance_doc(const Instance& inst);
InstanceDoc gadget_doc(const Gadget& g);

struct SvgOptions {
  bool show_choices = false;  // overlay every track-pair combination: solid if valid, dashed if cancelled
  long units = 1000;          // viewport units per coordinate unit
};

/// Planar rendering: frames, tracks, and interior points by role. Throws std::invalid_argument for
/// lifted input.
std::string render_svg(const InstanceDoc& doc, const SvgOptions& opt = {});
/// Lifted rendering: every point as a vertex plus one rectangle face per frame (corners lifted to
/// the paraboloid). Throws std::invalid_argument for planar input.
std::string render_obj(const InstanceDoc& doc);

}  // namespace lecs
