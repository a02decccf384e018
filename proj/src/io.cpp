#include "lecs/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace lecs {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

bool blank_or_comment(const std::string& line) {
  auto t = split(line);
  return t.empty() || t[0][0] == '#';
}

long parse_long(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ParseError("expected an integer for " + what + ", got '" + s + "'");
  return v;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return in;
}

/// Exact decimal rendering of v rounded half away from zero to `places` digits.
std::string decimal(const Scalar& v, int places) {
  mpz_class scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  Scalar scaled = v * scale;
  mpz_class num = scaled.get_num(), den = scaled.get_den();
  bool neg = num < 0;
  if (neg) num = -num;
  mpz_class q = (2 * num + den) / (2 * den);
  std::string digits = q.get_str();
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places))
      digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  if (neg && q != 0) digits.insert(0, "-");
  return digits;
}

std::string join_ids(const std::vector<int>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(ids[i]);
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Graph files

Graph parse_graph(std::istream& in) {
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line))
    if (!blank_or_comment(line)) rows.push_back(split(line));
  if (rows.empty() || rows[0].size() != 2) throw ParseError("graph file: header must be 'n m'");
  long n = parse_long(rows[0][0], "vertex count");
  long m = parse_long(rows[0][1], "edge count");
  if (n < 1) throw ParseError("graph file: need at least one vertex");
  if (m < 0 || static_cast<std::size_t>(m) != rows.size() - 1)
    throw ParseError("graph file: header announces " + std::to_string(m) + " edges, found " +
                     std::to_string(rows.size() - 1));
  Graph g(static_cast<int>(n));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 2) throw ParseError("graph file: edge line " + std::to_string(i) + " must be 'u v'");
    long u = parse_long(rows[i][0], "edge endpoint"), v = parse_long(rows[i][1], "edge endpoint");
    std::string where = "graph file: edge '" + rows[i][0] + " " + rows[i][1] + "'";
    if (u == v) throw ParseError(where + " is a self-loop");
    if (u < 1 || v > n || u > v) throw ParseError(where + " must satisfy 1 <= u < v <= n");
    if (g.adjacent(static_cast<int>(u), static_cast<int>(v))) throw ParseError(where + " is repeated");
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  return g;
}

Graph read_graph(const std::string& path) {
  auto in = open(path);
  return parse_graph(in);
}

std::string format_graph(const Graph& g) {
  std::string s = std::to_string(g.n) + " " + std::to_string(g.edges.size()) + "\n";
  for (auto [u, v] : g.edges) s += std::to_string(u) + " " + std::to_string(v) + "\n";
  return s;
}

// ---------------------------------------------------------------------------
// Instance files

std::string format_scalar(const Scalar& s) {
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

Scalar parse_scalar(const std::string& s) {
  auto slash = s.find('/');
  std::string num = s.substr(0, slash), den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto integer = [](const std::string& t, bool sign) {
    std::size_t i = sign && !t.empty() && t[0] == '-' ? 1 : 0;
    if (i == t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!integer(num, true) || !integer(den, false)) throw ParseError("bad rational '" + s + "'");
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

std::string format_instance(const InstanceDoc& doc) {
  std::ostringstream out;
  out << "lecs-instance " << kInstanceVersion << "\n";
  out << "dim " << doc.points.dim << "\n";
  for (const auto& f : doc.frames)
    out << "frame " << f.gadget << " " << to_string(f.kind) << " " << format_scalar(f.frame.x0()) << " "
        << format_scalar(f.frame.y0()) << " " << format_scalar(f.frame.width) << " "
        << format_scalar(f.frame.height) << "\n";
  for (std::size_t i = 0; i < doc.points.size(); ++i) {
    const auto& p = doc.points.coords[i];
    out << format_scalar(p.x) << " " << format_scalar(p.y);
    if (doc.points.dim == 3) out << " " << format_scalar(p.z);
    if (i < doc.points.labels.size()) {
      const auto& l = doc.points.labels[i];
      out << " " << join_ids(l.gadgets) << " " << to_string(l.role) << " " << l.track << " " << l.slot
          << " " << l.pos << " " << l.line << " " << to_string(l.a) << " " << to_string(l.b);
    }
    out << "\n";
  }
  return out.str();
}

InstanceDoc parse_instance(std::istream& in) {
  std::string line;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  for (std::size_t no = 1; std::getline(in, line); ++no)
    if (!blank_or_comment(line)) rows.emplace_back(no, split(line));
  if (rows.size() < 2) throw ParseError("instance file: missing header");
  const auto& ver = rows[0].second;
  if (ver.size() != 2 || ver[0] != "lecs-instance")
    throw ParseError("instance file: first line must be 'lecs-instance <version>'");
  if (parse_long(ver[1], "version") != kInstanceVersion)
    throw ParseError("instance file: unsupported version " + ver[1]);
  const auto& dl = rows[1].second;
  if (dl.size() != 2 || dl[0] != "dim") throw ParseError("instance file: second line must be 'dim 2' or 'dim 3'");
  InstanceDoc doc;
  doc.points.dim = static_cast<int>(parse_long(dl[1], "dimension"));
  if (doc.points.dim != 2 && doc.points.dim != 3) throw ParseError("instance file: dimension must be 2 or 3");
  const std::size_t nc = static_cast<std::size_t>(doc.points.dim);
  for (std::size_t r = 2; r < rows.size(); ++r) {
    const auto& [no, t] = rows[r];
    std::string where = "instance file line " + std::to_string(no) + ": ";
    try {
      if (t[0] == "frame") {
        if (t.size() != 7) throw ParseError("frame needs 6 fields");
        FrameRecord f;
        f.gadget = static_cast<int>(parse_long(t[1], "gadget id"));
        f.kind = parse_kind(t[2]);
        f.frame.lower_left = {parse_scalar(t[3]), parse_scalar(t[4])};
        f.frame.width = parse_scalar(t[5]);
        f.frame.height = parse_scalar(t[6]);
        if (f.frame.width <= 0 || f.frame.height <= 0) throw ParseError("frame sides must be positive");
        doc.frames.push_back(f);
        continue;
      }
      if (t.size() != nc + 8) throw ParseError("expected " + std::to_string(nc) + " coordinates and 8 label fields");
      Point3 p{parse_scalar(t[0]), parse_scalar(t[1]), nc == 3 ? parse_scalar(t[2]) : Scalar(0)};
      PointLabel l;
      std::istringstream ids(t[nc]);
      for (std::string id; std::getline(ids, id, ',');) l.gadgets.push_back(static_cast<int>(parse_long(id, "gadget id")));
      l.role = parse_role(t[nc + 1]);
      l.track = static_cast<int>(parse_long(t[nc + 2], "track"));
      l.slot = static_cast<int>(parse_long(t[nc + 3], "slot"));
      l.pos = static_cast<int>(parse_long(t[nc + 4], "pos"));
      l.line = static_cast<int>(parse_long(t[nc + 5], "line"));
      l.a = parse_label(t[nc + 6]);
      l.b = parse_label(t[nc + 7]);
      doc.points.coords.push_back(p);
      doc.points.labels.push_back(std::move(l));
    } catch (const ParseError& e) {
      throw ParseError(where + e.what());
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + e.what());
    }
  }
  return doc;
}

InstanceDoc read_instance(const std::string& path) {
  auto in = open(path);
  return parse_instance(in);
}

InstanceDoc read_points(const std::string& path) {
  auto in = open(path);
  std::string line;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  for (std::size_t no = 1; std::getline(in, line); ++no)
    if (!blank_or_comment(line)) rows.emplace_back(no, split(line));
  if (!rows.empty() && rows[0].second[0] == "lecs-instance") {
    auto again = open(path);
    return parse_instance(again);
  }
  InstanceDoc doc;
  if (rows.empty()) return doc;
  std::size_t dim = rows[0].second.size();
  if (dim != 2 && dim != 3) throw ParseError("point file: each line needs 2 or 3 coordinates");
  doc.points.dim = static_cast<int>(dim);
  for (const auto& [no, t] : rows) {
    if (t.size() != dim)
      throw ParseError("point file line " + std::to_string(no) + ": expected " + std::to_string(dim) + " coordinates");
    doc.points.coords.push_back({parse_scalar(t[0]), parse_scalar(t[1]), dim == 3 ? parse_scalar(t[2]) : Scalar(0)});
  }
  return doc;
}

InstanceDoc instance_doc(const Instance& inst) {
  InstanceDoc doc;
  doc.points = inst.points;
  for (const auto* g : inst.simple()) doc.frames.push_back({g->id, g->kind, g->frame});
  return doc;
}

InstanceDoc gadget_doc(const Gadget& g) {
  InstanceDoc doc;
  auto parts = simple_parts(g);
  doc.points = parts.size() == 1 && parts[0] == &g ? g.point_set() : collect_points(parts);
  for (const auto* p : parts) doc.frames.push_back({p->id, p->kind, p->frame});
  return doc;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

const char* role_color(Role r) {
  switch (r) {
    case Role::PairPoint: return "#1f77b4";
    case Role::Cancel: return "#d62728";
    case Role::Sentinel: return "#2ca02c";
    case Role::GapBlocker: return "#9467bd";
    case Role::Bracket: return "#ff7f0e";
  }
  return "#000000";
}

struct Viewport {
  Scalar x0, y1;  // left and top of the drawing in input coordinates
  Scalar units, margin;
  std::string x(const Scalar& v) const { return decimal((v - x0) * units + margin, 3); }
  std::string y(const Scalar& v) const { return decimal((y1 - v) * units + margin, 3); }
};

/// Gadget-wise choice overlay: every combination of one pair per track, as the hull of its pair
/// points; dashed when some other point of the gadget lies in that closed hull.
void choice_overlay(const InstanceDoc& doc, const Viewport& vp, std::ostringstream& out) {
  const auto& P = doc.points;
  std::map<int, std::map<int, std::map<int, std::vector<std::size_t>>>> pairs;  // gadget, track, slot
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < P.size(); ++i) {
    const auto& l = P.labels[i];
    for (int g : l.gadgets) {
      members[g].push_back(i);
      if (l.role == Role::PairPoint) pairs[g][l.track][l.slot].push_back(i);
    }
  }
  out << "<g id=\"choices\" fill=\"none\" stroke-width=\"1\">\n";
  for (const auto& [g, tracks] : pairs) {
    std::vector<const std::map<int, std::vector<std::size_t>>*> tl;
    std::size_t combos = 1;
    for (const auto& [t, slots] : tracks) {
      tl.push_back(&slots);
      combos *= slots.size();
    }
    if (tl.size() < 2) continue;
    if (combos > 4096) {
      out << "<!-- gadget " << g << ": " << combos << " combinations, overlay skipped -->\n";
      continue;
    }
    std::vector<std::map<int, std::vector<std::size_t>>::const_iterator> it;
    for (auto* s : tl) it.push_back(s->begin());
    for (std::size_t c = 0; c < combos; ++c) {
      std::vector<std::size_t> chosen;
      for (auto& x : it) chosen.insert(chosen.end(), x->second.begin(), x->second.end());
      std::vector<Point2> q;
      for (auto i : chosen) q.push_back(P.point2(i));
      auto h = convex_hull(q);
      bool cancelled = false;
      for (auto i : members[g])
        if (std::find(chosen.begin(), chosen.end(), i) == chosen.end() &&
            classify_against_hull(P.point2(i), h) != Side::Outside)
          cancelled = true;
      out << "<polygon points=\"";
      for (std::size_t k = 0; k < h.size(); ++k) out << (k ? " " : "") << vp.x(h[k].x) << "," << vp.y(h[k].y);
      out << "\" stroke=\"" << (cancelled ? "#bbbbbb\" stroke-dasharray=\"4 3" : "#2ca02c") << "\"/>\n";
      // advance the odometer
      for (std::size_t k = it.size(); k-- > 0;) {
        if (++it[k] != tl[k]->end()) break;
        it[k] = tl[k]->begin();
      }
    }
  }
  out << "</g>\n";
}

}  // namespace

std::string render_svg(const InstanceDoc& doc, const SvgOptions& opt) {
  const auto& P = doc.points;
  if (P.dim != 2) throw std::invalid_argument("SVG rendering needs a planar instance (dim 2)");
  std::vector<Point2> extent = P.points2();
  for (const auto& f : doc.frames) {
    extent.push_back(f.frame.lower_left);
    extent.push_back({f.frame.x1(), f.frame.y1()});
  }
  Scalar x0 = 0, y0 = 0, x1 = 1, y1 = 1;
  if (!extent.empty()) {
    x0 = x1 = extent[0].x;
    y0 = y1 = extent[0].y;
    for (const auto& p : extent) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
  }
  Viewport vp{x0, y1, Scalar(opt.units), Scalar(opt.units) / 20};
  std::string w = decimal((x1 - x0) * vp.units + 2 * vp.margin, 3);
  std::string h = decimal((y1 - y0) * vp.units + 2 * vp.margin, 3);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  out << "<!-- exact geometry (x right, y up); drawing scale " << opt.units << " units per coordinate unit\n";
  std::string exact = format_instance(doc);
  for (std::size_t at = exact.find("--"); at != std::string::npos; at = exact.find("--", at)) exact.replace(at, 2, "- -");
  out << exact << "-->\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"#ffffff\"/>\n";
  out << "<g id=\"frames\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\">\n";
  for (const auto& f : doc.frames)
    out << "<rect x=\"" << vp.x(f.frame.x0()) << "\" y=\"" << vp.y(f.frame.y1()) << "\" width=\""
        << decimal(f.frame.width * vp.units, 3) << "\" height=\"" << decimal(f.frame.height * vp.units, 3)
        << "\"><title>" << to_string(f.kind) << " " << f.gadget << "</title></rect>\n";
  out << "</g>\n";
  if (opt.show_choices && P.labels.size() == P.size()) choice_overlay(doc, vp, out);
  out << "<g id=\"points\" stroke=\"none\">\n";
  for (std::size_t i = 0; i < P.size(); ++i) {
    const char* color = i < P.labels.size() ? role_color(P.labels[i].role) : "#000000";
    out << "<circle cx=\"" << vp.x(P.coords[i].x) << "\" cy=\"" << vp.y(P.coords[i].y) << "\" r=\"2\" fill=\""
        << color << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string render_obj(const InstanceDoc& doc) {
  const auto& P = doc.points;
  if (P.dim != 3) throw std::invalid_argument("OBJ rendering needs a lifted instance (dim 3)");
  std::ostringstream out;
  out << "# lecs lifted instance: " << P.size() << " points, " << doc.frames.size() << " facets\n";
  out << "# vertex coordinates are rounded to 9 decimals; each is followed by its exact value\n";
  for (const auto& p : P.coords) {
    out << "v " << decimal(p.x, 9) << " " << decimal(p.y, 9) << " " << decimal(p.z, 9) << "\n";
    out << "# " << format_scalar(p.x) << " " << format_scalar(p.y) << " " << format_scalar(p.z) << "\n";
  }
  // facet corners lie on the paraboloid z = x^2 + y^2; shared corners are emitted once
  std::map<Point2, std::size_t> corner;
  std::size_t next = P.size() + 1;
  std::ostringstream faces;
  for (const auto& f : doc.frames) {
    Point2 c[4] = {f.frame.lower_left, {f.frame.x1(), f.frame.y0()}, {f.frame.x1(), f.frame.y1()}, {f.frame.x0(), f.frame.y1()}};
    faces << "f";
    for (const auto& q : c) {
      auto [it, fresh] = corner.emplace(q, next);
      if (fresh) {
        Scalar z = q.x * q.x + q.y * q.y;
        out << "v " << decimal(q.x, 9) << " " << decimal(q.y, 9) << " " << decimal(z, 9) << "\n";
        out << "# " << format_scalar(q.x) << " " << format_scalar(q.y) << " " << format_scalar(z) << "\n";
        ++next;
      }
      faces << " " << it->second;
    }
    faces << "\n";
  }
  out << "# one face per gadget frame\n";
  out << faces.str();
  return out.str();
}

}  // namespace lecs
