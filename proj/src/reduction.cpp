#include "lecs/reduction.hpp"

#include <algorithm>
#include <sstream>

namespace lecs {

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(int vertices) : n(vertices) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
}

Graph Graph::complete(int vertices) {
  Graph g(vertices);
  for (int u = 1; u <= vertices; ++u)
    for (int v = u + 1; v <= vertices; ++v) g.add_edge(u, v);
  return g;
}

void Graph::add_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("self-loop " + std::to_string(u));
  if (u < 1 || v < 1 || u > n || v > n) throw std::invalid_argument("edge endpoint out of range");
  edges.insert({std::min(u, v), std::max(u, v)});
}

bool Graph::adjacent(int u, int v) const { return edges.count({std::min(u, v), std::max(u, v)}) > 0; }

std::vector<std::vector<bool>> Graph::adjacency() const {
  std::vector<std::vector<bool>> a(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  for (auto [u, v] : edges) {
    a[static_cast<std::size_t>(u - 1)][static_cast<std::size_t>(v - 1)] = true;
    a[static_cast<std::size_t>(v - 1)][static_cast<std::size_t>(u - 1)] = true;
  }
  return a;
}

// ---------------------------------------------------------------------------
// Counts

Census census(long k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  Census c;
  c.hbar = k * k;
  c.vbar = k * (3 * k - 1) / 2;
  c.diag = k * (3 * k - 1) / 2;
  c.tee = 2 * k * (k - 1);
  c.trimux = 2 * k * (k - 1);
  c.star = k * (k - 1) / 2;
  return c;
}

long target_size(long k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  return k * (35 * k - 23);
}

long computed_target(long k) {
  auto g = layout(static_cast<int>(k));
  return g.realized().local_sum() - 2 * g.shared_edges();
}

// ---------------------------------------------------------------------------
// Layout
//
// Tile (i, j), j <= i, has its lower-left corner at (M + 5(j-1), 5(k-i)). Row i runs along the
// cell row y = Y+1 of its tiles, column j along the cell column x = X0+1.
//   off-diagonal tile: a cross on [X0, X0+4] x [Y, Y+4] plus the connector to the column below:
//     tee (1,-1) [column in/out, stem right], star (2,-1), hbar (3,-1), diag (4,-1),
//     vbar (4,0), tee (4,1) [row in/out, stem from the connector].
//   diagonal tile: hbar (0,1), diag (1,1) turning row i into column i, then vbars downwards.
// Padding hbars extend rows 2..k to the left, padding vbars extend column k downwards.

namespace {

constexpr long kTile = 5;

class LayoutBuilder {
 public:
  explicit LayoutBuilder(int k) { g_.k = k; }

  int vertical(long x, long y, Lane lane) { return edge({x, y}, {x, y + 1}, lane); }
  int horizontal(long x, long y, Lane lane, bool decreasing = false) {
    return decreasing ? edge({x + 1, y}, {x, y}, lane) : edge({x, y}, {x + 1, y}, lane);
  }

  void cell(GadgetKind kind, Frame f, int row, int col, std::vector<int> edges, int component = 0) {
    g_.cells.push_back({kind, f, row, col, std::move(edges), component});
  }

  GridLayout take() { return std::move(g_); }

 private:
  GridLayout g_;
  std::map<std::pair<std::pair<long, long>, std::pair<long, long>>, int> index_;

  int edge(std::pair<long, long> s, std::pair<long, long> e, Lane lane) {
    auto key = std::minmax(s, e);
    auto it = index_.find(key);
    Point2 ps{Scalar(s.first), Scalar(s.second)}, pe{Scalar(e.first), Scalar(e.second)};
    if (it != index_.end()) {
      const auto& ex = g_.edges[static_cast<std::size_t>(it->second)];
      if (!(ex.start == ps) || !(ex.lane == lane))
        throw LayoutError("edge reused with a different orientation or lane");
      return it->second;
    }
    int id = static_cast<int>(g_.edges.size());
    g_.edges.push_back({ps, pe, lane});
    index_[key] = id;
    return id;
  }
};

Frame cell_at(long x, long y) { return unit_cell(x, y); }

}  // namespace

Census GridLayout::realized() const {
  Census c;
  for (const auto& cell : cells) {
    switch (cell.kind) {
      case GadgetKind::HBar: ++c.hbar; break;
      case GadgetKind::VBar: ++c.vbar; break;
      case GadgetKind::Diag: ++c.diag; break;
      case GadgetKind::Tee: ++c.tee; break;
      case GadgetKind::Mux:
      case GadgetKind::Demux: ++c.trimux; break;
      case GadgetKind::Star: ++c.star; break;
      case GadgetKind::Cross:
        c.diag += 2;
        c.tee += 2;
        c.trimux += 4;
        break;
    }
  }
  return c;
}

long GridLayout::shared_edges() const {
  std::vector<int> uses(edges.size(), 0);
  long internal = 0;
  for (const auto& cell : cells) {
    for (int e : cell.edges) ++uses[static_cast<std::size_t>(e)];
    if (cell.kind == GadgetKind::Cross) internal += 7;
  }
  return internal + std::count(uses.begin(), uses.end(), 2);
}

GridLayout layout(int k) {
  if (k < 1) throw LayoutError("k must be at least 1");
  LayoutBuilder b(k);
  const long K = k;
  const long M = K - 1;
  for (int i = 1; i <= k; ++i) {
    const long Y = (K - i) * kTile;
    const Lane row{LaneKind::Row, i, 0};
    for (long t = 1; t < i; ++t) {
      long x = M - t;
      b.cell(GadgetKind::HBar, cell_at(x, Y + 1), i, 0,
             {b.vertical(x, Y + 1, row), b.vertical(x + 1, Y + 1, row)});
    }
    for (int j = 1; j < i; ++j) {
      const long X = M + (j - 1) * kTile;
      const Lane col{LaneKind::Column, 0, j};
      b.cell(GadgetKind::Cross, Frame{{Scalar(X), Scalar(Y)}, 4, 4}, i, j,
             {b.vertical(X, Y + 1, row), b.horizontal(X + 1, Y, col), b.vertical(X + 4, Y + 1, row),
              b.horizontal(X + 1, Y + 4, col)});
      b.cell(GadgetKind::Tee, cell_at(X + 1, Y - 1), i, j,
             {b.horizontal(X + 1, Y, col), b.horizontal(X + 1, Y - 1, col),
              b.vertical(X + 2, Y - 1, col)});
      b.cell(GadgetKind::Star, cell_at(X + 2, Y - 1), i, j,
             {b.vertical(X + 2, Y - 1, col), b.vertical(X + 3, Y - 1, row)});
      b.cell(GadgetKind::HBar, cell_at(X + 3, Y - 1), i, j,
             {b.vertical(X + 3, Y - 1, row), b.vertical(X + 4, Y - 1, row)});
      b.cell(GadgetKind::Diag, cell_at(X + 4, Y - 1), i, j,
             {b.vertical(X + 4, Y - 1, row), b.horizontal(X + 4, Y, row, true)});
      b.cell(GadgetKind::VBar, cell_at(X + 4, Y), i, j,
             {b.horizontal(X + 4, Y, row, true), b.horizontal(X + 4, Y + 1, row, true)});
      b.cell(GadgetKind::Tee, cell_at(X + 4, Y + 1), i, j,
             {b.vertical(X + 4, Y + 1, row), b.vertical(X + 5, Y + 1, row),
              b.horizontal(X + 4, Y + 1, row, true)});
    }
    const long X = M + (i - 1) * kTile;
    const Lane col{LaneKind::Column, 0, i};
    b.cell(GadgetKind::HBar, cell_at(X, Y + 1), i, i,
           {b.vertical(X, Y + 1, row), b.vertical(X + 1, Y + 1, row)});
    b.cell(GadgetKind::Diag, cell_at(X + 1, Y + 1), i, i,
           {b.vertical(X + 1, Y + 1, row), b.horizontal(X + 1, Y + 1, col)});
    const long down = i < k ? 2 : K * K - 2 * K + 2;
    for (long t = 0; t < down; ++t) {
      long y = Y - t;
      b.cell(GadgetKind::VBar, cell_at(X + 1, y), i, i,
             {b.horizontal(X + 1, y, col), b.horizontal(X + 1, y + 1, col)});
    }
  }
  GridLayout g = b.take();
  Census want = census(k), got = g.realized();
  if (want != got) {
    std::ostringstream os;
    os << "layout for k=" << k << " realizes hbar/vbar/diag/tee/trimux/star = " << got.hbar << "/"
       << got.vbar << "/" << got.diag << "/" << got.tee << "/" << got.trimux << "/" << got.star
       << " instead of " << want.hbar << "/" << want.vbar << "/" << want.diag << "/" << want.tee
       << "/" << want.trimux << "/" << want.star;
    throw LayoutError(os.str());
  }
  return g;
}

// ---------------------------------------------------------------------------
// Assembly

std::string Reconciliation::report() const {
  std::ostringstream os;
  os << "local maxima sum " << local_sum << ", shared tracks " << shared_tracks
     << ", realized global size " << local_sum << " - 2*" << shared_tracks << " = " << computed
     << ", nominal k(35k-23) = " << nominal << (matches() ? " (match)" : " (MISMATCH)");
  return os.str();
}

ReconciliationError::ReconciliationError(const Reconciliation& r)
    : std::runtime_error("size reconciliation failed: " + r.report()), rec(r) {}

std::vector<const Gadget*> Instance::simple() const {
  std::vector<const Gadget*> out;
  for (const auto& g : gadgets)
    for (auto* s : simple_parts(g)) out.push_back(s);
  return out;
}

std::vector<std::size_t> Instance::indices_of(const Gadget& g) const {
  std::map<Point2, std::size_t> at;
  for (std::size_t i = 0; i < points.size(); ++i) at[points.point2(i)] = i;
  std::vector<std::size_t> out;
  for (const auto& p : g.points()) {
    auto it = at.find(p);
    if (it == at.end()) throw GeometryError("gadget point missing from instance");
    out.push_back(it->second);
  }
  return out;
}

namespace {

Gadget build_cell(const LayoutCell& c, const std::vector<TrackRef>& tracks, int n,
                  const Graph& graph, int first_internal_id) {
  auto t = [&](std::size_t a) { return tracks[static_cast<std::size_t>(c.edges[a])]; };
  switch (c.kind) {
    case GadgetKind::HBar: return build_hbar(n, c.frame, t(0), t(1));
    case GadgetKind::VBar: return build_vbar(n, c.frame, t(0), t(1));
    case GadgetKind::Diag: return build_diag(n, c.frame, t(0), t(1));
    case GadgetKind::Tee: return build_tee(n, c.frame, t(0), t(1), t(2));
    case GadgetKind::Star: return build_star(n, graph.adjacency(), c.frame, t(0), t(1));
    case GadgetKind::Mux:
    case GadgetKind::Demux:
      return build_trimux(n, c.frame, t(0), t(1), c.component, c.kind == GadgetKind::Demux);
    case GadgetKind::Cross:
      return build_cross(n, c.frame, t(0), t(1), t(2), t(3), first_internal_id);
  }
  throw BuildError("unknown gadget kind");
}

std::string describe(const LayoutCell& c) {
  std::ostringstream os;
  os << to_string(c.kind) << " at (" << c.frame.x0().get_str() << "," << c.frame.y0().get_str()
     << ") of tile (" << c.row << "," << c.col << ")";
  return os.str();
}

/// Neighbouring gadgets must agree on their common edge: both carry the same track or neither does.
void check_shared_edges(const std::vector<const Gadget*>& simple) {
  struct Side {
    const Gadget* g;
    const Track* t;
  };
  std::map<std::pair<Point2, Point2>, std::vector<Side>> sides;
  std::set<Point2> cells;
  for (const auto* g : simple) {
    const Frame& f = g->frame;
    if (f.width != 1 || f.height != 1) throw LayoutError("simple gadget frame is not a unit cell");
    if (!cells.insert(f.lower_left).second) throw LayoutError("two gadgets occupy one cell");
    Point2 c[4] = {{f.x0(), f.y0()}, {f.x1(), f.y0()}, {f.x1(), f.y1()}, {f.x0(), f.y1()}};
    for (int s = 0; s < 4; ++s) {
      auto key = std::minmax(c[s], c[(s + 1) % 4]);
      const Track* on = nullptr;
      for (const auto& t : g->tracks) {
        if (std::minmax(t->start, t->end) == key) on = t.get();
      }
      sides[{key.first, key.second}].push_back({g, on});
    }
  }
  for (const auto& [edge, list] : sides) {
    if (list.size() > 2) throw LayoutError("edge shared by more than two cells");
    if (list.size() == 2 && list[0].t != list[1].t)
      throw LayoutError("neighbouring gadgets disagree on a common edge");
  }
}

}  // namespace

Instance assemble(const Graph& graph, int k, const AssembleOptions& opt) {
  Instance inst;
  inst.k = k;
  inst.graph = graph;
  inst.grid = layout(k);
  const int n = graph.n;
  std::vector<TrackRef> tracks;
  for (std::size_t e = 0; e < inst.grid.edges.size(); ++e) {
    const auto& spec = inst.grid.edges[e];
    tracks.push_back(make_track(static_cast<int>(e), spec.start, spec.end, vertex_labels(n)));
    inst.lanes[static_cast<int>(e)] = spec.lane;
  }
  int next_internal = static_cast<int>(tracks.size());
  for (const auto& c : inst.grid.cells) {
    try {
      inst.gadgets.push_back(build_cell(c, tracks, n, graph, next_internal));
    } catch (const BuildError& e) {
      throw BuildError(describe(c) + ": " + e.what());
    }
    if (c.kind == GadgetKind::Cross) {
      for (int t = 0; t < 7; ++t) inst.lanes[next_internal + t] = {LaneKind::Wide, c.row, c.col};
      next_internal += 7;
    }
  }
  int id = 0;
  for (auto& g : inst.gadgets) {
    if (g.parts.empty()) {
      g.id = id++;
    } else {
      g.id = -1;
      for (auto& p : g.parts) p.id = id++;
    }
  }
  auto simple = inst.simple();
  check_shared_edges(simple);
  inst.points = collect_points(simple);

  std::map<const Track*, int> owners;
  for (const auto* g : simple) {
    inst.rec.local_sum += g->kind == GadgetKind::Tee ? 10 : 6;
    for (const auto& t : g->tracks) ++owners[t.get()];
  }
  for (const auto& [t, c] : owners) inst.rec.shared_tracks += c == 2;
  inst.rec.computed = inst.rec.local_sum - 2 * inst.rec.shared_tracks;
  inst.rec.nominal = target_size(k);
  if (opt.strict && !inst.rec.matches()) throw ReconciliationError(inst.rec);
  inst.target = inst.rec.computed;
  return inst;
}

// ---------------------------------------------------------------------------
// Lifting

Scalar facet_height(const Frame& f, const Point2& p) {
  Scalar a = f.x0() + f.width / 2, b = f.y0() + f.height / 2;
  Scalar r2 = (f.width * f.width + f.height * f.height) / 4;
  return 2 * a * p.x + 2 * b * p.y - (a * a + b * b - r2);
}

Instance lift(const Instance& planar) {
  if (planar.points.dim != 2) throw GeometryError("lift expects a planar instance");
  Instance out = planar;
  out.points.dim = 3;
  std::vector<bool> set(out.points.size(), false);
  for (const auto* g : planar.simple()) {
    auto idx = planar.indices_of(*g);
    for (auto i : idx) {
      Point2 p = planar.points.point2(i);
      Scalar z = facet_height(g->frame, p);
      if (set[i] && out.points.coords[i].z != z)
        throw GeometryError("adjacent facets disagree on a shared point");
      out.points.coords[i].z = z;
      set[i] = true;
    }
  }
  if (std::find(set.begin(), set.end(), false) != set.end())
    throw GeometryError("a point belongs to no gadget");
  return out;
}

// ---------------------------------------------------------------------------
// Certificates

Label lane_label(const Lane& lane, const std::vector<int>& clique) {
  auto v = [&](int i) { return clique.at(static_cast<std::size_t>(i - 1)); };
  switch (lane.kind) {
    case LaneKind::Row: return {v(lane.i), 0};
    case LaneKind::Column: return {v(lane.j), 0};
    case LaneKind::Wide: return {v(lane.i), v(lane.j)};
  }
  return {};
}

std::vector<std::size_t> clique_to_subset(const Instance& inst, const std::vector<int>& clique) {
  if (clique.size() != static_cast<std::size_t>(inst.k))
    throw CertificateError("clique must list exactly k vertices");
  for (std::size_t a = 0; a < clique.size(); ++a) {
    if (clique[a] < 1 || clique[a] > inst.graph.n) throw CertificateError("vertex out of range");
    for (std::size_t b = a + 1; b < clique.size(); ++b)
      if (!inst.graph.adjacent(clique[a], clique[b]))
        throw CertificateError("vertices " + std::to_string(clique[a]) + " and " +
                               std::to_string(clique[b]) + " are not adjacent");
  }
  std::map<Point2, std::size_t> at;
  for (std::size_t i = 0; i < inst.points.size(); ++i) at[inst.points.point2(i)] = i;
  std::set<std::size_t> q;
  for (const auto* g : inst.simple()) {
    std::vector<Label> labels;
    for (const auto& t : g->tracks) labels.push_back(lane_label(inst.lanes.at(t->id), clique));
    for (const auto& p : choice_subset(*g, labels)) q.insert(at.at(p));
  }
  return {q.begin(), q.end()};
}

std::vector<int> subset_to_clique(const Instance& inst, const std::vector<std::size_t>& q) {
  if (static_cast<long>(q.size()) != inst.target)
    throw CertificateError("subset size " + std::to_string(q.size()) + " differs from target " +
                           std::to_string(inst.target));
  std::set<std::size_t> in(q.begin(), q.end());
  std::map<Lane, Label> seen;
  for (const auto* g : inst.simple()) {
    auto idx = inst.indices_of(*g);
    std::vector<Label> labels;
    std::size_t at = 0;
    for (const auto& t : g->tracks) {
      int slot = -1, used = 0;
      for (std::size_t s = 0; s < t->size(); ++s) {
        bool a = in.count(idx[at + 2 * s]) > 0, b = in.count(idx[at + 2 * s + 1]) > 0;
        used += a + b;
        if (a && b) slot = static_cast<int>(s);
      }
      if (slot < 0 || used != 2)
        throw CertificateError("gadget " + std::to_string(g->id) + " does not use one labeled pair per track");
      Label l = t->labels[static_cast<std::size_t>(slot)];
      labels.push_back(l);
      auto [it, fresh] = seen.emplace(inst.lanes.at(t->id), l);
      if (!fresh && it->second != l) throw CertificateError("a lane carries two different labels");
      at += 2 * t->size();
    }
    if (std::find(g->valid_choices.begin(), g->valid_choices.end(), labels) == g->valid_choices.end())
      throw CertificateError("gadget " + std::to_string(g->id) + " uses an invalid label combination");
    std::size_t inside = 0;
    for (auto i : idx) inside += in.count(i);
    std::size_t want = g->kind == GadgetKind::Tee ? 10 : 6;
    if (inside != want)
      throw CertificateError("gadget " + std::to_string(g->id) + " holds " + std::to_string(inside) +
                             " subset points instead of " + std::to_string(want));
  }
  std::vector<int> out;
  for (int i = 1; i <= inst.k; ++i) {
    auto it = seen.find(Lane{LaneKind::Row, i, 0});
    if (it == seen.end()) throw CertificateError("row " + std::to_string(i) + " is not decodable");
    out.push_back(it->second.first);
  }
  return out;
}

}  // namespace lecs
