#include "lecs/gadget.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "lecs/search.hpp"

namespace lecs {

// ---------------------------------------------------------------------------
// Frames and tracks

bool Frame::contains(const Point2& p) const {
  return x0() <= p.x && p.x <= x1() && y0() <= p.y && p.y <= y1();
}

bool Frame::strictly_contains(const Point2& p) const {
  return x0() < p.x && p.x < x1() && y0() < p.y && p.y < y1();
}

Frame unit_cell(long x, long y) { return Frame{{Scalar(x), Scalar(y)}, 1, 1}; }

int Track::slot_of(const Label& l) const {
  auto it = std::find(labels.begin(), labels.end(), l);
  return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
}

std::vector<Point2> Track::points() const {
  std::vector<Point2> out;
  for (const auto& pr : pairs) {
    out.push_back(pr.first);
    out.push_back(pr.second);
  }
  return out;
}

TrackRef make_track(int id, const Point2& start, const Point2& end, std::vector<Label> labels) {
  if (labels.empty()) throw BuildError("track needs at least one pair");
  if (start == end) throw BuildError("track carrier is degenerate");
  auto t = std::make_shared<Track>();
  t->id = id;
  t->start = start;
  t->end = end;
  const long m = static_cast<long>(labels.size());
  const Scalar delta = make_scalar(1, 8 * (m + 1) * (m + 1));
  auto at = [&](const Scalar& s) {
    return Point2{start.x + s * (end.x - start.x), start.y + s * (end.y - start.y)};
  };
  for (long i = 0; i < m; ++i) {
    Scalar c = make_scalar(i + 1, m + 1);
    t->pairs.push_back({at(c - delta), at(c + delta)});
  }
  t->labels = std::move(labels);
  return t;
}

std::vector<Label> vertex_labels(int n) {
  std::vector<Label> out;
  for (int i = 1; i <= n; ++i) out.push_back({i, 0});
  return out;
}

std::vector<Label> pair_labels(int n, bool first_fast) {
  std::vector<Label> out;
  for (int s = 0; s < n * n; ++s) {
    if (first_fast)
      out.push_back({s % n + 1, s / n + 1});
    else
      out.push_back({s / n + 1, s % n + 1});
  }
  return out;
}

const char* to_string(GadgetKind k) {
  switch (k) {
    case GadgetKind::HBar: return "hbar";
    case GadgetKind::VBar: return "vbar";
    case GadgetKind::Diag: return "diag";
    case GadgetKind::Tee: return "tee";
    case GadgetKind::Mux: return "mux";
    case GadgetKind::Demux: return "demux";
    case GadgetKind::Star: return "star";
    case GadgetKind::Cross: return "cross";
  }
  return "?";
}

GadgetKind parse_kind(const std::string& s) {
  for (auto k : {GadgetKind::HBar, GadgetKind::VBar, GadgetKind::Diag, GadgetKind::Tee,
                 GadgetKind::Mux, GadgetKind::Demux, GadgetKind::Star, GadgetKind::Cross})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown gadget kind: " + s);
}

// ---------------------------------------------------------------------------
// Local frames: every builder works in the unit square, mapped onto the real frame by one of the
// eight square symmetries followed by scaling and translation.

namespace {

enum class LocalSide { Left, Right, Bottom, Top };

struct Placement {
  Frame frame;
  int sym = 0;

  Point2 to_global(const Point2& l) const {
    const Scalar &u = l.x, &v = l.y;
    Scalar a, b;
    switch (sym) {
      case 0: a = u; b = v; break;
      case 1: a = 1 - u; b = v; break;
      case 2: a = u; b = 1 - v; break;
      case 3: a = 1 - u; b = 1 - v; break;
      case 4: a = v; b = u; break;
      case 5: a = 1 - v; b = u; break;
      case 6: a = v; b = 1 - u; break;
      default: a = 1 - v; b = 1 - u; break;
    }
    return {frame.x0() + frame.width * a, frame.y0() + frame.height * b};
  }

  Point2 to_local(const Point2& g) const {
    Scalar a = (g.x - frame.x0()) / frame.width, b = (g.y - frame.y0()) / frame.height;
    switch (sym) {
      case 0: return {a, b};
      case 1: return {1 - a, b};
      case 2: return {a, 1 - b};
      case 3: return {1 - a, 1 - b};
      case 4: return {b, a};
      case 5: return {b, 1 - a};
      case 6: return {1 - b, a};
      default: return {1 - b, 1 - a};
    }
  }

  Point2 direction_to_global(const Point2& o, const Point2& d) const {
    Point2 g0 = to_global(o), g1 = to_global({o.x + d.x, o.y + d.y});
    return {g1.x - g0.x, g1.y - g0.y};
  }
};

std::optional<LocalSide> side_of(const Placement& pl, const Track& t) {
  Point2 s = pl.to_local(t.start), e = pl.to_local(t.end);
  auto full = [](const Scalar& a, const Scalar& b) {
    return (a == 0 && b == 1) || (a == 1 && b == 0);
  };
  if (s.x == 0 && e.x == 0 && full(s.y, e.y)) return LocalSide::Left;
  if (s.x == 1 && e.x == 1 && full(s.y, e.y)) return LocalSide::Right;
  if (s.y == 0 && e.y == 0 && full(s.x, e.x)) return LocalSide::Bottom;
  if (s.y == 1 && e.y == 1 && full(s.x, e.x)) return LocalSide::Top;
  return std::nullopt;
}

Placement find_placement(const Frame& frame,
                         const std::vector<std::pair<const Track*, LocalSide>>& want) {
  for (int sym = 0; sym < 8; ++sym) {
    Placement pl{frame, sym};
    bool ok = true;
    for (const auto& [t, side] : want) {
      auto s = side_of(pl, *t);
      if (!s || *s != side) {
        ok = false;
        break;
      }
    }
    if (ok) return pl;
  }
  throw BuildError("tracks do not sit on the required sides of the frame");
}

std::vector<PointPair> local_pairs(const Placement& pl, const Track& t) {
  std::vector<PointPair> out;
  for (const auto& pr : t.pairs) out.push_back({pl.to_local(pr.first), pl.to_local(pr.second)});
  return out;
}

/// A selection of two consecutive points on a track: a labeled pair, or the gap between pairs.
struct Choice {
  bool pair;
  int slot;
  Point2 p, q;
};

std::vector<Choice> choices(const std::vector<PointPair>& pairs) {
  std::vector<Choice> out;
  for (std::size_t t = 0; t < pairs.size(); ++t)
    out.push_back({true, static_cast<int>(t), pairs[t].first, pairs[t].second});
  for (std::size_t t = 0; t + 1 < pairs.size(); ++t)
    out.push_back({false, static_cast<int>(t), pairs[t].second, pairs[t + 1].first});
  return out;
}

Scalar cross2(const Point2& u, const Point2& v) { return u.x * v.y - u.y * v.x; }
Point2 sub2(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }

/// Parameter along O + s*D of the crossing with line pq.
Scalar line_param(const Point2& O, const Point2& D, const Point2& p, const Point2& q) {
  Scalar den = cross2(D, sub2(q, p));
  if (den == 0) throw BuildError("segment parallel to cancel line");
  Scalar lam = cross2(D, sub2(O, p)) / den;
  Point2 x{p.x + lam * (q.x - p.x), p.y + lam * (q.y - p.y)};
  Point2 w = sub2(x, O);
  return (w.x * D.x + w.y * D.y) / (D.x * D.x + D.y * D.y);
}

struct Interval {
  Scalar lo, hi;
  bool open_contains(const Scalar& s) const { return lo < s && s < hi; }
  bool closed_contains(const Scalar& s) const { return lo <= s && s <= hi; }
};

/// Hull of two two-point choices lying on opposite sides of the line, cut by the line.
Interval cut(const Point2& O, const Point2& D, const Choice& a, const Choice& b) {
  std::vector<Scalar> s;
  for (const auto& p : {a.p, a.q})
    for (const auto& q : {b.p, b.q}) s.push_back(line_param(O, D, p, q));
  auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  return {*lo, *hi};
}

/// Parameter range of O + s*D inside the unit square.
Interval unit_range(const Point2& O, const Point2& D) {
  std::optional<Scalar> lo, hi;
  auto axis = [&](const Scalar& o, const Scalar& d) {
    if (d == 0) return;
    Scalar a = (0 - o) / d, b = (1 - o) / d;
    if (b < a) std::swap(a, b);
    lo = lo ? std::max(*lo, a) : a;
    hi = hi ? std::min(*hi, b) : b;
  };
  axis(O.x, D.x);
  axis(O.y, D.y);
  return {*lo, *hi};
}

struct LinePoint {
  Scalar s;
  CancelPoint cp;
};

/// Places the points of the single cancel line of a two-track gadget (local coordinates).
/// Every combination of the two tracks' choices (pairs and gaps) that is not a valid pair
/// combination receives a point strictly inside its cut; no point touches a valid cut.
std::vector<LinePoint> place_two_track(const std::vector<PointPair>& A,
                                       const std::vector<PointPair>& B,
                                       const std::vector<Label>& la, const std::vector<Label>& lb,
                                       const std::function<bool(int, int)>& valid,
                                       const Point2& O, const Point2& D) {
  auto ca = choices(A), cb = choices(B);
  struct Combo {
    const Choice* a;
    const Choice* b;
    Interval iv;
    bool valid_pair;
  };
  std::vector<Combo> combos;
  for (const auto& x : ca)
    for (const auto& y : cb)
      combos.push_back({&x, &y, cut(O, D, x, y), x.pair && y.pair && valid(x.slot, y.slot)});

  std::vector<Interval> V;
  std::vector<std::size_t> gaps;  // combos involving at least one gap
  for (std::size_t i = 0; i < combos.size(); ++i) {
    if (combos[i].valid_pair) V.push_back(combos[i].iv);
    if (!(combos[i].a->pair && combos[i].b->pair)) gaps.push_back(i);
  }
  std::vector<bool> gap_hit(gaps.size(), false);
  std::vector<LinePoint> pts;

  auto in_valid = [&](const Scalar& m) {
    return std::any_of(V.begin(), V.end(), [&](const Interval& v) { return v.closed_contains(m); });
  };
  auto taken = [&](const Scalar& m) {
    return std::any_of(pts.begin(), pts.end(), [&](const LinePoint& p) { return p.s == m; });
  };
  auto elementary_mids = [&](const Interval& range, bool split_on_gaps) {
    std::set<Scalar> cuts = {range.lo, range.hi};
    auto add = [&](const Interval& v) {
      for (const auto& c : {v.lo, v.hi})
        if (range.open_contains(c)) cuts.insert(c);
    };
    for (const auto& v : V) add(v);
    if (split_on_gaps)
      for (auto g : gaps) add(combos[g].iv);
    else
      for (const auto& p : pts)
        if (range.open_contains(p.s)) cuts.insert(p.s);
    std::vector<std::pair<Scalar, Scalar>> out;  // (mid, width)
    for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it) {
      Scalar m = (*it + *std::next(it)) / 2;
      if (in_valid(m) || taken(m)) continue;
      out.push_back({m, *std::next(it) - *it});
    }
    return out;
  };

  // One cancel point per invalid pair combination, steered to also hit gap combinations.
  for (const auto& c : combos) {
    if (!c.a->pair || !c.b->pair || c.valid_pair) continue;
    auto cands = elementary_mids(c.iv, true);
    if (cands.empty())
      throw BuildError("infeasible cancel placement for " + to_string(la[c.a->slot]) + "/" +
                       to_string(lb[c.b->slot]));
    Scalar mid = (c.iv.lo + c.iv.hi) / 2;
    std::size_t best = 0;
    long best_hits = -1;
    Scalar best_dist;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      long hits = 0;
      for (std::size_t g = 0; g < gaps.size(); ++g)
        if (!gap_hit[g] && combos[gaps[g]].iv.open_contains(cands[i].first)) ++hits;
      Scalar dist = abs(cands[i].first - mid);
      if (hits > best_hits || (hits == best_hits && dist < best_dist)) {
        best = i;
        best_hits = hits;
        best_dist = dist;
      }
    }
    Scalar m = cands[best].first;
    for (std::size_t g = 0; g < gaps.size(); ++g)
      if (combos[gaps[g]].iv.open_contains(m)) gap_hit[g] = true;
    pts.push_back({m, {{}, Role::Cancel, la[c.a->slot], lb[c.b->slot]}});
  }

  // Sentinels halfway between the frame and the outermost cut ends.
  Interval fr = unit_range(O, D);
  Scalar glo = combos[0].iv.lo, ghi = combos[0].iv.hi;
  for (const auto& c : combos) {
    glo = std::min(glo, c.iv.lo);
    ghi = std::max(ghi, c.iv.hi);
  }
  pts.push_back({(fr.lo + glo) / 2, {{}, Role::Sentinel, {}, {}}});
  pts.push_back({(ghi + fr.hi) / 2, {{}, Role::Sentinel, {}, {}}});

  // Blockers for any gap combination still missed: centre of the widest free stretch.
  for (const auto& c : combos) {
    if (c.valid_pair) continue;
    bool hit = std::any_of(pts.begin(), pts.end(),
                           [&](const LinePoint& p) { return c.iv.open_contains(p.s); });
    if (hit) continue;
    auto free = elementary_mids(c.iv, false);
    if (free.empty()) throw BuildError("a gap combination cannot be blocked");
    auto widest = std::max_element(free.begin(), free.end(), [](const auto& x, const auto& y) {
      return x.second < y.second;
    });
    pts.push_back({widest->first, {{}, Role::GapBlocker, {}, {}}});
  }

  // Certification of the placement.
  for (const auto& c : combos) {
    bool open_hit = false, closed_hit = false;
    for (const auto& p : pts) {
      open_hit |= c.iv.open_contains(p.s);
      closed_hit |= c.iv.closed_contains(p.s);
    }
    if (c.valid_pair && closed_hit) throw BuildError("cancel point touches a valid choice");
    if (!c.valid_pair && !open_hit) throw BuildError("a cancelled choice remains open");
  }
  for (const auto& p : pts)
    if (!fr.open_contains(p.s)) throw BuildError("cancel point outside the frame");

  std::sort(pts.begin(), pts.end(), [](const LinePoint& x, const LinePoint& y) { return x.s < y.s; });
  for (auto& p : pts) p.cp.p = Point2{O.x + p.s * D.x, O.y + p.s * D.y};
  return pts;
}

std::vector<std::vector<Label>> sorted_choices(std::vector<std::vector<Label>> v) {
  std::sort(v.begin(), v.end());
  return v;
}

using LineCandidates = std::vector<std::pair<Point2, Point2>>;  // (origin, direction), local

Gadget two_track_gadget(GadgetKind kind, int n, const Frame& frame, TrackRef a, TrackRef b,
                        LocalSide b_side, const LineCandidates& candidates,
                        const std::function<bool(const Label&, const Label&)>& valid) {
  if (!a || !b) throw BuildError("missing track");
  Placement pl = find_placement(frame, {{a.get(), LocalSide::Left}, {b.get(), b_side}});
  auto A = local_pairs(pl, *a), B = local_pairs(pl, *b);
  // The first candidate line admitting a certified placement is used.
  std::vector<LinePoint> pts;
  Point2 O, D;
  std::string failure;
  for (const auto& [o, d] : candidates) {
    try {
      pts = place_two_track(
          A, B, a->labels, b->labels,
          [&](int i, int j) { return valid(a->labels[i], b->labels[j]); }, o, d);
      O = o;
      D = d;
      failure.clear();
      break;
    } catch (const BuildError& e) {
      failure = e.what();
    }
  }
  if (!failure.empty()) throw BuildError(failure);

  Gadget g;
  g.kind = kind;
  g.frame = frame;
  g.n = n;
  g.multiplicity = static_cast<int>(std::max(a->size(), b->size()));
  g.tracks = {a, b};
  CancelLine line;
  line.origin = pl.to_global(O);
  line.direction = pl.direction_to_global(O, D);
  for (auto& p : pts) {
    p.cp.p = pl.to_global(p.cp.p);
    line.points.push_back(p.cp);
  }
  g.lines.push_back(std::move(line));
  for (const auto& x : a->labels)
    for (const auto& y : b->labels)
      if (valid(x, y)) g.valid_choices.push_back({x, y});
  g.valid_choices = sorted_choices(std::move(g.valid_choices));
  return g;
}

void require_size(const Track& t, std::size_t m, const char* what) {
  if (t.size() != m) throw BuildError(std::string(what) + ": track has the wrong number of pairs");
}

void require_aligned(const Track& a, const Track& b) {
  for (std::size_t s = 0; s < a.size(); ++s) {
    int o = b.slot_of(a.labels[s]);
    if (o < 0) throw BuildError("tracks carry different labels");
    const auto &p = a.pairs[s], &q = b.pairs[static_cast<std::size_t>(o)];
    bool horiz = p.first.y == q.first.y && p.second.y == q.second.y;
    bool vert = p.first.x == q.first.x && p.second.x == q.second.x;
    if (!horiz && !vert) throw BuildError("pairs with equal labels are not aligned");
  }
}

/// Vertical lines x = t between two opposite tracks, nearest the first track: 2/5 first.
LineCandidates bar_lines() {
  LineCandidates out;
  for (auto [p, q] : {std::pair{2, 5}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {1, 8}, {1, 10}, {1, 2},
                      {3, 5}, {2, 3}, {3, 4}})
    out.push_back({Point2{make_scalar(p, q), Scalar(0)}, Point2{Scalar(0), Scalar(1)}});
  return out;
}

/// Lines through the corner shared by two adjacent tracks: the diagonal first.
LineCandidates corner_lines() {
  LineCandidates out;
  for (auto [p, q] : {std::pair{1, 1}, {2, 1}, {1, 2}, {3, 1}, {1, 3}, {3, 2}, {2, 3}})
    out.push_back({Point2{0, 0}, Point2{Scalar(p), Scalar(q)}});
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Builders

Gadget build_hbar(int n, const Frame& frame, TrackRef left, TrackRef right) {
  require_size(*left, static_cast<std::size_t>(n), "hbar");
  require_size(*right, static_cast<std::size_t>(n), "hbar");
  require_aligned(*left, *right);
  return two_track_gadget(GadgetKind::HBar, n, frame, left, right, LocalSide::Right, bar_lines(), std::equal_to<Label>());
}

Gadget build_vbar(int n, const Frame& frame, TrackRef bottom, TrackRef top) {
  require_size(*bottom, static_cast<std::size_t>(n), "vbar");
  require_size(*top, static_cast<std::size_t>(n), "vbar");
  require_aligned(*bottom, *top);
  return two_track_gadget(GadgetKind::VBar, n, frame, bottom, top, LocalSide::Right, bar_lines(), std::equal_to<Label>());
}

Gadget build_diag(int n, const Frame& frame, TrackRef in_track, TrackRef out_track) {
  if (in_track->size() != out_track->size()) throw BuildError("diag: track sizes differ");
  for (const auto& l : in_track->labels)
    if (out_track->slot_of(l) < 0) throw BuildError("diag: tracks carry different labels");
  return two_track_gadget(GadgetKind::Diag, n, frame, in_track, out_track, LocalSide::Bottom,
                          corner_lines(), std::equal_to<Label>());
}

Gadget build_trimux(int n, const Frame& frame, TrackRef narrow, TrackRef wide, int component,
                    bool demux) {
  require_size(*narrow, static_cast<std::size_t>(n), "trimux");
  require_size(*wide, static_cast<std::size_t>(n) * n, "trimux");
  if (component != 0 && component != 1) throw BuildError("trimux: component must be 0 or 1");
  auto g = two_track_gadget(demux ? GadgetKind::Demux : GadgetKind::Mux, n, frame, narrow, wide,
                            LocalSide::Right, bar_lines(),
                            [component](const Label& x, const Label& w) {
                              return (component == 0 ? w.first : w.second) == x.first;
                            });
  return g;
}

Gadget build_star(int n, const std::vector<std::vector<bool>>& adjacency, const Frame& frame,
                  TrackRef left, TrackRef right) {
  require_size(*left, static_cast<std::size_t>(n), "star");
  require_size(*right, static_cast<std::size_t>(n), "star");
  if (adjacency.size() != static_cast<std::size_t>(n)) throw BuildError("star: adjacency size");
  return two_track_gadget(GadgetKind::Star, n, frame, left, right, LocalSide::Right, bar_lines(), [&adjacency](const Label& x, const Label& y) {
                            return x.first != y.first &&
                                   adjacency[static_cast<std::size_t>(x.first - 1)]
                                            [static_cast<std::size_t>(y.first - 1)];
                          });
}

namespace {

/// Hull of `pts` cut by the vertical line x = x0 (points on both sides or on the line).
Interval slice_at(const Scalar& x0, const std::vector<Point2>& pts) {
  std::vector<Scalar> ys;
  for (const auto& p : pts)
    if (p.x == x0) ys.push_back(p.y);
  for (const auto& p : pts)
    for (const auto& q : pts)
      if (p.x < x0 && x0 < q.x) ys.push_back(p.y + (x0 - p.x) / (q.x - p.x) * (q.y - p.y));
  if (ys.empty()) throw BuildError("tee: hull misses an interior line");
  auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
  return {*lo, *hi};
}

}  // namespace

Gadget build_tee(int n, const Frame& frame, TrackRef a, TrackRef b, TrackRef stem) {
  const std::size_t m = a->size();
  if (b->size() != m || stem->size() != m) throw BuildError("tee: track sizes differ");
  Placement pl = find_placement(
      frame, {{a.get(), LocalSide::Left}, {b.get(), LocalSide::Right}, {stem.get(), LocalSide::Bottom}});
  auto A = local_pairs(pl, *a), B = local_pairs(pl, *b), S = local_pairs(pl, *stem);
  std::vector<std::size_t> sb(m), ss(m);
  for (std::size_t i = 0; i < m; ++i) {
    int x = b->slot_of(a->labels[i]), y = stem->slot_of(a->labels[i]);
    if (x < 0 || y < 0) throw BuildError("tee: tracks carry different labels");
    sb[i] = static_cast<std::size_t>(x);
    ss[i] = static_cast<std::size_t>(y);
  }
  const long mm = static_cast<long>(m);
  const Scalar alpha = make_scalar(1, 4 * (mm + 1) * (mm + 1));
  const Scalar xs[2] = {alpha, 1 - alpha};

  // Cut of each valid 6-gon by both lines, in label (slot-of-a) order.
  std::vector<std::array<Interval, 2>> cuts(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Point2> six = {A[i].first,      A[i].second,      B[sb[i]].first,
                               B[sb[i]].second, S[ss[i]].first, S[ss[i]].second};
    for (int w = 0; w < 2; ++w) cuts[i][w] = slice_at(xs[w], six);
  }
  std::vector<std::vector<std::size_t>> order(2);
  for (int w = 0; w < 2; ++w) {
    order[w].resize(m);
    for (std::size_t i = 0; i < m; ++i) order[w][i] = i;
    std::sort(order[w].begin(), order[w].end(),
              [&](std::size_t x, std::size_t y) { return cuts[x][w].lo < cuts[y][w].lo; });
    for (std::size_t r = 0; r + 1 < m; ++r)
      if (cuts[order[w][r]][w].hi >= cuts[order[w][r + 1]][w].lo)
        throw BuildError("tee: valid choices overlap on an interior line");
  }

  auto ca = choices(A), cb = choices(B), cs = choices(S);
  std::vector<std::vector<LinePoint>> placed(2);
  Scalar frac = make_scalar(1, 2);
  bool certified = false;
  for (int attempt = 0; attempt < 64 && !certified; ++attempt, frac /= 2) {
    for (int w = 0; w < 2; ++w) {
      placed[w].clear();
      for (std::size_t r = 0; r < m; ++r) {
        std::size_t i = order[w][r];
        Scalar below = r > 0 ? cuts[order[w][r - 1]][w].hi : Scalar(0);
        Scalar above = r + 1 < m ? cuts[order[w][r + 1]][w].lo : Scalar(1);
        const auto& c = cuts[i][w];
        Label own = a->labels[i];
        placed[w].push_back({c.lo - (c.lo - below) * frac, {{}, Role::Bracket, own, {}}});
        placed[w].push_back({c.hi + (above - c.hi) * frac, {{}, Role::Bracket, own, {}}});
      }
    }
    certified = true;
    for (const auto& x : ca) {
      for (const auto& y : cb) {
        for (const auto& z : cs) {
          bool valid = x.pair && y.pair && z.pair && sb[static_cast<std::size_t>(x.slot)] ==
                                                         static_cast<std::size_t>(y.slot) &&
                       ss[static_cast<std::size_t>(x.slot)] == static_cast<std::size_t>(z.slot);
          std::vector<Point2> six = {x.p, x.q, y.p, y.q, z.p, z.q};
          bool open_hit = false, closed_hit = false;
          for (int w = 0; w < 2; ++w) {
            Interval c = slice_at(xs[w], six);
            for (const auto& p : placed[w]) {
              open_hit |= c.open_contains(p.s);
              closed_hit |= c.closed_contains(p.s);
            }
          }
          if (valid && closed_hit) throw BuildError("tee: bracket point touches a valid choice");
          if (!valid && !open_hit) certified = false;
          if (!certified) break;
        }
        if (!certified) break;
      }
      if (!certified) break;
    }
  }
  if (!certified) throw BuildError("tee: infeasible bracket placement");

  Gadget g;
  g.kind = GadgetKind::Tee;
  g.frame = frame;
  g.n = n;
  g.multiplicity = static_cast<int>(m);
  g.tracks = {a, b, stem};
  for (int w = 0; w < 2; ++w) {
    auto& pts = placed[w];
    std::sort(pts.begin(), pts.end(),
              [](const LinePoint& x, const LinePoint& y) { return x.s < y.s; });
    CancelLine line;
    Point2 O{xs[w], 0}, D{0, 1};
    line.origin = pl.to_global(O);
    line.direction = pl.direction_to_global(O, D);
    for (auto& p : pts) {
      p.cp.p = pl.to_global(Point2{xs[w], p.s});
      line.points.push_back(p.cp);
    }
    g.lines.push_back(std::move(line));
  }
  for (const auto& l : a->labels) g.valid_choices.push_back({l, l, l});
  g.valid_choices = sorted_choices(std::move(g.valid_choices));
  return g;
}

Gadget build_cross(int n, const Frame& frame, TrackRef in_left, TrackRef in_bottom,
                   TrackRef out_right, TrackRef out_top, int first_internal_id) {
  if (frame.width != 4 || frame.height != 4) throw BuildError("cross: frame must be 4x4");
  const Scalar X = frame.x0(), Y = frame.y0();
  auto P = [&](long dx, long dy) { return Point2{X + dx, Y + dy}; };
  auto cell = [&](long dx, long dy) { return Frame{P(dx, dy), 1, 1}; };
  int id = first_internal_id;
  // Horizontal-flow wide tracks list the row component fastest; vertical-flow ones the column's.
  auto t_a = make_track(id++, P(1, 1), P(1, 2), pair_labels(n, true));   // mux A | tee T1
  auto t_b = make_track(id++, P(1, 1), P(2, 1), pair_labels(n, false));  // mux B | tee T1
  auto t_12 = make_track(id++, P(2, 1), P(2, 2), pair_labels(n, true));  // T1 | T2
  auto t_h = make_track(id++, P(3, 1), P(3, 2), pair_labels(n, true));   // T2 | demux
  auto t_up = make_track(id++, P(2, 2), P(3, 2), pair_labels(n, false)); // T2 | diag a
  auto t_d = make_track(id++, P(2, 2), P(2, 3), pair_labels(n, false));  // diag a | diag b
  auto t_v = make_track(id++, P(1, 3), P(2, 3), pair_labels(n, false));  // diag b | demux

  Gadget g;
  g.kind = GadgetKind::Cross;
  g.frame = frame;
  g.n = n;
  g.multiplicity = n * n;
  g.tracks = {in_left, in_bottom, out_right, out_top};
  g.parts.push_back(build_trimux(n, cell(0, 1), in_left, t_a, 0, false));
  g.parts.push_back(build_trimux(n, cell(1, 0), in_bottom, t_b, 1, false));
  g.parts.push_back(build_tee(n, cell(1, 1), t_a, t_12, t_b));
  g.parts.push_back(build_tee(n, cell(2, 1), t_12, t_h, t_up));
  g.parts.push_back(build_trimux(n, cell(3, 1), out_right, t_h, 0, true));
  g.parts.push_back(build_diag(n, cell(2, 2), t_up, t_d));
  g.parts.push_back(build_diag(n, cell(1, 2), t_d, t_v));
  g.parts.push_back(build_trimux(n, cell(1, 3), out_top, t_v, 1, true));
  for (std::size_t i = 0; i < g.parts.size(); ++i) g.parts[i].id = static_cast<int>(i);
  for (int h = 1; h <= n; ++h)
    for (int v = 1; v <= n; ++v) g.valid_choices.push_back({{h, 0}, {v, 0}, {h, 0}, {v, 0}});
  return g;
}

// ---------------------------------------------------------------------------
// Point sets

std::vector<const Gadget*> simple_parts(const Gadget& g) {
  std::vector<const Gadget*> out;
  if (g.parts.empty()) {
    out.push_back(&g);
  } else {
    for (const auto& p : g.parts)
      for (auto* q : simple_parts(p)) out.push_back(q);
  }
  return out;
}

LabeledPointSet collect_points(const std::vector<const Gadget*>& simple) {
  std::map<const Track*, std::vector<int>> owners;
  for (const auto* g : simple)
    for (const auto& t : g->tracks) owners[t.get()].push_back(g->id);
  LabeledPointSet ps;
  ps.dim = 2;
  std::set<const Track*> done;
  for (const auto* g : simple) {
    for (const auto& t : g->tracks) {
      if (!done.insert(t.get()).second) continue;
      for (std::size_t s = 0; s < t->size(); ++s) {
        for (int pos = 0; pos < 2; ++pos) {
          const Point2& p = pos == 0 ? t->pairs[s].first : t->pairs[s].second;
          PointLabel l;
          l.gadgets = owners[t.get()];
          l.role = Role::PairPoint;
          l.track = t->id;
          l.slot = static_cast<int>(s);
          l.pos = pos;
          l.a = t->labels[s];
          ps.coords.push_back({p.x, p.y, 0});
          ps.labels.push_back(std::move(l));
        }
      }
    }
    for (std::size_t li = 0; li < g->lines.size(); ++li) {
      for (const auto& cp : g->lines[li].points) {
        PointLabel l;
        l.gadgets = {g->id};
        l.role = cp.role;
        l.line = static_cast<int>(li);
        l.a = cp.a;
        l.b = cp.b;
        ps.coords.push_back({cp.p.x, cp.p.y, 0});
        ps.labels.push_back(std::move(l));
      }
    }
  }
  return ps;
}

std::vector<Point2> Gadget::points() const { return collect_points(simple_parts(*this)).points2(); }

LabeledPointSet Gadget::point_set() const { return collect_points(simple_parts(*this)); }

std::size_t Gadget::interior_count() const {
  std::size_t c = 0;
  for (const auto* g : simple_parts(*this))
    for (const auto& l : g->lines) c += l.points.size();
  return c;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<std::vector<std::size_t>> gadget_lines(const Gadget& g) {
  if (!g.parts.empty()) throw BuildError("gadget_lines expects a simple gadget");
  std::vector<std::vector<std::size_t>> lines;
  std::size_t at = 0;
  for (const auto& t : g.tracks) {
    std::vector<std::size_t> l;
    for (std::size_t i = 0; i < 2 * t->size(); ++i) l.push_back(at++);
    lines.push_back(std::move(l));
  }
  for (const auto& cl : g.lines) {
    std::vector<std::size_t> l;
    for (std::size_t i = 0; i < cl.points.size(); ++i) l.push_back(at++);
    lines.push_back(std::move(l));
  }
  return lines;
}

Enumeration enumerate_valid_subsets(const Gadget& g) {
  if (!g.parts.empty()) throw BuildError("enumerate_valid_subsets expects a simple gadget");
  auto pts = g.points();
  auto lines = gadget_lines(g);
  LineSearchOptions opt;
  opt.collect_all = true;
  opt.node_limit = UINT64_MAX;
  opt.floor = 2 * lines.size();  // one pair per line is the most any subset can reach
  auto res = line_search(pts, lines, opt);
  std::uint64_t nodes = res.nodes;
  if (res.maxima.empty()) {
    opt.floor = 0;
    res = line_search(pts, lines, opt);
    nodes += res.nodes;
  }

  Enumeration out;
  out.max_size = res.best;
  out.nodes = nodes;
  for (auto& idx : res.maxima) {
    LocalMaximum lm;
    lm.indices = idx;
    std::set<std::size_t> in(idx.begin(), idx.end());
    for (auto i : idx) lm.points.push_back(pts[i]);
    std::size_t base = 0;
    for (const auto& t : g.tracks) {
      int slot = -1;
      std::vector<std::size_t> used;
      for (std::size_t i = 0; i < 2 * t->size(); ++i)
        if (in.count(base + i)) used.push_back(i);
      if (used.size() == 2 && used[0] % 2 == 0 && used[1] == used[0] + 1)
        slot = static_cast<int>(used[0] / 2);
      lm.slots.push_back(slot);
      lm.labels.push_back(slot >= 0 ? t->labels[static_cast<std::size_t>(slot)] : Label{});
      base += 2 * t->size();
    }
    out.maxima.push_back(std::move(lm));
  }
  std::sort(out.maxima.begin(), out.maxima.end(), [](const LocalMaximum& x, const LocalMaximum& y) {
    return std::tie(x.labels, x.indices) < std::tie(y.labels, y.indices);
  });
  return out;
}

std::vector<std::vector<Label>> joint_choices(const Gadget& composite) {
  auto parts = simple_parts(composite);
  std::vector<Enumeration> en;
  for (const auto* p : parts) en.push_back(enumerate_valid_subsets(*p));
  std::set<std::vector<Label>> found;
  std::map<const Track*, Label> assign;
  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    if (i == parts.size()) {
      std::vector<Label> ext;
      for (const auto& t : composite.tracks) ext.push_back(assign.at(t.get()));
      found.insert(ext);
      return;
    }
    for (const auto& lm : en[i].maxima) {
      const auto& tracks = parts[i]->tracks;
      bool ok = true;
      for (std::size_t t = 0; t < tracks.size() && ok; ++t) {
        if (lm.slots[t] < 0) ok = false;
        auto it = assign.find(tracks[t].get());
        if (it != assign.end() && it->second != lm.labels[t]) ok = false;
      }
      if (!ok) continue;
      std::vector<const Track*> added;
      for (std::size_t t = 0; t < tracks.size(); ++t)
        if (assign.emplace(tracks[t].get(), lm.labels[t]).second) added.push_back(tracks[t].get());
      dfs(i + 1);
      for (auto* t : added) assign.erase(t);
    }
  };
  dfs(0);
  return {found.begin(), found.end()};
}

}  // namespace lecs

namespace lecs {

std::vector<Point2> choice_subset(const Gadget& g, const std::vector<Label>& labels) {
  if (!g.parts.empty()) throw BuildError("choice_subset expects a simple gadget");
  if (std::find(g.valid_choices.begin(), g.valid_choices.end(), labels) == g.valid_choices.end())
    throw BuildError("labels are not a valid choice of this gadget");
  std::vector<Point2> out;
  for (std::size_t t = 0; t < g.tracks.size(); ++t) {
    const auto& pr = g.tracks[t]->pairs[static_cast<std::size_t>(g.tracks[t]->slot_of(labels[t]))];
    out.push_back(pr.first);
    out.push_back(pr.second);
  }
  const std::vector<Point2> pairs = out;
  for (const auto& line : g.lines) {
    const Point2 &O = line.origin, &D = line.direction;
    auto side = [&](const Point2& p) { return sgn(cross2(D, sub2(p, O))); };
    auto param = [&](const Point2& p) -> Scalar {
      Point2 w = sub2(p, O);
      return (w.x * D.x + w.y * D.y) / (D.x * D.x + D.y * D.y);
    };
    std::vector<Scalar> s;
    for (const auto& p : pairs) {
      if (side(p) == 0) s.push_back(param(p));
      for (const auto& q : pairs)
        if (side(p) < 0 && side(q) > 0) s.push_back(line_param(O, D, p, q));
    }
    if (s.empty()) throw BuildError("choice hull misses an interior line");
    auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    std::optional<std::pair<Scalar, Point2>> below, above;
    for (const auto& cp : line.points) {
      Scalar t = param(cp.p);
      if (t < *lo && (!below || t > below->first)) below = {t, cp.p};
      if (t > *hi && (!above || t < above->first)) above = {t, cp.p};
    }
    if (!below || !above) throw BuildError("choice has no neighbouring line points");
    out.push_back(below->second);
    out.push_back(above->second);
  }
  return out;
}

}  // namespace lecs
