#include "lecs/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lecs {

Scalar make_scalar(long num, long den) {
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

std::string to_string(const Scalar& s) {
  if (s.get_den() == 1) return s.get_num().get_str() + "/1";
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

const char* to_string(Side s) {
  switch (s) {
    case Side::Outside: return "OUTSIDE";
    case Side::Boundary: return "BOUNDARY";
    case Side::Interior: return "INTERIOR";
  }
  return "?";
}

int sign(const Scalar& s) { return sgn(s); }

int orient2(const Point2& a, const Point2& b, const Point2& c) {
  Scalar det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return sgn(det);
}

namespace {

Point3 sub(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

Point3 cross(const Point3& a, const Point3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

Scalar dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

bool is_zero(const Point3& v) { return sgn(v.x) == 0 && sgn(v.y) == 0 && sgn(v.z) == 0; }

}  // namespace

int orient3(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  return sgn(dot(cross(sub(b, a), sub(c, a)), sub(d, a)));
}

std::vector<Point2> convex_hull(std::span<const Point2> pts) {
  std::vector<Point2> p(pts.begin(), pts.end());
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() <= 2) return p;
  std::vector<Point2> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && orient2(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient2(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return h;
}

bool on_segment(const Point2& a, const Point2& b, const Point2& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

Side classify_against_hull(const Point2& p, const std::vector<Point2>& h) {
  if (h.empty()) return Side::Outside;
  if (h.size() == 1) return p == h[0] ? Side::Boundary : Side::Outside;
  if (h.size() == 2) {
    return orient2(h[0], h[1], p) == 0 && on_segment(h[0], h[1], p) ? Side::Boundary
                                                                     : Side::Outside;
  }
  bool boundary = false;
  for (std::size_t i = 0; i < h.size(); ++i) {
    int o = orient2(h[i], h[(i + 1) % h.size()], p);
    if (o < 0) return Side::Outside;
    if (o == 0) boundary = true;
  }
  return boundary ? Side::Boundary : Side::Interior;
}

namespace {

template <class P>
std::vector<std::size_t> extreme_indices(std::span<const P> s, const std::vector<P>& extreme) {
  std::map<P, int> mult;
  for (const auto& p : s) ++mult[p];
  std::set<P> ext(extreme.begin(), extreme.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (mult[s[i]] == 1 && ext.count(s[i])) out.push_back(i);
  }
  return out;
}

template <class P>
bool all_distinct(std::span<const P> q) {
  std::vector<P> v(q.begin(), q.end());
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

template <class P>
std::set<P> require_subset(std::span<const P> q, std::span<const P> ambient) {
  std::set<P> amb(ambient.begin(), ambient.end());
  std::set<P> qs;
  for (const auto& p : q) {
    if (!amb.count(p)) throw GeometryError("subset point is not a member of the ambient set");
    qs.insert(p);
  }
  return qs;
}

}  // namespace

Side classify_in_hull(const Point2& p, std::span<const Point2> s) {
  if (s.empty()) throw GeometryError("classify_in_hull: empty point list");
  return classify_against_hull(p, convex_hull(s));
}

std::vector<std::size_t> hull_vertices(std::span<const Point2> s) {
  return extreme_indices<Point2>(s, convex_hull(s));
}

bool is_strictly_convex_position(std::span<const Point2> q) {
  if (!all_distinct<Point2>(q)) return false;
  return convex_hull(q).size() == q.size();
}

bool is_empty_in(std::span<const Point2> q, std::span<const Point2> ambient) {
  auto qs = require_subset<Point2>(q, ambient);
  auto h = convex_hull(q);
  for (const auto& p : ambient) {
    if (qs.count(p)) continue;
    if (classify_against_hull(p, h) != Side::Outside) return false;
  }
  return true;
}

bool is_valid_solution(std::span<const Point2> q, std::span<const Point2> ambient) {
  return is_strictly_convex_position(q) && is_empty_in(q, ambient);
}

// ---------------------------------------------------------------------------
// 3D

Hull3::Hull3(std::span<const Point3> pts) : pts_(pts.begin(), pts.end()) {
  if (pts_.empty()) throw GeometryError("Hull3: empty point list");
  base_ = pts_[0];
  std::size_t i1 = pts_.size(), i2 = pts_.size(), i3 = pts_.size();
  for (std::size_t i = 1; i < pts_.size() && i1 == pts_.size(); ++i)
    if (!(pts_[i] == base_)) i1 = i;
  if (i1 == pts_.size()) {
    dim_ = 0;
  } else {
    Point3 u = sub(pts_[i1], base_);
    for (std::size_t i = 1; i < pts_.size() && i2 == pts_.size(); ++i)
      if (!is_zero(cross(u, sub(pts_[i], base_)))) i2 = i;
    if (i2 == pts_.size()) {
      dim_ = 1;
    } else {
      normal_ = cross(u, sub(pts_[i2], base_));
      for (std::size_t i = 1; i < pts_.size() && i3 == pts_.size(); ++i)
        if (sgn(dot(normal_, sub(pts_[i], base_))) != 0) i3 = i;
      dim_ = i3 == pts_.size() ? 2 : 3;
    }
  }
  if (dim_ == 3) {
    build_full();
  } else {
    build_flat();
  }
}

Point2 Hull3::flatten(const Point3& p) const {
  switch (drop_axis_) {
    case 0: return {p.y, p.z};
    case 1: return {p.x, p.z};
    default: return {p.x, p.y};
  }
}

void Hull3::build_flat() {
  // Affine hull of dimension <= 2: project onto a coordinate plane that is injective on it.
  if (dim_ == 2) {
    drop_axis_ = sgn(normal_.z) != 0 ? 2 : (sgn(normal_.y) != 0 ? 1 : 0);
  } else if (dim_ == 1) {
    Point3 u;
    for (const auto& p : pts_)
      if (!(p == base_)) {
        u = sub(p, base_);
        break;
      }
    // keep two coordinates in which the direction is not degenerate
    drop_axis_ = sgn(u.x) != 0 || sgn(u.y) != 0 ? 2 : 0;
  }
  std::vector<Point2> flat;
  flat.reserve(pts_.size());
  for (const auto& p : pts_) flat.push_back(flatten(p));
  flat_hull_ = convex_hull(flat);
  vertices_ = extreme_indices<Point2>(std::span<const Point2>(flat), flat_hull_);
}

namespace {

struct Plane {
  Point3 n;
  Scalar d;
};

// Outward-oriented plane through a, b, c supporting the whole set (caller guarantees support).
Plane supporting_plane(const Point3& a, const Point3& b, const Point3& c,
                       const std::vector<Point3>& pts) {
  Plane pl{cross(sub(b, a), sub(c, a)), 0};
  pl.d = dot(pl.n, a);
  for (const auto& p : pts) {
    int s = sgn(dot(pl.n, p) - pl.d);
    if (s > 0) {
      pl.n = {-pl.n.x, -pl.n.y, -pl.n.z};
      pl.d = -pl.d;
      break;
    }
    if (s < 0) break;
  }
  return pl;
}

// Rotates a supporting plane around the line e0-e1, away from the reference point `behind`,
// and returns the index of the first point it meets.
std::size_t pivot(const Point3& e0, const Point3& e1, const Point3& behind,
                  const std::vector<Point3>& pts) {
  Point3 u = sub(e1, e0);
  Point3 back = cross(u, sub(behind, e0));
  std::size_t best = pts.size();
  int outer = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Point3 w = cross(u, sub(pts[i], e0));
    if (is_zero(w)) continue;  // on the hinge line
    if (orient3(e0, e1, behind, pts[i]) == 0) {
      // already on the old plane: behind the hinge it never wins, beyond it nothing beats it
      if (sgn(dot(w, back)) > 0) continue;
      return i;
    }
    if (best == pts.size() || orient3(e0, e1, pts[best], pts[i]) == outer) {
      best = i;
      outer = -orient3(e0, e1, pts[best], behind);
    }
  }
  if (best == pts.size()) throw GeometryError("Hull3: pivot found no point");
  return best;
}

}  // namespace

void Hull3::build_full() {
  const auto& P = pts_;
  auto members_of = [&](const Plane& pl) {
    std::vector<std::size_t> m;
    for (std::size_t i = 0; i < P.size(); ++i)
      if (dot(pl.n, P[i]) == pl.d) m.push_back(i);
    return m;
  };

  // Initial facet: start from the plane z = min z and rotate it until it carries a facet.
  std::size_t lo = 0;
  for (std::size_t i = 1; i < P.size(); ++i)
    if (P[i].z < P[lo].z || (P[i].z == P[lo].z && P[i] < P[lo])) lo = i;
  Point3 a = P[lo];
  Point3 e1 = {a.x + 1, a.y, a.z};
  Point3 behind = {a.x, a.y - 1, a.z};
  // Two pivots are always enough to reach three non-collinear members.
  Plane start;
  {
    std::size_t c = pivot(a, e1, behind, P);
    Plane pl = supporting_plane(a, e1, P[c], P);
    auto m = members_of(pl);
    bool flat = true;
    for (auto i : m)
      if (!is_zero(cross(sub(P[c], a), sub(P[i], a)))) flat = false;
    if (flat) {
      // plane holds only the edge a-c; rotate about it
      Point3 inplane = cross(pl.n, sub(P[c], a));
      Point3 ref = {a.x + inplane.x, a.y + inplane.y, a.z + inplane.z};
      std::size_t c2 = pivot(a, P[c], ref, P);
      pl = supporting_plane(a, P[c], P[c2], P);
    }
    start = pl;
  }

  std::map<std::vector<std::size_t>, std::size_t> seen;
  std::vector<std::pair<Plane, std::vector<std::size_t>>> queue;
  auto push = [&](const Plane& pl) {
    auto m = members_of(pl);
    if (seen.count(m)) return;
    seen.emplace(m, queue.size());
    queue.emplace_back(pl, std::move(m));
  };
  push(start);
  std::set<std::size_t> verts;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Plane pl = queue[qi].first;
    std::vector<std::size_t> m = queue[qi].second;
    facets_.push_back({pl.n, pl.d});
    int axis = sgn(pl.n.z) != 0 ? 2 : (sgn(pl.n.y) != 0 ? 1 : 0);
    auto fl = [&](const Point3& p) -> Point2 {
      if (axis == 0) return {p.y, p.z};
      if (axis == 1) return {p.x, p.z};
      return {p.x, p.y};
    };
    std::vector<Point2> flat;
    for (auto i : m) flat.push_back(fl(P[i]));
    auto h = convex_hull(flat);
    // map hull vertices back to member indices (first occurrence)
    std::vector<std::size_t> hv;
    for (const auto& v : h) {
      for (std::size_t j = 0; j < m.size(); ++j)
        if (flat[j] == v) {
          hv.push_back(m[j]);
          break;
        }
    }
    for (auto i : hv) verts.insert(i);
    for (std::size_t j = 0; j < hv.size(); ++j) {
      const Point3& p0 = P[hv[j]];
      const Point3& p1 = P[hv[(j + 1) % hv.size()]];
      const Point3& ref = P[hv[(j + 2) % hv.size()]];
      std::size_t c = pivot(p0, p1, ref, P);
      push(supporting_plane(p0, p1, P[c], P));
    }
  }
  std::vector<Point3> ext;
  for (auto i : verts) ext.push_back(P[i]);
  vertices_ = extreme_indices<Point3>(std::span<const Point3>(P), ext);
}

Side Hull3::classify(const Point3& p) const {
  if (dim_ < 3) {
    if (dim_ == 2 && sgn(dot(normal_, sub(p, base_))) != 0) return Side::Outside;
    if (dim_ == 1) {
      Point3 u;
      for (const auto& q : pts_)
        if (!(q == base_)) {
          u = sub(q, base_);
          break;
        }
      if (!is_zero(cross(u, sub(p, base_)))) return Side::Outside;
    }
    if (dim_ == 0) return p == base_ ? Side::Boundary : Side::Outside;
    return classify_against_hull(flatten(p), flat_hull_) == Side::Outside ? Side::Outside
                                                                      : Side::Boundary;
  }
  bool boundary = false;
  for (const auto& f : facets_) {
    int s = sgn(dot(f.normal, p) - f.offset);
    if (s > 0) return Side::Outside;
    if (s == 0) boundary = true;
  }
  return boundary ? Side::Boundary : Side::Interior;
}

Side classify_in_hull(const Point3& p, std::span<const Point3> s) {
  if (s.empty()) throw GeometryError("classify_in_hull: empty point list");
  return Hull3(s).classify(p);
}

std::vector<std::size_t> hull_vertices(std::span<const Point3> s) {
  if (s.empty()) return {};
  return Hull3(s).vertices();
}

bool is_strictly_convex_position(std::span<const Point3> q) {
  if (q.empty()) return true;
  if (!all_distinct<Point3>(q)) return false;
  return Hull3(q).vertices().size() == q.size();
}

bool is_empty_in(std::span<const Point3> q, std::span<const Point3> ambient) {
  auto qs = require_subset<Point3>(q, ambient);
  if (q.empty()) return true;
  Hull3 h(q);
  for (const auto& p : ambient) {
    if (qs.count(p)) continue;
    if (h.classify(p) != Side::Outside) return false;
  }
  return true;
}

bool is_valid_solution(std::span<const Point3> q, std::span<const Point3> ambient) {
  return is_strictly_convex_position(q) && is_empty_in(q, ambient);
}

}  // namespace lecs
