#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace lecs {

/// Exact rational coordinate. GMP keeps every value canonical (reduced, positive denominator).
using Scalar = mpq_class;

Scalar make_scalar(long num, long den = 1);
std::string to_string(const Scalar& s);

struct Point2 {
  Scalar x, y;

  friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
};

struct Point3 {
  Scalar x, y, z;

  friend bool operator==(const Point3& a, const Point3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend bool operator<(const Point3& a, const Point3& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
  }
};

enum class Side { Outside, Boundary, Interior };

const char* to_string(Side s);

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int sign(const Scalar& s);

/// Sign of det(b - a, c - a).
int orient2(const Point2& a, const Point2& b, const Point2& c);
/// Sign of det(b - a, c - a, d - a).
int orient3(const Point3& a, const Point3& b, const Point3& c, const Point3& d);

// Strict convex hull in counterclockwise order: collinear boundary points and duplicates are dropped.
std::vector<Point2> convex_hull(std::span<const Point2> pts);

/// Closed-segment membership for a point already known to be collinear with a and b.
bool on_segment(const Point2& a, const Point2& b, const Point2& p);

Side classify_in_hull(const Point2& p, std::span<const Point2> hull_of);
/// Classification against a hull already produced by convex_hull().
Side classify_against_hull(const Point2& p, const std::vector<Point2>& hull);
Side classify_in_hull(const Point3& p, std::span<const Point3> hull_of);

std::vector<std::size_t> hull_vertices(std::span<const Point2> s);
std::vector<std::size_t> hull_vertices(std::span<const Point3> s);

bool is_strictly_convex_position(std::span<const Point2> q);
bool is_strictly_convex_position(std::span<const Point3> q);

/// True when no point of `ambient` other than those in `q` lies in the closed hull of `q`.
/// Throws GeometryError when some point of q is missing from the ambient set.
bool is_empty_in(std::span<const Point2> q, std::span<const Point2> ambient);
bool is_empty_in(std::span<const Point3> q, std::span<const Point3> ambient);

bool is_valid_solution(std::span<const Point2> q, std::span<const Point2> ambient);
bool is_valid_solution(std::span<const Point3> q, std::span<const Point3> ambient);

/// Precomputed 3D hull used to answer many containment queries against one set.
class Hull3 {
 public:
  explicit Hull3(std::span<const Point3> pts);

  /// Affine dimension of the input (0..3).
  int dimension() const { return dim_; }
  Side classify(const Point3& p) const;
  /// Indices (into the input) of the extreme points, ascending.
  const std::vector<std::size_t>& vertices() const { return vertices_; }
  std::size_t facet_count() const { return facets_.size(); }

 private:
  struct Facet {
    Point3 normal;  // outward
    Scalar offset;  // normal . x <= offset for all input points
  };

  std::vector<Point3> pts_;
  int dim_ = 0;
  std::vector<Facet> facets_;
  std::vector<std::size_t> vertices_;
  // Lower-dimensional support: a point and spanning directions of the affine hull.
  Point3 base_;
  Point3 normal_;  // for dim 2, the plane normal
  std::vector<Point2> flat_hull_;
  int drop_axis_ = 2;
  bool flip_ = false;

  void build_flat();
  void build_full();
  Point2 flatten(const Point3& p) const;
};

}  // namespace lecs
