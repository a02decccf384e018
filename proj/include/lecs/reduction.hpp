#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lecs/gadget.hpp"
#include "lecs/point_set.hpp"

namespace lecs {

/// Simple undirected graph on vertices 1..n.
struct Graph {
  int n = 1;
  std::set<std::pair<int, int>> edges;  // u < v

  Graph() = default;
  explicit Graph(int vertices);
  static Graph complete(int vertices);

  void add_edge(int u, int v);
  bool adjacent(int u, int v) const;
  std::vector<std::vector<bool>> adjacency() const;
  bool operator==(const Graph&) const = default;
};

/// Number of simple gadgets of each family in the construction for parameter k.
struct Census {
  long hbar = 0, vbar = 0, diag = 0, tee = 0, trimux = 0, star = 0;

  long total() const { return hbar + vbar + diag + tee + trimux + star; }
  /// Sum of the families' local maximum sizes (10 for tees, 6 otherwise).
  long local_sum() const { return 6 * (hbar + vbar + diag + trimux + star) + 10 * tee; }
  auto operator<=>(const Census&) const = default;
};

Census census(long k);
/// The nominal global size k(35k-23).
long target_size(long k);
/// The global size realized by layout(k): sum of local maxima minus one pair per shared track.
long computed_target(long k);

enum class LaneKind { Row, Column, Wide };

/// Which vertex a track carries: row i's, column j's, or the pair (row i, column j).
struct Lane {
  LaneKind kind = LaneKind::Row;
  int i = 0, j = 0;
  auto operator<=>(const Lane&) const = default;
};

struct EdgeSpec {
  Point2 start, end;  // carrier orientation (slot order)
  Lane lane;
};

struct LayoutCell {
  GadgetKind kind = GadgetKind::HBar;
  Frame frame;
  int row = 0, col = 0;  // tile this cell belongs to (0 for padding)
  std::vector<int> edges;  // indices into GridLayout::edges, in builder argument order
  int component = 0;       // trimux only
};

struct GridLayout {
  int k = 0;
  std::vector<EdgeSpec> edges;
  std::vector<LayoutCell> cells;

  /// Simple-gadget counts realized by the cells (a cross contributes its eight subgadgets).
  Census realized() const;
  /// Number of edges used by two cells (a shared track), counting the crosses' internal ones.
  long shared_edges() const;
};

class LayoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministic upper-diagonal arrangement for parameter k. Throws LayoutError when the
/// realized gadget counts do not reproduce census(k).
GridLayout layout(int k);

struct Reconciliation {
  long local_sum = 0;       // sum of local maxima over all simple gadgets
  long shared_tracks = 0;   // tracks owned by two gadgets
  long computed = 0;        // local_sum - 2 * shared_tracks
  long nominal = 0;         // target_size(k)
  bool matches() const { return computed == nominal; }
  std::string report() const;
};

class ReconciliationError : public std::runtime_error {
 public:
  ReconciliationError(const Reconciliation& r);
  Reconciliation rec;
};

struct Instance {
  int k = 0;
  Graph graph;
  GridLayout grid;
  std::vector<Gadget> gadgets;   // one per layout cell
  std::map<int, Lane> lanes;     // track id -> lane
  LabeledPointSet points;        // planar, or lifted when points.dim == 3
  long target = 0;
  Reconciliation rec;

  std::vector<const Gadget*> simple() const;
  /// Index of every point of `g` in `points`, in g.points() order.
  std::vector<std::size_t> indices_of(const Gadget& g) const;
};

struct AssembleOptions {
  /// Abort with ReconciliationError when the realized size differs from target_size(k).
  bool strict = false;
};

Instance assemble(const Graph& g, int k, const AssembleOptions& opt = {});

/// Height of the facet plane of `cell` at p: the plane through the four lifted frame corners.
Scalar facet_height(const Frame& cell, const Point2& p);

/// Lifts every gadget onto the facet plane of its frame (vertical projection). Throws
/// GeometryError if two gadgets disagree on a shared point.
Instance lift(const Instance& planar);

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Label of every track when row and column i carry clique[i-1].
Label lane_label(const Lane& lane, const std::vector<int>& clique);

/// Union of the labeled local maxima dictated by a k-clique (indices into inst.points, ascending).
std::vector<std::size_t> clique_to_subset(const Instance& inst, const std::vector<int>& clique);

/// Reads v_1..v_k back from a target-size subset; throws CertificateError if some gadget's
/// restriction is not one of its labeled maxima or lanes disagree.
std::vector<int> subset_to_clique(const Instance& inst, const std::vector<std::size_t>& q);

}  // namespace lecs
