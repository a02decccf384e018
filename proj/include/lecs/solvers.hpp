#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lecs/gadget.hpp"
#include "lecs/geometry.hpp"
#include "lecs/point_set.hpp"
#include "lecs/reduction.hpp"

namespace lecs {

struct SearchBudget {
  std::size_t max_points = 20;             // naive search refuses larger inputs
  std::uint64_t node_limit = 10'000'000;   // search nodes before giving up
  double time_limit = 0;                   // seconds; 0 means unlimited
};

struct SolveReport {
  std::size_t best = 0;                    // size of the largest valid subset found
  std::vector<std::size_t> witness;        // indices into the input, ascending
  bool optimal = false;                    // true only when the search space was exhausted
  std::uint64_t nodes = 0;
  std::vector<std::vector<std::size_t>> maxima;  // every maximum, when requested
  std::string note;                        // why the search was cut short, if it was
};

/// Exhaustive subset search in lexicographic point order. A partial subset is extended only by
/// later points and only while it stays valid: once its closed hull swallows an outside point,
/// no superset can be valid. The witness is the lexicographically least maximum (by coordinates).
/// With `all_maxima`, every maximum is listed in the same order.
SolveReport brute_force_lecs(std::span<const Point2> pts, const SearchBudget& budget = {},
                             bool all_maxima = false);
SolveReport brute_force_lecs(std::span<const Point3> pts, const SearchBudget& budget = {},
                             bool all_maxima = false);
SolveReport brute_force_lecs(const LabeledPointSet& pts, const SearchBudget& budget = {},
                             bool all_maxima = false);

/// Maximum over valid subsets that take at most one consecutive pair from each collinear class.
/// Classes come from the gadget's tracks and interior lines.
SolveReport track_aware_max(const Gadget& g, const SearchBudget& budget = {},
                            bool all_maxima = false);
/// Same for a bare planar point set; classes are recovered with collinear_partition, or from the
/// labels (tracks and interior lines) when the set carries them.
SolveReport track_aware_max(std::span<const Point2> pts, const SearchBudget& budget = {},
                            bool all_maxima = false);
SolveReport track_aware_max(const LabeledPointSet& pts, const SearchBudget& budget = {},
                            bool all_maxima = false);

/// Collinear classes recorded in the labels: one per track and one per (gadget, interior line),
/// each ordered along its line. Returns nullopt if some class is not actually collinear.
std::optional<std::vector<std::vector<std::size_t>>> labeled_lines(const LabeledPointSet& pts);

/// Exact k-clique test by enumerating k-subsets in lexicographic order; returns the first clique.
std::optional<std::vector<int>> clique_oracle(const Graph& g, int k);

struct Certificate {
  std::vector<int> clique;             // v_1..v_k read off the rows
  std::vector<std::size_t> subset;     // indices into inst.points, ascending
};

struct GlobalVerdict {
  bool found = false;
  std::vector<Certificate> certificates;  // the first one, or all of them on request
  std::uint64_t candidates = 0;           // propagation-consistent assignments examined
};

class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  bool all = false;  // keep going after the first certificate
};

/// Decides whether the lifted instance has a valid subset of size inst.target. Per-gadget maxima
/// are joined along shared tracks; each consistent assignment is certified by the full 3D
/// validity check. A consistent assignment that fails certification throws CertificationError.
GlobalVerdict global_verify(const Instance& inst, const Graph& g, int k,
                            const GlobalOptions& opt = {});

/// Size of the largest empty strictly convex subset of a planar set, by the classic dynamic
/// program over empty triangles fanned from the lowest vertex in (x, y) order. Ties in x are
/// broken by y, i.e. an infinitesimal shear. Throws GeometryError on duplicate points.
std::size_t planar_lecs_reference(std::span<const Point2> pts);

}  // namespace lecs
