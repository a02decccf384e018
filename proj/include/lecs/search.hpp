#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lecs/geometry.hpp"

namespace lecs {

struct LineSearchOptions {
  std::uint64_t node_limit = 10'000'000;
  bool collect_all = false;  // keep every maximum, not just the first
  std::size_t floor = 0;     // only subsets of at least this size are of interest
};

struct LineSearchResult {
  std::size_t best = 0;
  std::vector<std::vector<std::size_t>> maxima;  // ascending index lists, in discovery order
  std::uint64_t nodes = 0;
  bool complete = true;
};

/// Exact maximum valid (strictly convex, empty) subsets of `pts`, given a partition of the
/// indices into collinear classes, each listed in order along its line. A valid subset takes at
/// most two points from a class, and two only when consecutive there; the search branches on
/// exactly those options and prunes partial sets that are not strictly convex or whose closed hull
/// already swallows another point.
LineSearchResult line_search(std::span<const Point2> pts,
                             const std::vector<std::vector<std::size_t>>& lines,
                             const LineSearchOptions& opt);

/// Partition into collinear classes: greedily takes the longest remaining collinear run.
std::vector<std::vector<std::size_t>> collinear_partition(std::span<const Point2> pts);

}  // namespace lecs
