#include "lecs/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

#include "lecs/search.hpp"

namespace lecs {

namespace {

class Clock {
 public:
  explicit Clock(const SearchBudget& b) : budget_(b), start_(std::chrono::steady_clock::now()) {}

  /// Counts one node; false once a limit is reached.
  bool tick(SolveReport& r) {
    ++r.nodes;
    if (r.nodes > budget_.node_limit) {
      r.note = "node limit " + std::to_string(budget_.node_limit) + " reached";
      return false;
    }
    if (budget_.time_limit > 0 && (r.nodes & 1023) == 0) {
      std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
      if (dt.count() > budget_.time_limit) {
        r.note = "time limit reached";
        return false;
      }
    }
    return true;
  }

 private:
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
};

template <class P>
bool valid_subset(const std::vector<std::size_t>& cur, std::span<const P> pts) {
  std::vector<P> q;
  for (auto i : cur) q.push_back(pts[i]);
  return is_valid_solution(q, pts);
}

// Incremental test for the planar search: the hull of `cur` must keep every member as a vertex
// and every other point strictly outside.
bool valid_subset(const std::vector<std::size_t>& cur, std::span<const Point2> pts) {
  std::vector<Point2> q;
  for (auto i : cur) q.push_back(pts[i]);
  auto h = convex_hull(q);
  if (h.size() != q.size()) return false;
  std::vector<bool> in(pts.size(), false);
  for (auto i : cur) in[i] = true;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (!in[i] && classify_against_hull(pts[i], h) != Side::Outside) return false;
  return true;
}

template <class P>
SolveReport brute_force(std::span<const P> pts, const SearchBudget& budget, bool all_maxima) {
  SolveReport r;
  if (pts.size() > budget.max_points) {
    r.note = "input has " + std::to_string(pts.size()) + " points, over the brute-force budget of " +
             std::to_string(budget.max_points);
    return r;
  }
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });

  Clock clock(budget);
  bool stopped = false;
  std::vector<std::size_t> cur;
  std::vector<std::vector<std::size_t>> maxima;  // in sorted-position order
  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    for (std::size_t j = from; j < order.size() && !stopped; ++j) {
      if (!all_maxima && cur.size() + (order.size() - j) <= r.best) return;
      if (!clock.tick(r)) {
        stopped = true;
        return;
      }
      cur.push_back(order[j]);
      if (valid_subset(cur, pts)) {
        if (cur.size() > r.best) {
          r.best = cur.size();
          maxima.assign(1, cur);
        } else if (cur.size() == r.best && all_maxima) {
          maxima.push_back(cur);
        }
        extend(j + 1);
      }
      cur.pop_back();
    }
  };
  extend(0);
  r.optimal = !stopped;
  for (auto& m : maxima) std::sort(m.begin(), m.end());
  if (!maxima.empty()) r.witness = maxima.front();
  if (all_maxima) r.maxima = std::move(maxima);
  if (!r.witness.empty() && !valid_subset(r.witness, pts))
    throw std::logic_error("brute force produced an invalid witness");
  return r;
}

/// Compares two index sets by their points in lexicographic order.
bool lex_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
              std::span<const Point2> pts) {
  auto key = [&](const std::vector<std::size_t>& s) {
    std::vector<Point2> k;
    for (auto i : s) k.push_back(pts[i]);
    std::sort(k.begin(), k.end());
    return k;
  };
  auto ka = key(a), kb = key(b);
  return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(), kb.end());
}

SolveReport structured(std::span<const Point2> pts, const std::vector<std::vector<std::size_t>>& lines,
                       const SearchBudget& budget, bool all_maxima) {
  LineSearchOptions opt;
  opt.node_limit = budget.node_limit;
  opt.collect_all = true;  // the witness is the least maximum, so every maximum is needed
  auto res = line_search(pts, lines, opt);
  SolveReport r;
  r.best = res.best;
  r.nodes = res.nodes;
  r.optimal = res.complete;
  if (!res.complete) r.note = "node limit " + std::to_string(budget.node_limit) + " reached";
  std::sort(res.maxima.begin(), res.maxima.end(),
            [&](const auto& a, const auto& b) { return lex_less(a, b, pts); });
  if (!res.maxima.empty()) r.witness = res.maxima.front();
  if (all_maxima) r.maxima = std::move(res.maxima);
  if (!r.witness.empty() && !valid_subset(r.witness, pts))
    throw std::logic_error("structured search produced an invalid witness");
  return r;
}

/// Line-structured search in space: the same branching as the planar search (a consecutive pair,
/// one point, or nothing per collinear class), with every partial set checked by the full 3D
/// validity test. Meant for small lifted sets.
SolveReport structured3(std::span<const Point3> pts, std::vector<std::vector<std::size_t>> lines,
                        const SearchBudget& budget, bool all_maxima) {
  std::stable_sort(lines.begin(), lines.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  std::vector<std::size_t> cap(lines.size() + 1, 0);
  for (std::size_t i = lines.size(); i-- > 0;)
    cap[i] = cap[i + 1] + std::min<std::size_t>(2, lines[i].size());
  SolveReport r;
  Clock clock(budget);
  bool stopped = false;
  std::vector<std::size_t> cur;
  std::vector<std::vector<std::size_t>> maxima;
  auto ok = [&]() { return cur.size() <= 1 || valid_subset(cur, pts); };
  std::function<void(std::size_t)> go = [&](std::size_t li) {
    if (stopped) return;
    if (!clock.tick(r)) {
      stopped = true;
      return;
    }
    std::size_t reach = cur.size() + cap[li];
    if (!maxima.empty() && (reach < r.best || (!all_maxima && reach <= r.best))) return;
    if (li == lines.size()) {
      auto s = cur;
      std::sort(s.begin(), s.end());
      if (maxima.empty() || s.size() > r.best) {
        r.best = s.size();
        maxima.assign(1, std::move(s));
      } else if (s.size() == r.best) {
        maxima.push_back(std::move(s));
      }
      return;
    }
    const auto& line = lines[li];
    for (std::size_t j = 0; j + 1 < line.size(); ++j) {
      cur.push_back(line[j]);
      cur.push_back(line[j + 1]);
      if (ok()) go(li + 1);
      cur.resize(cur.size() - 2);
    }
    for (auto i : line) {
      cur.push_back(i);
      if (ok()) go(li + 1);
      cur.pop_back();
    }
    go(li + 1);
  };
  go(0);
  r.optimal = !stopped;
  std::sort(maxima.begin(), maxima.end(), [&](const auto& a, const auto& b) {
    std::vector<Point3> ka, kb;
    for (auto i : a) ka.push_back(pts[i]);
    for (auto i : b) kb.push_back(pts[i]);
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    return ka < kb;
  });
  if (!maxima.empty()) r.witness = maxima.front();
  if (all_maxima) r.maxima = std::move(maxima);
  if (!r.witness.empty() && !valid_subset(r.witness, pts))
    throw std::logic_error("structured search produced an invalid witness");
  return r;
}

}  // namespace

SolveReport brute_force_lecs(std::span<const Point2> pts, const SearchBudget& budget,
                             bool all_maxima) {
  return brute_force(pts, budget, all_maxima);
}

SolveReport brute_force_lecs(std::span<const Point3> pts, const SearchBudget& budget,
                             bool all_maxima) {
  return brute_force(pts, budget, all_maxima);
}

SolveReport brute_force_lecs(const LabeledPointSet& pts, const SearchBudget& budget,
                             bool all_maxima) {
  if (pts.dim == 2) {
    auto p = pts.points2();
    return brute_force_lecs(std::span<const Point2>(p), budget, all_maxima);
  }
  return brute_force_lecs(std::span<const Point3>(pts.coords), budget, all_maxima);
}

SolveReport track_aware_max(const Gadget& g, const SearchBudget& budget, bool all_maxima) {
  auto pts = g.points();
  return structured(pts, gadget_lines(g), budget, all_maxima);
}

SolveReport track_aware_max(std::span<const Point2> pts, const SearchBudget& budget,
                            bool all_maxima) {
  return structured(pts, collinear_partition(pts), budget, all_maxima);
}

SolveReport track_aware_max(const LabeledPointSet& pts, const SearchBudget& budget,
                            bool all_maxima) {
  if (pts.dim == 3) {
    auto lines = labeled_lines(pts);
    if (!lines) throw std::invalid_argument("lifted point set lacks track and line labels");
    return structured3(pts.coords, std::move(*lines), budget, all_maxima);
  }
  auto p = pts.points2();
  if (auto lines = labeled_lines(pts)) return structured(p, *lines, budget, all_maxima);
  return track_aware_max(std::span<const Point2>(p), budget, all_maxima);
}

std::optional<std::vector<std::vector<std::size_t>>> labeled_lines(const LabeledPointSet& pts) {
  if (pts.labels.size() != pts.size()) return std::nullopt;
  // (is interior line, track id or gadget id, line index)
  std::map<std::tuple<int, int, int>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& l = pts.labels[i];
    if (l.role == Role::PairPoint) {
      if (l.track < 0) return std::nullopt;
      groups[{0, l.track, 0}].push_back(i);
    } else {
      if (l.gadgets.empty() || l.line < 0) return std::nullopt;
      groups[{1, l.gadgets.front(), l.line}].push_back(i);
    }
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& [key, idx] : groups) {
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return pts.point2(a) < pts.point2(b); });
    for (std::size_t j = 2; j < idx.size(); ++j) {
      const auto &a = pts.coords[idx[0]], &b = pts.coords[idx[1]], &c = pts.coords[idx[j]];
      Scalar ux = b.x - a.x, uy = b.y - a.y, uz = b.z - a.z;
      Scalar vx = c.x - a.x, vy = c.y - a.y, vz = c.z - a.z;
      if (uy * vz != uz * vy || uz * vx != ux * vz || ux * vy != uy * vx) return std::nullopt;
    }
    out.push_back(std::move(idx));
  }
  return out;
}

std::optional<std::vector<int>> clique_oracle(const Graph& g, int k) {
  if (k < 1 || k > g.n) return std::nullopt;
  std::vector<int> cur;
  std::function<bool(int)> grow = [&](int next) {
    if (static_cast<int>(cur.size()) == k) return true;
    for (int v = next; v <= g.n; ++v) {
      bool ok = true;
      for (int u : cur) ok = ok && g.adjacent(u, v);
      if (!ok) continue;
      cur.push_back(v);
      if (grow(v + 1)) return true;
      cur.pop_back();
    }
    return false;
  };
  if (grow(1)) return cur;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Global verification

namespace {

/// Translation-normalized fingerprint of a simple gadget: its kind, its points relative to the
/// frame corner, and its track labels. Equal keys give equal enumerations.
std::string gadget_key(const Gadget& g) {
  std::string key = to_string(g.kind);
  key += '|';
  for (const auto& p : g.points()) {
    key += to_string(p.x - g.frame.x0());
    key += ',';
    key += to_string(p.y - g.frame.y0());
    key += ';';
  }
  for (const auto& t : g.tracks) {
    key += '|';
    for (const auto& l : t->labels) key += to_string(l) + ' ';
  }
  return key;
}

struct GadgetChoices {
  const Gadget* g = nullptr;
  std::vector<std::size_t> global;  // g.points() index -> instance index
  std::vector<int> track_ids;
  std::vector<const LocalMaximum*> maxima;  // full-size maxima with a pair on every track
};

}  // namespace

GlobalVerdict global_verify(const Instance& inst, const Graph& g, int k,
                            const GlobalOptions& opt) {
  if (inst.points.dim != 3) throw std::invalid_argument("global_verify needs a lifted instance");
  if (!(inst.graph == g) || inst.k != k)
    throw std::invalid_argument("instance was not generated from this graph and k");

  GlobalVerdict verdict;
  std::map<std::string, Enumeration> cache;
  std::vector<GadgetChoices> parts;
  for (const auto* s : inst.simple()) {
    GadgetChoices c;
    c.g = s;
    c.global = inst.indices_of(*s);
    for (const auto& t : s->tracks) c.track_ids.push_back(t->id);
    auto key = gadget_key(*s);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, enumerate_valid_subsets(*s)).first;
    std::size_t law = s->kind == GadgetKind::Tee ? 10 : 6;
    if (it->second.max_size == law)
      for (const auto& m : it->second.maxima)
        if (std::all_of(m.slots.begin(), m.slots.end(), [](int x) { return x >= 0; }))
          c.maxima.push_back(&m);
    // a gadget without a full local maximum rules out every target-size subset
    if (c.maxima.empty()) return verdict;
    parts.push_back(std::move(c));
  }

  const auto pts3 = inst.points.points3();
  std::map<int, int> slot_of_track;
  std::vector<bool> done(parts.size(), false);
  std::vector<const LocalMaximum*> chosen(parts.size(), nullptr);

  // next part: most tracks already fixed, then fewest maxima, then layout order
  auto pick = [&]() -> std::size_t {
    std::size_t best = parts.size();
    std::tuple<int, std::size_t> best_key{-1, 0};
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (done[i]) continue;
      int fixed = 0;
      for (int t : parts[i].track_ids) fixed += slot_of_track.count(t) > 0;
      std::tuple<int, std::size_t> key{fixed, ~parts[i].maxima.size()};
      if (best == parts.size() || key > best_key) {
        best = i;
        best_key = key;
      }
    }
    return best;
  };

  auto certify = [&]() {
    std::set<std::size_t> q;
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (auto j : chosen[i]->indices) q.insert(parts[i].global[j]);
    std::vector<std::size_t> subset(q.begin(), q.end());
    if (static_cast<long>(subset.size()) != inst.target)
      throw CertificationError("consistent assignment has " + std::to_string(subset.size()) +
                               " points, target is " + std::to_string(inst.target));
    std::vector<Point3> qp;
    for (auto i : subset) qp.push_back(pts3[i]);
    if (!is_valid_solution(qp, pts3))
      throw CertificationError("consistent assignment fails the 3D validity check");
    verdict.certificates.push_back({subset_to_clique(inst, subset), std::move(subset)});
  };

  std::function<bool(std::size_t)> join = [&](std::size_t depth) {
    if (depth == parts.size()) {
      ++verdict.candidates;
      certify();
      return !opt.all;
    }
    std::size_t i = pick();
    done[i] = true;
    const auto& part = parts[i];
    for (const auto* m : part.maxima) {
      bool ok = true;
      for (std::size_t t = 0; t < part.track_ids.size() && ok; ++t) {
        auto it = slot_of_track.find(part.track_ids[t]);
        ok = it == slot_of_track.end() || it->second == m->slots[t];
      }
      if (!ok) continue;
      std::vector<int> added;
      for (std::size_t t = 0; t < part.track_ids.size(); ++t)
        if (slot_of_track.emplace(part.track_ids[t], m->slots[t]).second)
          added.push_back(part.track_ids[t]);
      chosen[i] = m;
      bool stop = join(depth + 1);
      for (int t : added) slot_of_track.erase(t);
      if (stop) {
        done[i] = false;
        return true;
      }
    }
    done[i] = false;
    return false;
  };
  join(0);
  std::sort(verdict.certificates.begin(), verdict.certificates.end(),
            [](const Certificate& a, const Certificate& b) { return a.clique < b.clique; });
  verdict.found = !verdict.certificates.empty();
  return verdict;
}

// ---------------------------------------------------------------------------
// Planar reference

std::size_t planar_lecs_reference(std::span<const Point2> input) {
  std::vector<Point2> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i] == pts[i - 1]) throw GeometryError("planar_lecs_reference: duplicate points");
  const std::size_t n = pts.size();
  if (n <= 2) return n;

  // Closed triangle (a, b, c), counterclockwise, holds no input point besides its corners.
  auto empty_triangle = [&](std::size_t a, std::size_t b, std::size_t c) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == a || i == b || i == c) continue;
      if (orient2(pts[a], pts[b], pts[i]) >= 0 && orient2(pts[b], pts[c], pts[i]) >= 0 &&
          orient2(pts[c], pts[a], pts[i]) >= 0)
        return false;
    }
    return true;
  };

  std::size_t best = 2;  // the closest pair always spans an empty segment
  for (std::size_t p = 0; p < n; ++p) {
    // candidates above p in (x, y) order, sorted counterclockwise around p
    std::vector<std::size_t> q;
    for (std::size_t i = p + 1; i < n; ++i) q.push_back(i);
    std::stable_sort(q.begin(), q.end(), [&](std::size_t a, std::size_t b) {
      return orient2(pts[p], pts[a], pts[b]) > 0;
    });
    const std::size_t m = q.size();
    // f[j][i]: most vertices of an empty strictly convex chain p, ..., q_j, q_i closed back to p
    std::vector<std::vector<std::size_t>> f(m, std::vector<std::size_t>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < i; ++j) {
        if (orient2(pts[p], pts[q[j]], pts[q[i]]) <= 0) continue;
        if (!empty_triangle(p, q[j], q[i])) continue;
        std::size_t v = 3;
        for (std::size_t h = 0; h < j; ++h)
          if (f[h][j] && orient2(pts[q[h]], pts[q[j]], pts[q[i]]) > 0) v = std::max(v, f[h][j] + 1);
        f[j][i] = v;
        best = std::max(best, v);
      }
  }
  return best;
}

}  // namespace lecs
