#include "lecs/search.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace lecs {

namespace {

// The search runs on integer coordinates: every point is scaled by the lcm of all denominators,
// which preserves orientation signs and keeps each determinant a pair of integer products.
struct IPoint {
  mpz_class x, y;
  friend bool operator<(const IPoint& a, const IPoint& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
  friend bool operator==(const IPoint& a, const IPoint& b) { return a.x == b.x && a.y == b.y; }
};

int orient(const IPoint& a, const IPoint& b, const IPoint& c) {
  mpz_class l = (b.x - a.x) * (c.y - a.y);
  mpz_class r = (b.y - a.y) * (c.x - a.x);
  return cmp(l, r) > 0 ? 1 : cmp(l, r) < 0 ? -1 : 0;
}

/// Counter-clockwise hull without collinear vertices (monotone chain).
std::vector<IPoint> hull_of(std::vector<IPoint> p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() <= 2) return p;
  std::vector<IPoint> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && orient(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return h;
}

bool outside(const IPoint& p, const std::vector<IPoint>& h) {
  if (h.empty()) return true;
  if (h.size() == 1) return !(p == h[0]);
  if (h.size() == 2) {
    if (orient(h[0], h[1], p) != 0) return true;
    return std::min(h[0].x, h[1].x) > p.x || p.x > std::max(h[0].x, h[1].x) ||
           std::min(h[0].y, h[1].y) > p.y || p.y > std::max(h[0].y, h[1].y);
  }
  for (std::size_t i = 0; i < h.size(); ++i)
    if (orient(h[i], h[(i + 1) % h.size()], p) < 0) return true;
  return false;
}

class LineSearch {
 public:
  LineSearch(std::span<const Point2> pts, const std::vector<std::vector<std::size_t>>& lines,
             const LineSearchOptions& opt)
      : opt_(opt), in_(pts.size(), false) {
    mpz_class scale = 1;
    for (const auto& p : pts) {
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), p.x.get_den_mpz_t());
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), p.y.get_den_mpz_t());
    }
    for (const auto& p : pts) {
      Scalar x = p.x * scale, y = p.y * scale;
      pts_.push_back({x.get_num(), y.get_num()});
    }
    std::vector<std::size_t> order(lines.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return lines[a].size() > lines[b].size(); });
    for (auto i : order) lines_.push_back(lines[i]);
    for (const auto& l : lines_)
      if (l.size() < 2) loose_.insert(loose_.end(), l.begin(), l.end());
    cap_.assign(lines_.size() + 1, 0);
    for (std::size_t i = lines_.size(); i-- > 0;)
      cap_[i] = cap_[i + 1] + std::min<std::size_t>(2, lines_[i].size());
  }

  LineSearchResult run() {
    recurse(0);
    return std::move(res_);
  }

 private:
  std::vector<IPoint> pts_;
  LineSearchOptions opt_;
  std::vector<std::vector<std::size_t>> lines_;  // collinear classes, ordered along their line
  std::vector<std::size_t> loose_;                // points of singleton classes
  std::vector<std::size_t> cap_;
  std::vector<bool> in_;
  std::vector<std::size_t> cur_;
  LineSearchResult res_;
  bool found_ = false;

  std::vector<IPoint> current_hull() const {
    std::vector<IPoint> q;
    q.reserve(cur_.size());
    for (auto i : cur_) q.push_back(pts_[i]);
    return hull_of(std::move(q));
  }

  /// Half-open index range of the points of `line` inside the closed hull `h` (at least three
  /// vertices), or nullopt if the line misses it. Membership is an intersection of half-planes,
  /// each monotone along the line, so both ends are found by binary search.
  std::optional<std::pair<std::size_t, std::size_t>> clip(const std::vector<std::size_t>& line,
                                                          const std::vector<IPoint>& h) const {
    const IPoint& o = pts_[line.front()];
    const IPoint& e = pts_[line.back()];
    std::vector<std::size_t> rising, falling;  // edges satisfied beyond / before a threshold
    for (std::size_t k = 0; k < h.size(); ++k) {
      const IPoint& a = h[k];
      const IPoint& b = h[(k + 1) % h.size()];
      int so = orient(a, b, o), se = orient(a, b, e);
      if (so == se || so == 0 || se == 0) {
        if (so < 0 && se < 0) return std::nullopt;  // the whole line segment is outside this edge
        if (so == se) continue;
      }
      (se > so ? rising : falling).push_back(k);
    }
    auto holds = [&](std::size_t j, const std::vector<std::size_t>& edges) {
      for (auto k : edges)
        if (orient(h[k], h[(k + 1) % h.size()], pts_[line[j]]) < 0) return false;
      return true;
    };
    std::size_t lo = 0, hi = line.size();  // first index meeting every rising edge
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (holds(mid, rising)) hi = mid;
      else lo = mid + 1;
    }
    std::size_t first = lo;
    hi = line.size();  // first index from `first` on that breaks a falling edge
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (!holds(mid, falling)) hi = mid;
      else lo = mid + 1;
    }
    return std::pair{first, std::max(first, lo)};
  }

  bool valid_now() const {
    auto h = current_hull();
    if (h.size() != cur_.size()) return false;
    if (h.size() < 3) {
      for (std::size_t i = 0; i < pts_.size(); ++i)
        if (!in_[i] && !outside(pts_[i], h)) return false;
      return true;
    }
    for (auto i : loose_)
      if (!in_[i] && !outside(pts_[i], h)) return false;
    for (const auto& l : lines_) {
      if (l.size() < 2) continue;
      auto r = clip(l, h);
      if (!r) continue;
      for (std::size_t i = r->first; i < r->second; ++i)
        if (!in_[l[i]]) return false;
    }
    return true;
  }

  void record() {
    std::size_t s = cur_.size();
    if (s < opt_.floor) return;
    auto sorted = cur_;
    std::sort(sorted.begin(), sorted.end());
    if (!found_ || s > res_.best) {
      found_ = true;
      res_.best = s;
      res_.maxima.assign(1, std::move(sorted));
    } else if (s == res_.best && opt_.collect_all) {
      res_.maxima.push_back(std::move(sorted));
    }
  }

  void push(std::size_t i) {
    cur_.push_back(i);
    in_[i] = true;
  }
  void pop() {
    in_[cur_.back()] = false;
    cur_.pop_back();
  }

  void recurse(std::size_t li) {
    if (!res_.complete) return;
    if (++res_.nodes > opt_.node_limit) {
      res_.complete = false;
      return;
    }
    std::size_t reach = cur_.size() + cap_[li];
    if (reach < opt_.floor) return;
    if (found_ && (reach < res_.best || (!opt_.collect_all && reach <= res_.best))) return;
    if (li == lines_.size()) {
      record();
      return;
    }
    const auto& line = lines_[li];
    // Candidate window: when the partial hull meets this line, any new point must sit next to
    // the clipped interval, since the extended hull meets the line in the span of the interval
    // and the new points.
    std::size_t from = 0, to = line.size();
    if (cur_.size() >= 3 && line.size() >= 2) {
      auto h = current_hull();
      if (h.size() >= 3) {
        if (auto r = clip(line, h)) {
          from = r->first >= 2 ? r->first - 2 : 0;
          to = std::min(line.size(), r->second + 2);
        }
      }
    }
    auto viable = [&](std::size_t add) {
      std::size_t reach = cur_.size() + add + cap_[li + 1];
      if (reach < opt_.floor) return false;
      return !found_ || reach > res_.best || (opt_.collect_all && reach == res_.best);
    };
    if (viable(2))
      for (std::size_t j = from; j + 1 < to; ++j) {
        push(line[j]);
        push(line[j + 1]);
        if (valid_now()) recurse(li + 1);
        pop();
        pop();
      }
    if (viable(1))
      for (std::size_t j = from; j < to; ++j) {
        push(line[j]);
        if (valid_now()) recurse(li + 1);
        pop();
      }
    if (viable(0)) recurse(li + 1);
  }
};

}  // namespace

LineSearchResult line_search(std::span<const Point2> pts,
                             const std::vector<std::vector<std::size_t>>& lines,
                             const LineSearchOptions& opt) {
  std::vector<int> seen(pts.size(), 0);
  for (const auto& l : lines)
    for (auto i : l) {
      if (i >= pts.size()) throw GeometryError("line_search: index out of range");
      ++seen[i];
    }
  for (int c : seen)
    if (c != 1) throw GeometryError("line_search: lines must partition the point indices");
  return LineSearch(pts, lines, opt).run();
}

std::vector<std::vector<std::size_t>> collinear_partition(std::span<const Point2> pts) {
  std::vector<std::size_t> rest(pts.size());
  std::iota(rest.begin(), rest.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  while (!rest.empty()) {
    std::vector<std::size_t> best = {rest[0]};
    for (std::size_t a = 0; a < rest.size(); ++a)
      for (std::size_t b = a + 1; b < rest.size(); ++b) {
        std::vector<std::size_t> run;
        for (auto c : rest)
          if (orient2(pts[rest[a]], pts[rest[b]], pts[c]) == 0) run.push_back(c);
        if (run.size() > best.size()) best = std::move(run);
      }
    std::sort(best.begin(), best.end(),
              [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
    std::vector<std::size_t> keep;
    for (auto c : rest)
      if (std::find(best.begin(), best.end(), c) == best.end()) keep.push_back(c);
    rest = std::move(keep);
    out.push_back(std::move(best));
  }
  return out;
}

}  // namespace lecs
