#include "lecs/point_set.hpp"

#include <stdexcept>

namespace lecs {

std::string to_string(const Label& l) {
  if (l.first == 0) return "-";
  if (!l.is_pair()) return std::to_string(l.first);
  return std::to_string(l.first) + "." + std::to_string(l.second);
}

Label parse_label(const std::string& s) {
  if (s == "-") return {};
  std::size_t used = 0;
  Label l;
  l.first = std::stoi(s, &used);
  if (used < s.size()) {
    if (s[used] != '.') throw std::invalid_argument("bad label: " + s);
    std::size_t rest = 0;
    l.second = std::stoi(s.substr(used + 1), &rest);
    if (used + 1 + rest != s.size() || l.second < 1) throw std::invalid_argument("bad label: " + s);
  }
  if (l.first < 1) throw std::invalid_argument("bad label: " + s);
  return l;
}

const char* to_string(Role r) {
  switch (r) {
    case Role::PairPoint: return "pair";
    case Role::Cancel: return "cancel";
    case Role::Sentinel: return "sentinel";
    case Role::GapBlocker: return "blocker";
    case Role::Bracket: return "bracket";
  }
  return "?";
}

Role parse_role(const std::string& s) {
  for (Role r : {Role::PairPoint, Role::Cancel, Role::Sentinel, Role::GapBlocker, Role::Bracket})
    if (s == to_string(r)) return r;
  throw std::invalid_argument("bad role: " + s);
}

std::vector<Point2> LabeledPointSet::points2() const {
  std::vector<Point2> out;
  out.reserve(coords.size());
  for (const auto& p : coords) out.push_back({p.x, p.y});
  return out;
}

}  // namespace lecs
