#include "arns/level_set.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>

namespace arns {

namespace {

// Edge identity: (i, j, horizontal?) names the grid edge starting at node (i, j).
using EdgeKey = std::uint64_t;

EdgeKey edge_key(std::size_t i, std::size_t j, bool along_x) {
  return (static_cast<EdgeKey>(i) << 33) | (static_cast<EdgeKey>(j) << 1) | (along_x ? 1u : 0u);
}

}  // namespace

std::vector<Polyline> extract_level_set(const ScalarGrid& grid, double level) {
  std::map<EdgeKey, Point2> crossing;
  auto cross = [&](std::size_t i0, std::size_t j0, std::size_t i1, std::size_t j1) {
    const double a = grid.at(i0, j0) - level;
    const double b = grid.at(i1, j1) - level;
    const double t = a / (a - b);
    const double x = grid.x0 + grid.dx * (static_cast<double>(i0) + t * (static_cast<double>(i1) - static_cast<double>(i0)));
    const double y = grid.y0 + grid.dy * (static_cast<double>(j0) + t * (static_cast<double>(j1) - static_cast<double>(j0)));
    const EdgeKey key = edge_key(i0, j0, j0 == j1);
    crossing.emplace(key, Point2{x, y});
    return key;
  };

  std::vector<std::pair<EdgeKey, EdgeKey>> segments;
  for (std::size_t i = 0; i + 1 < grid.nx; ++i) {
    for (std::size_t j = 0; j + 1 < grid.ny; ++j) {
      const std::array<double, 4> v{grid.at(i, j), grid.at(i + 1, j), grid.at(i + 1, j + 1),
                                    grid.at(i, j + 1)};
      bool valid = true;
      for (double x : v) valid = valid && !std::isnan(x);
      if (!valid) continue;

      // Corners counter-clockwise from (i, j); bit set when above the level.
      int mask = 0;
      for (int c = 0; c < 4; ++c) {
        if (v[c] >= level) mask |= 1 << c;
      }
      if (mask == 0 || mask == 15) continue;

      // Edges: 0 bottom (c0-c1), 1 right (c1-c2), 2 top (c3-c2), 3 left (c0-c3).
      auto edge = [&](int e) {
        switch (e) {
          case 0: return cross(i, j, i + 1, j);
          case 1: return cross(i + 1, j, i + 1, j + 1);
          case 2: return cross(i, j + 1, i + 1, j + 1);
          default: return cross(i, j, i, j + 1);
        }
      };
      auto add = [&](int e0, int e1) { segments.emplace_back(edge(e0), edge(e1)); };
      const double centre = 0.25 * (v[0] + v[1] + v[2] + v[3]);
      switch (mask) {
        case 1: case 14: add(3, 0); break;
        case 2: case 13: add(0, 1); break;
        case 3: case 12: add(3, 1); break;
        case 4: case 11: add(1, 2); break;
        case 6: case 9: add(0, 2); break;
        case 7: case 8: add(3, 2); break;
        case 5:
          if (centre >= level) { add(3, 2); add(0, 1); } else { add(3, 0); add(1, 2); }
          break;
        case 10:
          if (centre >= level) { add(3, 0); add(1, 2); } else { add(3, 2); add(0, 1); }
          break;
        default: break;
      }
    }
  }

  // Chain segments through shared edge crossings.
  std::multimap<EdgeKey, std::size_t> by_end;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    by_end.emplace(segments[s].first, s);
    by_end.emplace(segments[s].second, s);
  }
  std::vector<bool> used(segments.size(), false);
  auto next_segment = [&](EdgeKey at) -> std::ptrdiff_t {
    auto [lo, hi] = by_end.equal_range(at);
    for (auto it = lo; it != hi; ++it) {
      if (!used[it->second]) return static_cast<std::ptrdiff_t>(it->second);
    }
    return -1;
  };
  auto degree = [&](EdgeKey at) { return by_end.count(at); };

  std::vector<Polyline> lines;
  auto walk = [&](std::size_t start, EdgeKey from) {
    std::vector<EdgeKey> keys{from};
    std::ptrdiff_t s = static_cast<std::ptrdiff_t>(start);
    EdgeKey at = from;
    while (s >= 0) {
      used[static_cast<std::size_t>(s)] = true;
      const auto& seg = segments[static_cast<std::size_t>(s)];
      at = seg.first == at ? seg.second : seg.first;
      keys.push_back(at);
      s = next_segment(at);
    }
    Polyline line;
    for (auto k : keys) line.push_back(crossing.at(k));
    lines.push_back(std::move(line));
  };
  // Open chains first, starting at their free ends, then closed loops.
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (used[s]) continue;
    if (degree(segments[s].first) == 1) walk(s, segments[s].first);
    else if (degree(segments[s].second) == 1) walk(s, segments[s].second);
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (!used[s]) walk(s, segments[s].first);
  }
  return lines;
}

}  // namespace arns
