#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace compactify {

/// Points are dense indices into the ground set of a system.
using Point = std::uint32_t;

/// A finite set of points, kept sorted and duplicate-free.
using IndexSet = std::vector<Point>;

inline IndexSet make_index_set(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

inline bool contains(const IndexSet& set, Point p) {
  return std::binary_search(set.begin(), set.end(), p);
}

inline bool is_index_set(const std::vector<Point>& points) {
  return std::adjacent_find(points.begin(), points.end(),
                            [](Point a, Point b) { return a >= b; }) == points.end();
}

}  // namespace compactify
