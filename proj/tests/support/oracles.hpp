#pragma once

// Brute-force oracles and instance generators for tests. Nothing here calls
// the library's algorithms; only its value types are used.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "compactify/chain.hpp"
#include "compactify/order.hpp"
#include "compactify/partition.hpp"
#include "compactify/system_model.hpp"

namespace oracle {

using compactify::IndexSet;
using compactify::Point;

/// Calls f(map) for every function [0,domain) -> [0,codomain).
inline void for_each_map(std::size_t domain, std::size_t codomain,
                         const std::function<void(const std::vector<Point>&)>& f) {
  std::vector<Point> m(domain, 0);
  for (;;) {
    f(m);
    std::size_t i = 0;
    while (i < domain && ++m[i] == codomain) m[i++] = 0;
    if (i == domain) return;
  }
}

/// All set partitions of `ground` via restricted growth strings, as block lists.
inline std::vector<std::vector<IndexSet>> all_set_partitions(const IndexSet& ground) {
  std::vector<std::vector<IndexSet>> out;
  const std::size_t n = ground.size();
  if (n == 0) return {{}};
  std::vector<std::size_t> rgs(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t max_label) {
    if (i == n) {
      std::vector<IndexSet> blocks(max_label + 1);
      for (std::size_t k = 0; k < n; ++k) blocks[rgs[k]].push_back(ground[k]);
      out.push_back(blocks);
      return;
    }
    for (std::size_t l = 0; l <= max_label + 1; ++l) {
      rgs[i] = l;
      rec(i + 1, std::max(max_label, l));
    }
  };
  rgs[0] = 0;
  rec(1, 0);
  return out;
}

/// Blocks as a set of sets, for order-insensitive comparison.
inline std::set<std::set<Point>> as_set_of_sets(const std::vector<IndexSet>& blocks) {
  std::set<std::set<Point>> out;
  for (const auto& b : blocks) out.emplace(b.begin(), b.end());
  return out;
}

/// Cycle criterion: exactly one cycle, and it is a self-loop.
inline bool unique_self_loop(const std::vector<Point>& map) {
  const std::size_t n = map.size();
  std::set<std::set<Point>> cycles;
  for (Point x = 0; x < n; ++x) {
    Point y = x;
    for (std::size_t i = 0; i < n; ++i) y = map[y];  // y is now on a cycle
    std::set<Point> cycle;
    Point z = y;
    do {
      cycle.insert(z);
      z = map[z];
    } while (z != y);
    cycles.insert(cycle);
  }
  return cycles.size() == 1 && cycles.begin()->size() == 1;
}

/// Points lying on cycles.
inline IndexSet cycle_points(const std::vector<Point>& map) {
  IndexSet out;
  for (Point x = 0; x < map.size(); ++x) {
    Point y = map[x];
    for (std::size_t i = 0; i < map.size() && y != x; ++i) y = map[y];
    if (y == x) out.push_back(x);
  }
  return out;
}

/// Pushforward by direct hit-set tabulation over (domain, codomain, images, pi blocks).
inline std::set<std::set<Point>> hit_set_partition(const IndexSet& domain, const IndexSet& codomain,
                                                   const std::vector<Point>& images,
                                                   const std::vector<IndexSet>& pi_blocks) {
  std::map<std::set<std::size_t>, std::set<Point>> groups;
  for (Point y : codomain) {
    std::set<std::size_t> hits;
    for (std::size_t i = 0; i < pi_blocks.size(); ++i) {
      for (Point x : pi_blocks[i]) {
        const std::size_t at = std::lower_bound(domain.begin(), domain.end(), x) - domain.begin();
        if (images[at] == y) hits.insert(i);
      }
    }
    groups[hits].insert(y);
  }
  std::set<std::set<Point>> out;
  for (auto& [h, ys] : groups) out.insert(ys);
  return out;
}

/// Every block of `upper` maps onto exactly one block of `lower`.
inline bool maps_blocks_onto_blocks(const IndexSet& domain, const std::vector<Point>& images,
                                    const std::vector<IndexSet>& upper, const std::vector<IndexSet>& lower) {
  for (const IndexSet& block : upper) {
    std::set<Point> img;
    for (Point x : block) img.insert(images[std::lower_bound(domain.begin(), domain.end(), x) - domain.begin()]);
    bool onto = false;
    for (const IndexSet& target : lower) onto = onto || img == std::set<Point>(target.begin(), target.end());
    if (!onto) return false;
  }
  return true;
}

/// Every block of `fine` lies inside one block of `coarse`.
inline bool refines_blocks(const std::vector<IndexSet>& fine, const std::vector<IndexSet>& coarse) {
  for (const IndexSet& f : fine) {
    bool inside = false;
    for (const IndexSet& c : coarse) inside = inside || std::includes(c.begin(), c.end(), f.begin(), f.end());
    if (!inside) return false;
  }
  return true;
}

/// x ~ y iff T^n x = T^m y != star for some n, m <= size.
inline std::set<std::set<Point>> brute_force_classes(const std::vector<Point>& map, Point star) {
  const std::size_t n = map.size();
  std::vector<std::vector<Point>> iterates(n);
  for (Point x = 0; x < n; ++x) {
    Point y = x;
    for (std::size_t k = 0; k <= n; ++k) {
      iterates[x].push_back(y);
      y = map[y];
    }
  }
  std::set<std::set<Point>> classes;
  for (Point x = 0; x < n; ++x) {
    if (x == star) continue;
    std::set<Point> cls;
    for (Point y = 0; y < n; ++y) {
      if (y == star) continue;
      bool related = false;
      for (Point a : iterates[x]) {
        for (Point b : iterates[y]) related = related || (a == b && a != star);
      }
      if (related) cls.insert(y);
    }
    classes.insert(cls);
  }
  return classes;
}

/// A random chain: N levels of random sizes with random total maps, points
/// numbered consecutively from `base`.
inline compactify::Chain random_chain(std::mt19937_64& rng, std::size_t max_levels, std::size_t max_level_size,
                                      Point base = 0) {
  const std::size_t n = 1 + rng() % max_levels;
  std::vector<IndexSet> levels;
  Point next = base;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t size = 1 + rng() % max_level_size;
    IndexSet level;
    for (std::size_t i = 0; i < size; ++i) level.push_back(next++);
    levels.push_back(level);
  }
  std::vector<compactify::MapBetween> maps;
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<Point> images;
    // Bias towards a few targets so fibers are nontrivial.
    const std::size_t spread = 1 + rng() % levels[k - 1].size();
    for (std::size_t i = 0; i < levels[k].size(); ++i) images.push_back(levels[k - 1][rng() % spread]);
    maps.emplace_back(levels[k], levels[k - 1], images);
  }
  return compactify::Chain(levels, maps);
}

/// Finite truncation of a ray presentation at ray index `last` (>= prefix):
/// points x*, b_0..b_last, then the branch nodes; b_last maps to x*.
/// Returns the map and, for checking, the index of each b_n.
struct Truncation {
  std::vector<Point> map;
  std::vector<Point> ray;
  std::map<std::string, Point> node;
};

inline Truncation truncate_ray(const compactify::RayPresentation& ray, std::size_t last) {
  Truncation t;
  t.map.push_back(0);
  for (std::size_t n = 0; n <= last; ++n) {
    t.ray.push_back(static_cast<Point>(t.map.size()));
    t.map.push_back(0);
  }
  for (std::size_t n = 0; n < last; ++n) t.map[t.ray[n]] = t.ray[n + 1];
  for (const auto& b : ray.branches) {
    for (const auto& name : b.nodes) {
      t.node[name] = static_cast<Point>(t.map.size());
      t.map.push_back(0);
    }
  }
  for (const auto& b : ray.branches) {
    for (std::size_t i = 0; i < b.nodes.size(); ++i) {
      const auto& p = b.parent[i];
      Point target = 0;
      if (p.kind == compactify::RayNodeRef::Kind::Ray) target = t.ray[p.index];
      if (p.kind == compactify::RayNodeRef::Kind::Node) target = t.node[ray.branches[p.branch].nodes[p.index]];
      t.map[t.node[b.nodes[i]]] = target;
    }
  }
  return t;
}

/// B_n^k straight from the formula {x : T^k x = b_n and T^{k-1} x not on the ray},
/// evaluated on a truncation (b_0 is the seed a, so O(a) is the ray).
inline std::vector<std::set<Point>> branch_levels_by_formula(const Truncation& t, std::size_t n) {
  std::set<Point> on_ray(t.ray.begin(), t.ray.end());
  std::vector<std::set<Point>> levels{{t.ray[n]}};
  for (std::size_t k = 1; k <= t.map.size(); ++k) {
    std::set<Point> level;
    for (Point x = 0; x < t.map.size(); ++x) {
      Point y = x;
      for (std::size_t i = 0; i + 1 < k; ++i) y = t.map[y];
      if (!on_ray.count(y) && y != 0 && t.map[y] == t.ray[n]) level.insert(x);
    }
    if (level.empty()) break;
    levels.push_back(level);
  }
  return levels;
}

/// Order checks done pairwise, the slow way.
struct OrderFindings {
  bool order_preserving = true;
  bool fibers_contiguous = true;
  bool last_elements = true;
};

inline OrderFindings pairwise_order_check(const compactify::Chain& chain, const compactify::ChainWitness& w) {
  OrderFindings f;
  auto pos_in = [](const std::vector<Point>& seq, Point p) {
    return static_cast<std::size_t>(std::find(seq.begin(), seq.end(), p) - seq.begin());
  };
  for (std::size_t k = 0; k < w.orders.size(); ++k) {
    for (const auto& o : w.orders[k]) {
      // The declared last element must be listed, and nothing may come after it.
      const auto at = std::find(o.sequence.begin(), o.sequence.end(), o.last);
      if (at == o.sequence.end() || at + 1 != o.sequence.end()) {
        f.last_elements = false;
      }
    }
  }
  for (std::size_t k = 1; k < w.orders.size(); ++k) {
    const auto& t = chain.map_from(k);
    for (const auto& o : w.orders[k]) {
      // Image atom order: find the order containing T(first).
      const std::vector<Point>* base = nullptr;
      for (const auto& b : w.orders[k - 1]) {
        if (std::find(b.sequence.begin(), b.sequence.end(), t(o.sequence.front())) != b.sequence.end()) base = &b.sequence;
      }
      if (!base) {
        f.order_preserving = false;
        continue;
      }
      const auto& s = o.sequence;
      for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
          if (pos_in(*base, t(s[i])) > pos_in(*base, t(s[j]))) f.order_preserving = false;
        }
      }
      // Contiguity: once the image changes, the old image never comes back.
      std::set<Point> finished;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (finished.count(t(s[i]))) f.fibers_contiguous = false;
        if (i + 1 < s.size() && t(s[i + 1]) != t(s[i])) finished.insert(t(s[i]));
      }
    }
  }
  return f;
}

}  // namespace oracle
