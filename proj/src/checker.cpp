#include "compactify/checker.hpp"

#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "compactify/error.hpp"

// The checks below avoid the builder and the partition
// operations (pushforward, meet, relate, is_t_related); everything is
// re-derived from the system with plain loops. Only the Partition container
// itself is shared.

namespace compactify {

std::string_view rule_id(Rule rule) {
  switch (rule) {
    case Rule::Address: return "a-address";
    case Rule::Structure: return "a-structure";
    case Rule::Levels: return "b-levels";
    case Rule::Shape: return "b-shape";
    case Rule::Atomization: return "b-atomization";
    case Rule::Lexicographic: return "b-lexicographic";
    case Rule::Onto: return "c-onto";
    case Rule::Order: return "c-order";
    case Rule::Compactness: return "d-compactness";
    case Rule::Continuity: return "e-continuity";
  }
  return "unknown";
}

bool CheckReport::has(Rule rule) const {
  return std::any_of(violations.begin(), violations.end(), [rule](const Violation& v) { return v.rule == rule; });
}

void CheckReport::add(std::string location, Rule rule, std::string description) {
  violations.push_back({std::move(location), rule, std::move(description)});
}

void CheckReport::merge(const CheckReport& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

namespace {

using ImageFn = std::function<Point(Point)>;
using std::to_string;

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::string at_level(const std::string& where, std::size_t k) { return where + "/level " + to_string(k + 1); }

std::size_t index_in(const IndexSet& set, Point p) {
  auto it = std::lower_bound(set.begin(), set.end(), p);
  return it != set.end() && *it == p ? static_cast<std::size_t>(it - set.begin()) : kNone;
}

bool is_well_order_of(const AtomOrder& o, const IndexSet& atom) {
  if (o.atom != atom || o.sequence.size() != atom.size()) return false;
  std::vector<Point> sorted = o.sequence;
  std::sort(sorted.begin(), sorted.end());
  return sorted == atom;
}

// The coarsest partition of `lower` grouping points whose fibers meet the
// same blocks of `upper_pi`.
Partition tabulate_hit_sets(const IndexSet& upper, const IndexSet& lower, const ImageFn& image,
                            const Partition& upper_pi) {
  std::map<Point, std::set<std::size_t>> hits;
  for (Point y : lower) hits[y];
  for (Point x : upper) hits[image(x)].insert(upper_pi.block_of(x));
  std::map<std::set<std::size_t>, IndexSet> groups;
  for (const auto& [y, h] : hits) groups[h].push_back(y);
  std::vector<IndexSet> blocks;
  for (auto& [h, b] : groups) blocks.push_back(std::move(b));
  return Partition::from_blocks(std::move(blocks));
}

void check_chain(const std::string& where, const ChainWitness& cw, const std::vector<IndexSet>& levels,
                 const ImageFn& image, CheckReport& report) {
  const std::size_t n = levels.size();
  const Atomization& at = cw.atomization;
  if (at.pis.size() != n || at.lambdas.size() != n || cw.orders.size() != n) {
    report.add(where, Rule::Levels,
               "witness has " + to_string(at.lambdas.size()) + " levels, the tree has " + to_string(n));
    return;
  }
  bool grounds_ok = true;
  for (std::size_t k = 0; k < n; ++k) {
    if (at.pis[k].ground() != levels[k] || at.lambdas[k].ground() != levels[k]) {
      report.add(at_level(where, k), Rule::Levels, "partition ground differs from the level set");
      grounds_ok = false;
    }
  }
  if (!grounds_ok) return;
  for (std::size_t k = 0; k < n; ++k) {
    if (cw.orders[k].size() != at.lambdas[k].size()) {
      report.add(at_level(where, k), Rule::Shape, "one order per atom expected");
      return;
    }
  }

  // (d) every atom is finite and carries its last element.
  std::vector<std::vector<char>> order_ok(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t a = 0; a < at.lambdas[k].size(); ++a) {
      const AtomOrder& o = cw.orders[k][a];
      const std::string loc = at_level(where, k) + "/atom " + to_string(a);
      bool ok = true;
      if (o.sequence.empty()) {
        report.add(loc, Rule::Compactness, "atom order is empty");
        ok = false;
      } else if (!is_well_order_of(o, at.lambdas[k].block(a))) {
        report.add(loc, Rule::Compactness, "order does not list the atom exactly once");
        ok = false;
      } else if (o.last != o.sequence.back()) {
        report.add(loc, Rule::Compactness, "declared last element is not the last in the order");
        ok = false;
      }
      order_ok[k].push_back(ok);
    }
  }

  // Position of every level point inside its atom order (kNone if that order is broken).
  std::vector<std::vector<std::size_t>> position(n);
  for (std::size_t k = 0; k < n; ++k) {
    position[k].assign(levels[k].size(), kNone);
    for (std::size_t a = 0; a < at.lambdas[k].size(); ++a) {
      if (!order_ok[k][a]) continue;
      const auto& seq = cw.orders[k][a].sequence;
      for (std::size_t i = 0; i < seq.size(); ++i) position[k][index_in(levels[k], seq[i])] = i;
    }
  }

  // (b) the atomization, re-derived level by level.
  if (at.pis[n - 1].size() != 1) {
    report.add(at_level(where, n - 1), Rule::Atomization, "top partition is not the whole level");
  }
  for (std::size_t k = n - 1; k >= 1; --k) {
    if (tabulate_hit_sets(levels[k], levels[k - 1], image, at.pis[k]) != at.pis[k - 1]) {
      report.add(at_level(where, k - 1), Rule::Atomization, "partition is not the hit-set partition of the level above");
    }
  }
  if (at.lambdas[0] != at.pis[0]) {
    report.add(at_level(where, 0), Rule::Atomization, "bottom atoms differ from the bottom partition");
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (const IndexSet& atom : at.lambdas[k].blocks()) {
      const std::size_t b = at.pis[k].block_of(atom.front());
      if (std::any_of(atom.begin(), atom.end(), [&](Point p) { return at.pis[k].block_of(p) != b; })) {
        report.add(at_level(where, k), Rule::Atomization,
                   "atom containing " + to_string(atom.front()) + " straddles two partition blocks");
      }
    }
  }

  // (b)+(c) each atom maps onto an atom, and (c) monotonically.
  for (std::size_t k = 1; k < n; ++k) {
    const Partition& below = at.lambdas[k - 1];
    for (std::size_t a = 0; a < at.lambdas[k].size(); ++a) {
      const IndexSet& atom = at.lambdas[k].block(a);
      const std::string loc = at_level(where, k) + "/atom " + to_string(a);
      std::vector<Point> img;
      for (Point x : atom) img.push_back(image(x));
      const IndexSet img_set = make_index_set(img);
      const std::size_t target = below.block_of(img_set.front());
      if (below.block(target) != img_set) {
        report.add(loc, Rule::Atomization, "atom is not mapped onto a single atom of the level below");
        report.add(loc, Rule::Onto, "image of the atom is not an atom");
      }
      if (!order_ok[k][a] || !order_ok[k - 1][target]) continue;
      std::size_t prev = 0;
      for (Point x : cw.orders[k][a].sequence) {
        const Point y = image(x);
        if (below.block_of(y) != target) continue;
        const std::size_t p = position[k - 1][index_in(levels[k - 1], y)];
        if (p < prev) {
          report.add(loc, Rule::Order, "map is not order-preserving at point " + to_string(x));
          break;
        }
        prev = p;
      }
    }
  }

  // (b) the per-level map table must agree with the orders.
  if (cw.lex.size() + 1 != n) {
    report.add(where, Rule::Lexicographic, "map table has the wrong number of levels");
    return;
  }
  for (std::size_t k = 1; k < n; ++k) {
    const auto& rows = cw.lex[k - 1];
    if (rows.size() != levels[k].size()) {
      report.add(at_level(where, k), Rule::Lexicographic, "map table does not list every point once");
      continue;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const LexEntry& row = rows[i];
      const Point x = levels[k][i];
      const Point y = image(x);
      const std::size_t yi = index_in(levels[k - 1], y);
      const bool ok = row.point == x && row.atom == at.lambdas[k].block_of(x) && row.position == position[k][i] &&
                      row.image == y && row.image_atom == at.lambdas[k - 1].block_of(y) &&
                      row.image_position == position[k - 1][yi];
      if (!ok) {
        report.add(at_level(where, k), Rule::Lexicographic, "map table row for point " + to_string(x) + " is wrong");
        break;
      }
    }
  }
}

using ChainLookup = std::function<const ChainWitness*(AddressKind, std::size_t)>;

void check_addresses(const TopologyWitness& w, const ChainLookup& chain_for, CheckReport& report) {
  const std::string where = "addresses";
  if (w.addresses.size() != w.point_count) {
    report.add(where, Rule::Address,
               to_string(w.addresses.size()) + " addresses for " + to_string(w.point_count) + " points");
  }
  std::vector<char> seen(w.point_count, 0);
  std::set<std::tuple<int, std::size_t, std::size_t, std::size_t, std::size_t>> tuples;
  for (const PointAddress& a : w.addresses) {
    const std::string loc = where + "/point " + to_string(a.point);
    if (a.point >= w.point_count) {
      report.add(loc, Rule::Address, "address for a point outside X");
      continue;
    }
    if (seen[a.point]++) report.add(loc, Rule::Address, "point has more than one address");
    if (!tuples.emplace(static_cast<int>(a.kind), a.component, a.level, a.atom, a.position).second) {
      report.add(loc, Rule::Address, "address collides with another point");
    }
    if ((a.point == w.star) != (a.kind == AddressKind::Star)) {
      report.add(loc, Rule::Address, "only x* may carry the star address");
      continue;
    }
    if (a.kind == AddressKind::Star) continue;
    const ChainWitness* cw = chain_for(a.kind, a.component);
    const bool resolves = cw != nullptr && a.level < cw->orders.size() && a.atom < cw->orders[a.level].size() &&
                          a.position < cw->orders[a.level][a.atom].sequence.size() &&
                          cw->orders[a.level][a.atom].sequence[a.position] == a.point;
    if (!resolves) report.add(loc, Rule::Address, "address does not resolve to this point");
  }
  for (std::size_t p = 0; p < w.point_count; ++p) {
    if (!seen[p]) report.add(where + "/point " + to_string(p), Rule::Address, "point has no address");
  }
}

}  // namespace

CheckReport verify_witness(const SelfmapSystem& system, const TopologyWitness& w) {
  if (w.source != WitnessSource::Finite) throw Error(ErrorKind::ShapeMismatch, "ray witness given for a finite system");
  if (w.point_count != system.size()) {
    throw Error(ErrorKind::ShapeMismatch, "witness covers " + to_string(w.point_count) + " points, system has " +
                                              to_string(system.size()));
  }
  CheckReport report;
  check_addresses(
      w,
      [&](AddressKind kind, std::size_t c) -> const ChainWitness* {
        return kind == AddressKind::Class && c < w.classes.size() ? &w.classes[c].chain : nullptr;
      },
      report);

  const std::size_t n = system.size();
  const Point star = w.star;
  if (star >= n || system(star) != star) {
    report.add("star", Rule::Structure, "x* is not a fixed point of T");
    return report;
  }

  // Root z (the last point before x*) and depth of every point, by walking orbits.
  std::vector<Point> root(n, 0);
  std::vector<std::size_t> depth(n, kNone);
  depth[star] = 0;
  for (Point x = 0; x < n; ++x) {
    std::vector<Point> path;
    Point y = x;
    while (y != star && depth[y] == kNone && path.size() <= n) {
      path.push_back(y);
      y = system(y);
    }
    if (path.size() > n) {
      report.add("point " + to_string(x), Rule::Structure, "orbit never reaches x*");
      return report;
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      if (y == star) {
        root[*it] = *it;
        depth[*it] = 0;
      } else {
        root[*it] = root[y];
        depth[*it] = depth[y] + 1;
      }
      y = *it;
    }
  }
  std::map<Point, std::vector<IndexSet>> trees;
  for (Point x = 0; x < n; ++x) {
    if (x == star) continue;
    auto& levels = trees[root[x]];
    if (levels.size() <= depth[x]) levels.resize(depth[x] + 1);
    levels[depth[x]].push_back(x);
  }

  std::set<Point> covered;
  const ImageFn image = [&](Point x) { return system(x); };
  for (std::size_t c = 0; c < w.classes.size(); ++c) {
    const ClassWitness& cls = w.classes[c];
    const std::string loc = "class " + to_string(c);
    auto tree = trees.find(cls.seed);
    if (tree == trees.end()) {
      report.add(loc, Rule::Structure, "seed " + to_string(cls.seed) + " is not mapped directly to x*");
      continue;
    }
    if (!covered.insert(cls.seed).second) {
      report.add(loc, Rule::Structure, "tree of " + to_string(cls.seed) + " is witnessed twice");
      continue;
    }
    IndexSet members;
    for (const IndexSet& level : tree->second) members.insert(members.end(), level.begin(), level.end());
    std::sort(members.begin(), members.end());
    if (cls.members != members) report.add(loc, Rule::Structure, "members differ from the tree of the seed");
    check_chain(loc, cls.chain, tree->second, image, report);
  }
  for (const auto& [z, levels] : trees) {
    if (!covered.count(z)) report.add("tree " + to_string(z), Rule::Structure, "tree has no class witness");
  }
  if (!w.branches.empty() || w.tail) report.add("witness", Rule::Structure, "finite witness carries ray data");
  return report;
}

RayPointSet ray_preimage(const RayPresentation& ray, const std::vector<std::size_t>& branches) {
  const RayLayout layout(ray);
  const std::set<std::size_t> wanted(branches.begin(), branches.end());
  std::set<std::size_t> ray_points;
  for (std::size_t n : wanted) {
    if (n >= 1) ray_points.insert(n - 1);  // T b_{n-1} = b_n
  }
  RayPointSet out;
  out.ray.assign(ray_points.begin(), ray_points.end());
  for (std::size_t b = 0; b < ray.branches.size(); ++b) {
    for (std::size_t i = 0; i < ray.branches[b].nodes.size(); ++i) {
      const RayNodeRef& parent = ray.branches[b].parent[i];
      const std::size_t target = parent.kind == RayNodeRef::Kind::Ray ? parent.index : parent.branch;
      if (wanted.count(target)) out.nodes.push_back(layout.node_point(b, i));
    }
  }
  std::sort(out.nodes.begin(), out.nodes.end());
  return out;
}

namespace {

// B_n level sets re-derived by walking each node up to the ray.
std::vector<std::vector<IndexSet>> ray_branch_levels(const RayLayout& layout) {
  const std::size_t r = layout.prefix();
  std::vector<std::vector<IndexSet>> levels(r);
  for (std::size_t n = 0; n < r; ++n) levels[n].push_back({layout.ray_point(n)});
  for (Point p = static_cast<Point>(r + 1); p < layout.point_count(); ++p) {
    Point y = p;
    std::size_t d = 0;
    while (!layout.is_ray_point(y)) {
      y = *layout.image(y);
      ++d;
    }
    auto& branch = levels[y - 1];
    if (branch.size() <= d) branch.resize(d + 1);
    branch[d].push_back(p);
  }
  return levels;
}

const BranchWitness* find_branch(const TopologyWitness& w, std::size_t n) {
  for (const BranchWitness& b : w.branches) {
    if (b.ray_index == n) return &b;
  }
  return nullptr;
}

}  // namespace

CheckReport verify_witness(const RayPresentation& ray, const TopologyWitness& w) {
  const RayLayout layout(ray);
  if (w.source != WitnessSource::Ray) throw Error(ErrorKind::ShapeMismatch, "finite witness given for a ray");
  if (w.point_count != layout.point_count()) {
    throw Error(ErrorKind::ShapeMismatch, "witness covers " + to_string(w.point_count) +
                                              " points, presentation materializes " +
                                              to_string(layout.point_count()));
  }
  CheckReport report;
  check_addresses(
      w,
      [&](AddressKind kind, std::size_t n) -> const ChainWitness* {
        const BranchWitness* b = kind == AddressKind::Branch ? find_branch(w, n) : nullptr;
        return b ? &b->chain : nullptr;
      },
      report);
  if (w.star != RayLayout::star()) report.add("star", Rule::Structure, "x* must be point 0 of a ray witness");
  if (!w.classes.empty()) report.add("witness", Rule::Structure, "ray witness carries finite classes");

  const auto levels = ray_branch_levels(layout);
  const ImageFn image = [&](Point x) { return *layout.image(x); };
  std::set<std::size_t> seen;
  for (const BranchWitness& b : w.branches) {
    const std::string loc = "branch " + to_string(b.ray_index);
    if (b.ray_index >= layout.prefix()) {
      report.add(loc, Rule::Structure, "branch index lies in the bare tail");
      continue;
    }
    if (!seen.insert(b.ray_index).second) {
      report.add(loc, Rule::Structure, "branch is witnessed twice");
      continue;
    }
    check_chain(loc, b.chain, levels[b.ray_index], image, report);
  }
  report.merge(verify_continuity_at_star(ray, w));
  return report;
}

CheckReport verify_continuity_at_star(const RayPresentation& ray, const TopologyWitness& w) {
  const RayLayout layout(ray);
  const std::size_t r = layout.prefix();
  CheckReport report;

  // (i) each explicit B_n is a finite union of finite atoms with last elements.
  const auto levels = ray_branch_levels(layout);
  std::vector<char> compact(r, 0);
  for (std::size_t n = 0; n < r; ++n) {
    const std::string loc = "branch " + to_string(n);
    const BranchWitness* b = find_branch(w, n);
    if (!b) {
      report.add(loc, Rule::Continuity, "no compactness certificate for this branch");
      continue;
    }
    IndexSet expected;
    for (const IndexSet& level : levels[n]) expected.insert(expected.end(), level.begin(), level.end());
    std::sort(expected.begin(), expected.end());
    std::vector<Point> listed;
    bool atoms_ok = true;
    for (const auto& level : b->chain.orders) {
      for (const AtomOrder& o : level) {
        atoms_ok = atoms_ok && !o.sequence.empty() && o.last == o.sequence.back();
        listed.insert(listed.end(), o.sequence.begin(), o.sequence.end());
      }
    }
    std::sort(listed.begin(), listed.end());
    if (!atoms_ok || listed != expected) {
      report.add(loc, Rule::Continuity, "branch is not covered by finite atoms with last elements");
      continue;
    }
    compact[n] = 1;
  }

  // Tail branches B_n = {b_n}, n >= r, are single points.
  bool tail_ok = false;
  if (!w.tail) {
    report.add("tail", Rule::Continuity, "missing tail schema");
  } else if (w.tail->from != r) {
    report.add("tail", Rule::Continuity,
               "tail schema starts at " + to_string(w.tail->from) + ", explicit branches end at " + to_string(r));
  } else if (!w.tail->branch_cardinality) {
    report.add("branch " + to_string(r), Rule::Continuity, "tail branch claimed infinite");
  } else if (*w.tail->branch_cardinality != 1) {
    report.add("branch " + to_string(r), Rule::Continuity,
               "tail branch claimed to hold " + to_string(*w.tail->branch_cardinality) + " points, it is {b_n}");
  } else {
    tail_ok = true;
  }
  auto certified = [&](std::size_t m) { return m < r ? compact[m] != 0 : tail_ok; };

  // (ii) T^{-1}B_n meets only B_{n-1} and B_n. Indices above r+1 repeat the
  // r+1 case shifted, so checking 0..r+1 covers every generator.
  for (std::size_t n = 0; n <= r + 1; ++n) {
    const std::string loc = "branch " + to_string(n);
    const RayPointSet pre = ray_preimage(ray, {n});
    auto allowed = [&](std::size_t m) { return (m == n || m + 1 == n) && certified(m); };
    for (std::size_t m : pre.ray) {
      if (!allowed(m)) {
        report.add(loc, Rule::Continuity, "preimage meets branch " + to_string(m) + " which is not certified compact");
      }
    }
    for (Point p : pre.nodes) {
      Point y = p;
      while (!layout.is_ray_point(y)) y = *layout.image(y);
      if (!allowed(y - 1u)) {
        report.add(loc, Rule::Continuity,
                   "preimage meets branch " + to_string(y - 1u) + " which is not certified compact");
      }
    }
  }
  return report;
}

}  // namespace compactify
