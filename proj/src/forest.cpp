#include "compactify/forest.hpp"

#include <numeric>
#include <string>

#include "compactify/error.hpp"

namespace compactify {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

void append_addresses(std::vector<PointAddress>& out, const ChainWitness& cw, AddressKind kind,
                      std::size_t component) {
  for (std::size_t k = 0; k < cw.orders.size(); ++k) {
    for (std::size_t a = 0; a < cw.orders[k].size(); ++a) {
      const auto& seq = cw.orders[k][a].sequence;
      for (std::size_t i = 0; i < seq.size(); ++i) out.push_back({seq[i], kind, component, k, a, i});
    }
  }
}

void sort_addresses(std::vector<PointAddress>& addresses) {
  std::sort(addresses.begin(), addresses.end(),
            [](const PointAddress& a, const PointAddress& b) { return a.point < b.point; });
}

}  // namespace

ClassDecomposition decompose(const SelfmapSystem& system) {
  const ConditionReport condition = check_condition(system);
  if (!condition.holds) {
    throw Error(ErrorKind::ConditionFails, "the images of T do not shrink to a single fixed point");
  }
  const Point star = *condition.fixed_point;
  const std::size_t n = system.size();

  DisjointSets sets(n);
  for (Point x = 0; x < n; ++x) {
    if (x != star && system(x) != star) sets.unite(x, system(x));
  }

  ClassDecomposition out;
  out.star = star;
  std::vector<std::size_t> class_of_root(n, n);
  for (Point x = 0; x < n; ++x) {
    if (x == star) continue;
    const std::size_t root = sets.find(x);
    if (class_of_root[root] == n) {
      class_of_root[root] = out.classes.size();
      out.classes.push_back({{}, ClassKind::Second, x});
    }
    GrandOrbitClass& cls = out.classes[class_of_root[root]];
    cls.members.push_back(x);
    if (system(x) == star && cls.kind == ClassKind::Second) {
      cls.kind = ClassKind::First;
      cls.seed = x;
    }
  }
  return out;
}

Chain first_kind_chain(const SelfmapSystem& system, const GrandOrbitClass& cls) {
  if (cls.kind != ClassKind::First || !contains(cls.members, cls.seed)) {
    throw Error(ErrorKind::NotFirstKind, "class has no seed z with T z = x*");
  }
  const Point star = system(cls.seed);
  if (star == cls.seed || system(star) != star) {
    throw Error(ErrorKind::NotFirstKind, "seed " + std::to_string(cls.seed) + " does not map onto the fixed point");
  }

  // (parent, child) pairs sorted by parent give each level's successors by range lookup.
  std::vector<std::pair<Point, Point>> edges;
  edges.reserve(cls.members.size());
  for (Point x : cls.members) {
    if (x != cls.seed) edges.emplace_back(system(x), x);
  }
  std::sort(edges.begin(), edges.end());

  std::vector<IndexSet> levels{{cls.seed}};
  std::size_t covered = 1;
  for (;;) {
    IndexSet next;
    for (Point y : levels.back()) {
      auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(y, Point{0}));
      for (; it != edges.end() && it->first == y; ++it) next.push_back(it->second);
    }
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    covered += next.size();
    levels.push_back(std::move(next));
  }
  if (covered != cls.members.size()) {
    throw Error(ErrorKind::InvalidChain, "levels above " + std::to_string(cls.seed) + " do not cover the class");
  }
  return Chain::restrict(std::move(levels), [&](Point x) { return system(x); });
}

BranchDecomposition second_kind_branches(const RayPresentation& ray) {
  const RayLayout layout(ray);
  BranchDecomposition out;
  for (std::size_t n = 0; n < layout.prefix(); ++n) {
    std::vector<IndexSet> levels(layout.branch_depth(n) + 1);
    levels[0] = {layout.ray_point(n)};
    for (Point p = static_cast<Point>(layout.prefix() + 1); p < layout.point_count(); ++p) {
      if (layout.branch_of(p) == n) levels[layout.depth(p)].push_back(p);
    }
    auto image = [&](Point x) { return *layout.image(x); };
    Chain chain = Chain::restrict(levels, image);
    out.branches.push_back({n, std::move(levels), std::move(chain)});
  }
  out.tail = TailSchema{layout.prefix(), 1};
  return out;
}

TopologyWitness build_witness(const SelfmapSystem& system, const OrderPolicy& policy) {
  const ClassDecomposition forest = decompose(system);
  TopologyWitness w;
  w.source = WitnessSource::Finite;
  w.star = forest.star;
  w.point_count = system.size();
  w.addresses.push_back({forest.star, AddressKind::Star, 0, 0, 0, 0});
  for (std::size_t c = 0; c < forest.classes.size(); ++c) {
    const GrandOrbitClass& cls = forest.classes[c];
    const Chain chain = first_kind_chain(system, cls);
    ClassWitness cw{cls.seed, cls.members, compactify_chain(chain, atomize_chain(chain), policy)};
    append_addresses(w.addresses, cw.chain, AddressKind::Class, c);
    w.classes.push_back(std::move(cw));
  }
  sort_addresses(w.addresses);
  return w;
}

TopologyWitness build_witness(const RayPresentation& ray, const OrderPolicy& policy) {
  const RayLayout layout(ray);
  const BranchDecomposition branches = second_kind_branches(ray);
  TopologyWitness w;
  w.source = WitnessSource::Ray;
  w.star = RayLayout::star();
  w.point_count = layout.point_count();
  w.names = layout.names();
  w.tail = branches.tail;
  w.addresses.push_back({w.star, AddressKind::Star, 0, 0, 0, 0});
  for (const BranchStructure& b : branches.branches) {
    BranchWitness bw{b.ray_index, compactify_chain(b.chain, atomize_chain(b.chain), policy)};
    append_addresses(w.addresses, bw.chain, AddressKind::Branch, b.ray_index);
    w.branches.push_back(std::move(bw));
  }
  sort_addresses(w.addresses);
  return w;
}

}  // namespace compactify
