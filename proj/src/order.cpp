#include "compactify/order.hpp"

#include <random>
#include <string>

#include "compactify/error.hpp"

namespace compactify {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Fisher-Yates with a fixed draw sequence.
void seeded_shuffle(std::vector<Point>& v, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng() % i]);
  }
}

}  // namespace

AtomOrder wo_order(const IndexSet& atom, const OrderPolicy& policy) {
  if (atom.empty()) throw Error(ErrorKind::EmptyAtom, "cannot well-order an empty atom");
  AtomOrder out;
  out.atom = make_index_set(atom);
  out.sequence = out.atom;
  if (policy.shuffle_seed) {
    seeded_shuffle(out.sequence, splitmix64(*policy.shuffle_seed ^ splitmix64(out.atom.front())));
  }
  out.last = out.sequence.back();
  return out;
}

AtomOrder lift_order(const MapBetween& t, const IndexSet& domain_atom, const AtomOrder& base,
                     const OrderPolicy& policy) {
  if (domain_atom.empty()) throw Error(ErrorKind::EmptyAtom, "cannot lift onto an empty atom");
  if (base.sequence.empty() || make_index_set(base.sequence) != base.atom || base.sequence.size() != base.atom.size()) {
    throw Error(ErrorKind::PreconditionViolated, "base order is not a permutation of its atom");
  }
  if (t.image_of(domain_atom) != base.atom) {
    throw Error(ErrorKind::NotOnto, "atom starting at " + std::to_string(domain_atom.front()) +
                                        " is not mapped onto the base atom");
  }
  std::vector<std::pair<Point, std::size_t>> rank;
  rank.reserve(base.sequence.size());
  for (std::size_t i = 0; i < base.sequence.size(); ++i) rank.emplace_back(base.sequence[i], i);
  std::sort(rank.begin(), rank.end());
  std::vector<IndexSet> fibers(base.sequence.size());
  for (Point x : domain_atom) {
    const auto it = std::lower_bound(rank.begin(), rank.end(), std::make_pair(t(x), std::size_t{0}));
    fibers[it->second].push_back(x);
  }
  AtomOrder out;
  out.atom = make_index_set(domain_atom);
  for (const IndexSet& fiber : fibers) {
    const AtomOrder local = wo_order(fiber, policy);
    out.sequence.insert(out.sequence.end(), local.sequence.begin(), local.sequence.end());
  }
  out.last = out.sequence.back();
  return out;
}

ChainWitness compactify_chain(const Chain& chain, const Atomization& atom, const OrderPolicy& policy) {
  bool valid = false;
  try {
    valid = verify_atomization(chain, atom);
  } catch (const Error& e) {
    throw Error(ErrorKind::AtomizationInvalid, e.what());
  }
  if (!valid) throw Error(ErrorKind::AtomizationInvalid, "atomization does not atomize the chain");

  ChainWitness out;
  out.atomization = atom;
  out.orders.resize(chain.length());
  for (const IndexSet& a : atom.lambdas[0].blocks()) out.orders[0].push_back(wo_order(a, policy));

  for (std::size_t k = 1; k < chain.length(); ++k) {
    const MapBetween& t = chain.map_from(k);
    const Partition& below = atom.lambdas[k - 1];
    for (const IndexSet& a : atom.lambdas[k].blocks()) {
      const std::size_t target = below.block_of(t(a.front()));
      out.orders[k].push_back(lift_order(t, a, out.orders[k - 1][target], policy));
    }
  }

  // Position tables, then one map-table row per point above the bottom level.
  std::vector<std::vector<std::size_t>> position(chain.length());
  for (std::size_t k = 0; k < chain.length(); ++k) {
    const IndexSet& level = chain.level(k);
    position[k].assign(level.size(), 0);
    for (const AtomOrder& o : out.orders[k]) {
      for (std::size_t i = 0; i < o.sequence.size(); ++i) {
        position[k][std::lower_bound(level.begin(), level.end(), o.sequence[i]) - level.begin()] = i;
      }
    }
  }
  for (std::size_t k = 1; k < chain.length(); ++k) {
    const IndexSet& level = chain.level(k);
    const IndexSet& lower = chain.level(k - 1);
    const MapBetween& t = chain.map_from(k);
    std::vector<LexEntry> rows;
    rows.reserve(level.size());
    for (std::size_t i = 0; i < level.size(); ++i) {
      LexEntry row;
      row.point = level[i];
      row.atom = atom.lambdas[k].block_of(row.point);
      row.position = position[k][i];
      row.image = t(row.point);
      row.image_atom = atom.lambdas[k - 1].block_of(row.image);
      row.image_position = position[k - 1][std::lower_bound(lower.begin(), lower.end(), row.image) - lower.begin()];
      rows.push_back(row);
    }
    out.lex.push_back(std::move(rows));
  }
  return out;
}

}  // namespace compactify
