#pragma once

// Single-field witness mutations with the rule each one must trip.
// Shared by the checker unit tests and the acceptance binary.

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "compactify/checker.hpp"
#include "compactify/witness.hpp"

namespace mutate {

using namespace compactify;

struct Mutant {
  std::string name;
  Rule expected;
  TopologyWitness witness;
};

struct ChainRef {
  AddressKind kind;
  std::size_t component;
  ChainWitness* chain;
};

inline std::vector<ChainRef> chains_of(TopologyWitness& w) {
  std::vector<ChainRef> out;
  for (std::size_t c = 0; c < w.classes.size(); ++c) out.push_back({AddressKind::Class, c, &w.classes[c].chain});
  for (auto& b : w.branches) out.push_back({AddressKind::Branch, b.ray_index, &b.chain});
  return out;
}

inline PointAddress* address_of(TopologyWitness& w, Point p) {
  auto it = std::lower_bound(w.addresses.begin(), w.addresses.end(), p,
                             [](const PointAddress& a, Point q) { return a.point < q; });
  return it != w.addresses.end() && it->point == p ? &*it : nullptr;
}

// Recomputes addresses, `last`, and map-table positions from the current orders.
inline void resync(TopologyWitness& w) {
  for (ChainRef ref : chains_of(w)) {
    ChainWitness& cw = *ref.chain;
    std::vector<std::vector<std::pair<Point, std::pair<std::size_t, std::size_t>>>> where(cw.orders.size());
    for (std::size_t k = 0; k < cw.orders.size(); ++k) {
      for (std::size_t a = 0; a < cw.orders[k].size(); ++a) {
        AtomOrder& o = cw.orders[k][a];
        if (!o.sequence.empty()) o.last = o.sequence.back();
        for (std::size_t i = 0; i < o.sequence.size(); ++i) {
          where[k].push_back({o.sequence[i], {a, i}});
          if (PointAddress* addr = address_of(w, o.sequence[i])) {
            *addr = {o.sequence[i], ref.kind, ref.component, k, a, i};
          }
        }
      }
      std::sort(where[k].begin(), where[k].end());
    }
    auto lookup = [&](std::size_t k, Point p) {
      auto it = std::lower_bound(where[k].begin(), where[k].end(), std::make_pair(p, std::make_pair(std::size_t{0}, std::size_t{0})));
      return it->second;
    };
    for (std::size_t k = 1; k < cw.orders.size() && k - 1 < cw.lex.size(); ++k) {
      for (LexEntry& row : cw.lex[k - 1]) {
        std::tie(row.atom, row.position) = lookup(k, row.point);
        std::tie(row.image_atom, row.image_position) = lookup(k - 1, row.image);
      }
    }
  }
}

inline std::string chain_name(const ChainRef& ref) {
  return (ref.kind == AddressKind::Class ? "class " : "branch ") + std::to_string(ref.component);
}

// Every applicable mutation of `base`, over all positions. `image` is the map
// of the system the witness was built for.
inline std::vector<Mutant> all_mutants(const TopologyWitness& base, const std::function<Point(Point)>& image) {
  std::vector<Mutant> out;
  auto copy = base;
  const auto refs = chains_of(copy);
  for (std::size_t r = 0; r < refs.size(); ++r) {
    const ChainWitness& cw = *refs[r].chain;
    const std::string cname = chain_name(refs[r]);
    for (std::size_t k = 0; k < cw.orders.size(); ++k) {
      const std::string lname = cname + " level " + std::to_string(k);

      // Block merge: fuse two adjacent atoms and their orders.
      for (std::size_t a = 0; a + 1 < cw.orders[k].size(); ++a) {
        Mutant m{"merge atoms " + std::to_string(a) + "+" + std::to_string(a + 1) + " in " + lname,
                 Rule::Atomization, base};
        ChainWitness& target = *chains_of(m.witness)[r].chain;
        auto& orders = target.orders[k];
        orders[a].atom = make_index_set([&] {
          IndexSet u = orders[a].atom;
          u.insert(u.end(), orders[a + 1].atom.begin(), orders[a + 1].atom.end());
          return u;
        }());
        orders[a].sequence.insert(orders[a].sequence.end(), orders[a + 1].sequence.begin(),
                                  orders[a + 1].sequence.end());
        orders.erase(orders.begin() + static_cast<std::ptrdiff_t>(a) + 1);
        std::sort(orders.begin(), orders.end(),
                  [](const AtomOrder& x, const AtomOrder& y) { return x.atom.front() < y.atom.front(); });
        std::vector<IndexSet> blocks;
        for (const AtomOrder& o : orders) blocks.push_back(o.atom);
        target.atomization.lambdas[k] = Partition::from_blocks(blocks);
        resync(m.witness);
        out.push_back(std::move(m));
      }

      for (std::size_t a = 0; a < cw.orders[k].size(); ++a) {
        const AtomOrder& o = cw.orders[k][a];
        const std::string aname = lname + " atom " + std::to_string(a);

        // Order swap: exchange two neighbours whose images differ.
        if (k >= 1) {
          for (std::size_t i = 0; i + 1 < o.sequence.size(); ++i) {
            if (image(o.sequence[i]) == image(o.sequence[i + 1])) continue;
            Mutant m{"swap positions " + std::to_string(i) + "," + std::to_string(i + 1) + " in " + aname,
                     Rule::Order, base};
            auto& seq = chains_of(m.witness)[r].chain->orders[k][a].sequence;
            std::swap(seq[i], seq[i + 1]);
            resync(m.witness);
            out.push_back(std::move(m));
          }
        }

        // Compactness certificate: declare the wrong last element.
        if (o.sequence.size() >= 2) {
          Mutant m{"wrong last element in " + aname, Rule::Compactness, base};
          auto& t = chains_of(m.witness)[r].chain->orders[k][a];
          t.last = t.sequence.front();
          out.push_back(std::move(m));
        }
        Mutant empty{"empty order in " + aname, Rule::Compactness, base};
        chains_of(empty.witness)[r].chain->orders[k][a].sequence.clear();
        out.push_back(std::move(empty));
      }

      // Map table: corrupt one row.
      if (k >= 1) {
        Mutant m{"corrupt map table row in " + lname, Rule::Lexicographic, base};
        chains_of(m.witness)[r].chain->lex[k - 1].front().image_position += 1;
        out.push_back(std::move(m));
      }
    }

    // Dropped level: remove the top level everywhere in the chain.
    {
      Mutant m{"drop top level of " + cname, Rule::Levels, base};
      ChainWitness& t = *chains_of(m.witness)[r].chain;
      t.atomization.pis.pop_back();
      t.atomization.lambdas.pop_back();
      t.orders.pop_back();
      if (!t.lex.empty()) t.lex.pop_back();
      out.push_back(std::move(m));
    }
  }

  // Address collisions: give a point the address of its neighbour.
  for (std::size_t i = 0; i + 1 < base.addresses.size(); ++i) {
    if (base.addresses[i].kind == AddressKind::Star || base.addresses[i + 1].kind == AddressKind::Star) continue;
    Mutant m{"address of point " + std::to_string(base.addresses[i + 1].point) + " copied to " +
                 std::to_string(base.addresses[i].point),
             Rule::Address, base};
    PointAddress& a = m.witness.addresses[i];
    a = base.addresses[i + 1];
    a.point = base.addresses[i].point;
    out.push_back(std::move(m));
  }

  // Tail tampering (ray witnesses only).
  if (base.tail) {
    auto tail_mutant = [&](const std::string& name, auto&& edit) {
      Mutant m{name, Rule::Continuity, base};
      edit(m.witness);
      out.push_back(std::move(m));
    };
    tail_mutant("tail claims infinite branches", [](TopologyWitness& w) { w.tail->branch_cardinality.reset(); });
    tail_mutant("tail claims two points per branch", [](TopologyWitness& w) { w.tail->branch_cardinality = 2; });
    tail_mutant("tail starts one branch late", [](TopologyWitness& w) { w.tail->from += 1; });
    tail_mutant("tail missing", [](TopologyWitness& w) { w.tail.reset(); });
    if (base.tail->from > 0) {
      tail_mutant("tail starts one branch early", [](TopologyWitness& w) { w.tail->from -= 1; });
    }
    for (std::size_t b = 0; b < base.branches.size(); ++b) {
      tail_mutant("branch " + std::to_string(base.branches[b].ray_index) + " witness removed",
                  [b](TopologyWitness& w) { w.branches.erase(w.branches.begin() + static_cast<std::ptrdiff_t>(b)); });
    }
  }
  return out;
}

}  // namespace mutate
