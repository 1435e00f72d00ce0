#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "compactify/chain.hpp"
#include "compactify/partition.hpp"

namespace compactify {

/// Which well-order to put on each fiber. The default is ascending point
/// index; a shuffle seed selects a reproducible pseudo-random order instead,
/// which property tests use to show nothing depends on the choice.
struct OrderPolicy {
  std::optional<std::uint64_t> shuffle_seed;
};

/// A finite atom listed first-to-last. `last` is stored explicitly and is
/// the compactness certificate for the atom.
struct AtomOrder {
  IndexSet atom;
  std::vector<Point> sequence;
  Point last = 0;

  bool operator==(const AtomOrder&) const = default;
};

/// Throws Error(EmptyAtom) for an empty atom.
AtomOrder wo_order(const IndexSet& atom, const OrderPolicy& policy = {});

/// Lexicographic lift: fibers of `t` over base.sequence, each fiber well
/// ordered, concatenated in base order. Throws Error(NotOnto) unless `t`
/// maps `domain_atom` onto base.atom.
AtomOrder lift_order(const MapBetween& t, const IndexSet& domain_atom, const AtomOrder& base,
                     const OrderPolicy& policy = {});

/// One row of the per-level map table: where a point sits and where its
/// image sits, both as (atom id, position within the atom order).
struct LexEntry {
  Point point = 0;
  std::size_t atom = 0;
  std::size_t position = 0;
  Point image = 0;
  std::size_t image_atom = 0;
  std::size_t image_position = 0;

  bool operator==(const LexEntry&) const = default;
};

struct ChainWitness {
  Atomization atomization;
  /// orders[k][a] orders atom a of atomization.lambdas[k].
  std::vector<std::vector<AtomOrder>> orders;
  /// lex[k-1] is the map table of level k (k >= 1), rows in point order.
  std::vector<std::vector<LexEntry>> lex;

  bool operator==(const ChainWitness&) const = default;
};

/// Well-orders the bottom atoms and lifts every higher atom along its image.
/// Throws Error(AtomizationInvalid) unless verify_atomization accepts `atom`.
ChainWitness compactify_chain(const Chain& chain, const Atomization& atom, const OrderPolicy& policy = {});

}  // namespace compactify
