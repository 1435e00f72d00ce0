#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "compactify/order.hpp"
#include "compactify/types.hpp"

namespace compactify {

/// Tail branches B_n, n >= from, of a ray class. Every tail branch is the
/// bare point {b_n}, so branch_cardinality must be 1; nullopt stands for an
/// infinite branch and never certifies.
struct TailSchema {
  std::size_t from = 0;
  std::optional<std::size_t> branch_cardinality = 1;

  bool operator==(const TailSchema&) const = default;
};

enum class AddressKind { Star, Class, Branch };

/// Where a point lives in the witness: component (class id or ray index),
/// chain level, atom within that level's lambda, position within the atom order.
struct PointAddress {
  Point point = 0;
  AddressKind kind = AddressKind::Star;
  std::size_t component = 0;
  std::size_t level = 0;
  std::size_t atom = 0;
  std::size_t position = 0;

  bool operator==(const PointAddress&) const = default;
};

struct ClassWitness {
  Point seed = 0;
  IndexSet members;
  ChainWitness chain;

  bool operator==(const ClassWitness&) const = default;
};

struct BranchWitness {
  std::size_t ray_index = 0;
  ChainWitness chain;

  bool operator==(const BranchWitness&) const = default;
};

enum class WitnessSource { Finite, Ray };

/// Everything needed to re-check the one-point compactification of (X, T):
/// per-class (finite) or per-branch (ray) chain witnesses, the tail schema
/// for rays, and an address for every materialized point.
struct TopologyWitness {
  WitnessSource source = WitnessSource::Finite;
  Point star = 0;
  std::size_t point_count = 0;
  std::vector<ClassWitness> classes;
  std::vector<BranchWitness> branches;
  std::optional<TailSchema> tail;
  /// Sorted by point.
  std::vector<PointAddress> addresses;
  /// Ray witnesses only: display names indexed by point.
  std::vector<std::string> names;

  bool operator==(const TopologyWitness&) const = default;
};

}  // namespace compactify
