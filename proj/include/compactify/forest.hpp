#pragma once

#include <cstddef>
#include <vector>

#include "compactify/chain.hpp"
#include "compactify/order.hpp"
#include "compactify/system_model.hpp"
#include "compactify/witness.hpp"

namespace compactify {

enum class ClassKind { First, Second };

/// A tree of the forest: a class of x ~ y iff T^n x = T^m y != x*.
struct GrandOrbitClass {
  IndexSet members;
  ClassKind kind = ClassKind::First;
  /// First: the least z in the class with T z = x*. Second: least member.
  Point seed = 0;

  bool operator==(const GrandOrbitClass&) const = default;
};

struct ClassDecomposition {
  Point star = 0;
  /// Ordered by least member.
  std::vector<GrandOrbitClass> classes;

  bool operator==(const ClassDecomposition&) const = default;
};

/// Throws Error(ConditionFails) unless the images of T shrink to one fixed point.
ClassDecomposition decompose(const SelfmapSystem& system);

/// The chain {z}, T^{-1}z, T^{-2}z, ... (up to the first empty level) with
/// T restricted. Throws Error(NotFirstKind) for a second-kind class.
Chain first_kind_chain(const SelfmapSystem& system, const GrandOrbitClass& cls);

/// Branch B_n of a ray class: B_n^0 = {b_n}, and B_n^k the nodes k steps
/// above b_n whose path meets the ray only at b_n. Points use RayLayout numbering.
struct BranchStructure {
  std::size_t ray_index = 0;
  std::vector<IndexSet> level_sets;
  Chain chain;
};

struct BranchDecomposition {
  std::vector<BranchStructure> branches;
  TailSchema tail;
};

/// Throws Error(InvalidPresentation) for a malformed presentation.
BranchDecomposition second_kind_branches(const RayPresentation& ray);

/// Atomizes and compactifies every class chain and assigns addresses.
/// Throws Error(ConditionFails) if the system does not qualify.
TopologyWitness build_witness(const SelfmapSystem& system, const OrderPolicy& policy = {});
TopologyWitness build_witness(const RayPresentation& ray, const OrderPolicy& policy = {});

}  // namespace compactify
