#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "compactify/system_model.hpp"
#include "compactify/witness.hpp"

namespace compactify {

/// Stable rule identifiers. The letter prefix groups rules by check stage:
/// (a) addresses and class structure, (b) chain atomizations, (c) the map on
/// atoms, (d) compactness certificates, (e) continuity at x*.
enum class Rule {
  Address,
  Structure,
  Levels,
  Shape,
  Atomization,
  Lexicographic,
  Onto,
  Order,
  Compactness,
  Continuity,
};

std::string_view rule_id(Rule rule);

struct Violation {
  std::string location;
  Rule rule = Rule::Shape;
  std::string description;
};

struct CheckReport {
  std::vector<Violation> violations;

  bool passed() const noexcept { return violations.empty(); }
  bool has(Rule rule) const;
  void add(std::string location, Rule rule, std::string description);
  void merge(const CheckReport& other);
};

/// Re-derives the class structure and level sets from the system and checks
/// the witness against them. Throws Error(ShapeMismatch) if the witness was
/// not built for a finite system of this size.
CheckReport verify_witness(const SelfmapSystem& system, const TopologyWitness& witness);

/// Same for a ray witness; includes verify_continuity_at_star.
CheckReport verify_witness(const RayPresentation& ray, const TopologyWitness& witness);

/// Finite reduction of continuity at x*: every branch B_n is certified
/// compact, and the preimage of every branch lies in B_{n-1} u B_n, so
/// preimages of co-compact neighborhoods of x* are co-compact.
CheckReport verify_continuity_at_star(const RayPresentation& ray, const TopologyWitness& witness);

/// Points of a ray system: ray points b_n by index, branch nodes by RayLayout point.
struct RayPointSet {
  std::vector<std::size_t> ray;
  std::vector<Point> nodes;

  bool operator==(const RayPointSet&) const = default;
};

/// T^{-1} of the union of the branches B_n for n in `branches`
/// (tail indices allowed), computed from the presentation.
RayPointSet ray_preimage(const RayPresentation& ray, const std::vector<std::size_t>& branches);

}  // namespace compactify
