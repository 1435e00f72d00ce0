#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "compactify/types.hpp"

namespace compactify {

/// A finite set X = {0, ..., size-1} together with a total selfmap T.
class SelfmapSystem {
 public:
  /// Throws Error(InvalidSystem) on an empty table or an entry outside [0, size).
  explicit SelfmapSystem(std::vector<Point> map);

  std::size_t size() const noexcept { return map_.size(); }
  Point operator()(Point x) const { return map_[x]; }
  const std::vector<Point>& table() const noexcept { return map_; }

  bool operator==(const SelfmapSystem&) const = default;

 private:
  std::vector<Point> map_;
};

/// Outcome of testing whether the images T^n X shrink to a single fixed point.
struct ConditionReport {
  bool holds = false;
  std::optional<Point> fixed_point;
  /// First n with T^n X = T^{n+1} X, counting T^0 X = X.
  std::size_t stabilized_at = 0;
  IndexSet eventual_image;

  bool operator==(const ConditionReport&) const = default;
};

ConditionReport check_condition(const SelfmapSystem& system);

/// T^{-1}(targets). Throws Error(IndexOutOfRange) for targets outside X.
IndexSet preimage(const SelfmapSystem& system, const IndexSet& targets);

/// x, Tx, T^2x, ... up to (excluding) the first repeated point.
std::vector<Point> orbit(const SelfmapSystem& system, Point x);

// ---------------------------------------------------------------------------
// Ray presentations: a countable second-kind class described finitely.
//
// The ray b_0 -> b_1 -> b_2 -> ... never reaches the implicit fixed point x*.
// Branches 0..prefix-1 are explicit finite trees hanging off b_n; every
// branch n >= prefix is the bare point {b_n}.
// ---------------------------------------------------------------------------

struct RayNodeRef {
  enum class Kind { Node, Ray, Star };
  Kind kind = Kind::Star;
  /// For Node: the branch holding the referenced node.
  std::size_t branch = 0;
  /// Node: position within that branch's node list; Ray: the ray index n of b_n.
  std::size_t index = 0;

  bool operator==(const RayNodeRef&) const = default;
};

struct RayBranch {
  std::vector<std::string> nodes;
  /// parent[i] is T(nodes[i]).
  std::vector<RayNodeRef> parent;

  bool operator==(const RayBranch&) const = default;
};

struct RayPresentation {
  std::size_t prefix = 0;
  std::vector<RayBranch> branches;
  bool star_included = true;

  bool operator==(const RayPresentation&) const = default;
};

/// Throws Error(InvalidPresentation) describing the first broken rule.
void validate(const RayPresentation& ray);

/// Dense numbering of the materialized part of a valid ray presentation:
/// 0 is x*, 1..prefix are b_0..b_{prefix-1}, and branch nodes follow in
/// branch order. Tail points b_n with n >= prefix are never materialized.
class RayLayout {
 public:
  explicit RayLayout(const RayPresentation& ray);

  std::size_t prefix() const noexcept { return prefix_; }
  std::size_t point_count() const noexcept { return names_.size(); }
  static constexpr Point star() noexcept { return 0; }
  Point ray_point(std::size_t n) const;
  Point node_point(std::size_t branch, std::size_t i) const;
  bool is_ray_point(Point p) const noexcept { return p >= 1 && p <= prefix_; }

  /// T(p) within the materialized part; nullopt for b_{prefix-1}, whose
  /// image b_prefix lies in the tail.
  std::optional<Point> image(Point p) const;

  /// The branch index n with p in B_n (undefined for x*).
  std::size_t branch_of(Point p) const { return branch_of_.at(p); }
  /// Distance from p to its branch root b_n.
  std::size_t depth(Point p) const { return depth_.at(p); }
  std::size_t branch_depth(std::size_t n) const { return branch_depth_.at(n); }
  const std::string& name(Point p) const { return names_.at(p); }
  const std::vector<std::string>& names() const noexcept { return names_; }

 private:
  std::size_t prefix_;
  std::vector<std::size_t> node_offset_;
  std::vector<std::string> names_;
  std::vector<std::optional<Point>> image_;
  std::vector<std::size_t> branch_of_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> branch_depth_;
};

/// Always holds for a valid presentation; stabilized_at is reported as the
/// maximum branch depth plus the explicit prefix length. Point numbering
/// follows RayLayout, so the fixed point is 0.
ConditionReport check_condition_ray(const RayPresentation& ray);

/// Name used for b_n in files and reports.
std::string ray_point_name(std::size_t n);

}  // namespace compactify
