#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "compactify/partition.hpp"
#include "compactify/types.hpp"

namespace compactify {

/// Disjoint levels X_1..X_N with maps T_n : X_n -> X_{n-1}.
///
/// Storage is zero-based: levels()[0] is X_1 and maps()[k] is T_{k+2},
/// mapping levels()[k+1] into levels()[k].
class Chain {
 public:
  /// Throws Error(InvalidChain) on empty or overlapping levels, or maps whose
  /// domain/codomain do not match the adjacent levels.
  Chain(std::vector<IndexSet> levels, std::vector<MapBetween> maps);

  /// Builds the level maps by restricting `t` to each level.
  static Chain restrict(std::vector<IndexSet> levels, const std::function<Point(Point)>& t);

  std::size_t length() const noexcept { return levels_.size(); }
  const std::vector<IndexSet>& levels() const noexcept { return levels_; }
  const IndexSet& level(std::size_t k) const { return levels_.at(k); }
  const std::vector<MapBetween>& maps() const noexcept { return maps_; }
  /// The map leaving levels()[k] (k >= 1).
  const MapBetween& map_from(std::size_t k) const { return maps_.at(k - 1); }

 private:
  std::vector<IndexSet> levels_;
  std::vector<MapBetween> maps_;
};

struct Atomization {
  std::vector<Partition> pis;
  std::vector<Partition> lambdas;

  bool operator==(const Atomization&) const = default;
};

/// Backward pass pi_N = {X_N}, pi_{n-1} = T_n pi_n; forward pass
/// lambda_1 = pi_1, lambda_{n+1} = T_{n+1}^{-1} lambda_n ^ pi_{n+1}.
Atomization atomize_chain(const Chain& chain);

/// True iff lambda_n <= pi_n, lambda_n <= T_{n+1} pi_{n+1}, and lambda_n,
/// lambda_{n-1} are T_n-related at every level. Throws Error(ShapeMismatch)
/// if the partition families do not line up with the chain's levels.
bool verify_atomization(const Chain& chain, const Atomization& atom);

}  // namespace compactify
