#pragma once

#include <cstddef>
#include <vector>

#include "compactify/types.hpp"

namespace compactify {

/// A partition of a finite ground set into nonempty, pairwise disjoint blocks.
///
/// Blocks are kept sorted internally and ordered by their minimum element, so
/// two partitions of the same ground with the same blocks compare equal and
/// serialize identically.
class Partition {
 public:
  Partition() = default;

  /// Throws Error(InvalidPartition) on empty or overlapping blocks.
  static Partition from_blocks(std::vector<IndexSet> blocks);
  /// Groups ground[i] by labels[i]; equal labels share a block.
  template <typename Label>
  static Partition from_labels(const IndexSet& ground, const std::vector<Label>& labels);
  /// The one-block partition {ground} (no blocks if ground is empty).
  static Partition whole(const IndexSet& ground);
  static Partition singletons(const IndexSet& ground);

  const IndexSet& ground() const noexcept { return ground_; }
  const std::vector<IndexSet>& blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  const IndexSet& block(std::size_t id) const { return blocks_.at(id); }

  /// Block id holding p. Throws Error(IndexOutOfRange) if p is not in the ground.
  std::size_t block_of(Point p) const;
  bool has_point(Point p) const { return contains(ground_, p); }

  bool operator==(const Partition& other) const { return blocks_ == other.blocks_; }

 private:
  void index();

  IndexSet ground_;
  std::vector<IndexSet> blocks_;
  std::vector<std::size_t> block_id_;  // parallel to ground_
};

/// A total map between two disjoint finite sets.
class MapBetween {
 public:
  MapBetween() = default;
  /// images[i] is the image of domain[i]. Throws Error(InvalidMap) unless the
  /// domain and codomain are disjoint index sets and every image lies in the codomain.
  MapBetween(IndexSet domain, IndexSet codomain, std::vector<Point> images);

  const IndexSet& domain() const noexcept { return domain_; }
  const IndexSet& codomain() const noexcept { return codomain_; }
  const std::vector<Point>& images() const noexcept { return images_; }
  Point operator()(Point x) const;

  /// T(subset), sorted.
  IndexSet image_of(const IndexSet& subset) const;
  /// T^{-1}y restricted to the domain, sorted.
  IndexSet fiber(Point y) const;

 private:
  IndexSet domain_;
  IndexSet codomain_;
  std::vector<Point> images_;
};

/// fine <= coarse. Throws Error(GroundMismatch) if the grounds differ.
bool refines(const Partition& fine, const Partition& coarse);

/// Common refinement: all nonempty pairwise block intersections.
Partition meet(const Partition& a, const Partition& b);

/// T^{-1}lambda on the domain; empty preimages are dropped.
Partition preimage_partition(const MapBetween& t, const Partition& lambda);

/// T pi on the codomain: y1 ~ y2 iff the sets of pi-blocks met by their
/// fibers coincide. Points outside the image share the empty hit-set block.
Partition pushforward(const MapBetween& t, const Partition& pi);

/// Every block of pi is mapped onto some block of lambda.
bool is_t_related(const MapBetween& t, const Partition& pi, const Partition& lambda);

/// T^{-1}lambda ^ pi. Requires lambda <= T pi; throws
/// Error(PreconditionViolated) otherwise. The result is T-related to lambda.
Partition relate(const MapBetween& t, const Partition& pi, const Partition& lambda);

// --- template implementation ------------------------------------------------

template <typename Label>
Partition Partition::from_labels(const IndexSet& ground, const std::vector<Label>& labels) {
  // Blocks are discovered in ground order, which is already min-element order.
  std::vector<std::size_t> order(ground.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
  std::vector<IndexSet> blocks;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || labels[order[k - 1]] < labels[order[k]]) blocks.emplace_back();
    blocks.back().push_back(ground[order[k]]);
  }
  return from_blocks(std::move(blocks));
}

}  // namespace compactify
