#include "compactify/partition.hpp"

#include <map>
#include <string>

#include "compactify/error.hpp"

namespace compactify {

Partition Partition::from_blocks(std::vector<IndexSet> blocks) {
  Partition p;
  for (IndexSet& b : blocks) {
    if (b.empty()) throw Error(ErrorKind::InvalidPartition, "empty block");
    b = make_index_set(std::move(b));
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const IndexSet& a, const IndexSet& b) { return a.front() < b.front(); });
  for (const IndexSet& b : blocks) p.ground_.insert(p.ground_.end(), b.begin(), b.end());
  std::sort(p.ground_.begin(), p.ground_.end());
  if (!is_index_set(p.ground_)) throw Error(ErrorKind::InvalidPartition, "blocks overlap");
  p.blocks_ = std::move(blocks);
  p.index();
  return p;
}

Partition Partition::whole(const IndexSet& ground) {
  if (ground.empty()) return Partition{};
  return from_blocks({ground});
}

Partition Partition::singletons(const IndexSet& ground) {
  std::vector<IndexSet> blocks;
  blocks.reserve(ground.size());
  for (Point p : ground) blocks.push_back({p});
  return from_blocks(std::move(blocks));
}

void Partition::index() {
  block_id_.assign(ground_.size(), 0);
  for (std::size_t id = 0; id < blocks_.size(); ++id) {
    for (Point p : blocks_[id]) {
      block_id_[std::lower_bound(ground_.begin(), ground_.end(), p) - ground_.begin()] = id;
    }
  }
}

std::size_t Partition::block_of(Point p) const {
  auto it = std::lower_bound(ground_.begin(), ground_.end(), p);
  if (it == ground_.end() || *it != p) {
    throw Error(ErrorKind::IndexOutOfRange, "point " + std::to_string(p) + " is not in the partition's ground");
  }
  return block_id_[it - ground_.begin()];
}

MapBetween::MapBetween(IndexSet domain, IndexSet codomain, std::vector<Point> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
  if (!is_index_set(domain_) || !is_index_set(codomain_)) {
    throw Error(ErrorKind::InvalidMap, "domain and codomain must be sorted sets");
  }
  if (images_.size() != domain_.size()) throw Error(ErrorKind::InvalidMap, "map is not total");
  for (Point x : domain_) {
    if (contains(codomain_, x)) {
      throw Error(ErrorKind::InvalidMap, "point " + std::to_string(x) + " is in both domain and codomain");
    }
  }
  for (Point y : images_) {
    if (!contains(codomain_, y)) {
      throw Error(ErrorKind::InvalidMap, "image " + std::to_string(y) + " is outside the codomain");
    }
  }
}

Point MapBetween::operator()(Point x) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), x);
  if (it == domain_.end() || *it != x) {
    throw Error(ErrorKind::IndexOutOfRange, "point " + std::to_string(x) + " is not in the domain");
  }
  return images_[it - domain_.begin()];
}

IndexSet MapBetween::image_of(const IndexSet& subset) const {
  std::vector<Point> out;
  out.reserve(subset.size());
  for (Point x : subset) out.push_back((*this)(x));
  return make_index_set(std::move(out));
}

IndexSet MapBetween::fiber(Point y) const {
  IndexSet out;
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (images_[i] == y) out.push_back(domain_[i]);
  }
  return out;
}

namespace {

void require_ground(const IndexSet& have, const IndexSet& want, const char* what) {
  if (have != want) throw Error(ErrorKind::GroundMismatch, what);
}

}  // namespace

bool refines(const Partition& fine, const Partition& coarse) {
  require_ground(fine.ground(), coarse.ground(), "refines: partitions have different grounds");
  for (const IndexSet& b : fine.blocks()) {
    const std::size_t target = coarse.block_of(b.front());
    for (Point p : b) {
      if (coarse.block_of(p) != target) return false;
    }
  }
  return true;
}

Partition meet(const Partition& a, const Partition& b) {
  require_ground(a.ground(), b.ground(), "meet: partitions have different grounds");
  std::vector<std::pair<std::size_t, std::size_t>> labels;
  labels.reserve(a.ground().size());
  for (Point p : a.ground()) labels.emplace_back(a.block_of(p), b.block_of(p));
  return Partition::from_labels(a.ground(), labels);
}

Partition preimage_partition(const MapBetween& t, const Partition& lambda) {
  require_ground(lambda.ground(), t.codomain(), "preimage_partition: lambda is not a partition of the codomain");
  std::vector<std::size_t> labels;
  labels.reserve(t.domain().size());
  for (Point y : t.images()) labels.push_back(lambda.block_of(y));
  return Partition::from_labels(t.domain(), labels);
}

Partition pushforward(const MapBetween& t, const Partition& pi) {
  require_ground(pi.ground(), t.domain(), "pushforward: pi is not a partition of the domain");
  const IndexSet& codomain = t.codomain();
  std::vector<std::vector<std::size_t>> hits(codomain.size());
  for (std::size_t i = 0; i < t.domain().size(); ++i) {
    const std::size_t y = std::lower_bound(codomain.begin(), codomain.end(), t.images()[i]) - codomain.begin();
    hits[y].push_back(pi.block_of(t.domain()[i]));
  }
  for (auto& h : hits) {
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end()), h.end());
  }
  return Partition::from_labels(codomain, hits);
}

bool is_t_related(const MapBetween& t, const Partition& pi, const Partition& lambda) {
  require_ground(pi.ground(), t.domain(), "is_t_related: pi is not a partition of the domain");
  require_ground(lambda.ground(), t.codomain(), "is_t_related: lambda is not a partition of the codomain");
  for (const IndexSet& c : pi.blocks()) {
    const IndexSet img = t.image_of(c);
    if (lambda.block(lambda.block_of(img.front())) != img) return false;
  }
  return true;
}

Partition relate(const MapBetween& t, const Partition& pi, const Partition& lambda) {
  if (!refines(lambda, pushforward(t, pi))) {
    throw Error(ErrorKind::PreconditionViolated, "relate: lambda does not refine T pi");
  }
  return meet(preimage_partition(t, lambda), pi);
}

}  // namespace compactify
