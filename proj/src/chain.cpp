#include "compactify/chain.hpp"

#include <string>

#include "compactify/error.hpp"

namespace compactify {

Chain::Chain(std::vector<IndexSet> levels, std::vector<MapBetween> maps)
    : levels_(std::move(levels)), maps_(std::move(maps)) {
  if (levels_.empty()) throw Error(ErrorKind::InvalidChain, "a chain needs at least one level");
  if (maps_.size() + 1 != levels_.size()) {
    throw Error(ErrorKind::InvalidChain, "a chain of " + std::to_string(levels_.size()) + " levels needs " +
                                             std::to_string(levels_.size() - 1) + " maps");
  }
  IndexSet all;
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    const IndexSet& level = levels_[k];
    if (level.empty()) throw Error(ErrorKind::InvalidChain, "level " + std::to_string(k + 1) + " is empty");
    if (!is_index_set(level)) throw Error(ErrorKind::InvalidChain, "level " + std::to_string(k + 1) + " is not a set");
    all.insert(all.end(), level.begin(), level.end());
  }
  std::sort(all.begin(), all.end());
  if (!is_index_set(all)) throw Error(ErrorKind::InvalidChain, "levels are not pairwise disjoint");
  for (std::size_t k = 0; k < maps_.size(); ++k) {
    if (maps_[k].domain() != levels_[k + 1] || maps_[k].codomain() != levels_[k]) {
      throw Error(ErrorKind::InvalidChain, "map T_" + std::to_string(k + 2) + " does not go from level " +
                                               std::to_string(k + 2) + " to level " + std::to_string(k + 1));
    }
  }
}

Chain Chain::restrict(std::vector<IndexSet> levels, const std::function<Point(Point)>& t) {
  std::vector<MapBetween> maps;
  for (std::size_t k = 1; k < levels.size(); ++k) {
    std::vector<Point> images;
    images.reserve(levels[k].size());
    for (Point x : levels[k]) images.push_back(t(x));
    try {
      maps.emplace_back(levels[k], levels[k - 1], std::move(images));
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidChain, "level " + std::to_string(k + 1) + ": " + e.what());
    }
  }
  return Chain(std::move(levels), std::move(maps));
}

Atomization atomize_chain(const Chain& chain) {
  const std::size_t n = chain.length();
  Atomization out;
  out.pis.resize(n);
  out.lambdas.resize(n);
  out.pis[n - 1] = Partition::whole(chain.level(n - 1));
  for (std::size_t k = n - 1; k >= 1; --k) out.pis[k - 1] = pushforward(chain.map_from(k), out.pis[k]);
  out.lambdas[0] = out.pis[0];
  for (std::size_t k = 1; k < n; ++k) out.lambdas[k] = relate(chain.map_from(k), out.pis[k], out.lambdas[k - 1]);
  return out;
}

bool verify_atomization(const Chain& chain, const Atomization& atom) {
  const std::size_t n = chain.length();
  if (atom.pis.size() != n || atom.lambdas.size() != n) {
    throw Error(ErrorKind::ShapeMismatch, "atomization has the wrong number of levels");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (atom.pis[k].ground() != chain.level(k) || atom.lambdas[k].ground() != chain.level(k)) {
      throw Error(ErrorKind::ShapeMismatch, "partition ground differs from level " + std::to_string(k + 1));
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!refines(atom.lambdas[k], atom.pis[k])) return false;
    if (k + 1 < n && !refines(atom.lambdas[k], pushforward(chain.map_from(k + 1), atom.pis[k + 1]))) return false;
    if (k >= 1 && !is_t_related(chain.map_from(k), atom.lambdas[k], atom.lambdas[k - 1])) return false;
  }
  return true;
}

}  // namespace compactify
