#include "compactify/generator.hpp"

#include <algorithm>
#include <random>

#include "compactify/error.hpp"

namespace compactify {

std::optional<Shape> parse_shape(std::string_view name) {
  if (name == "uniform") return Shape::Uniform;
  if (name == "deep-chain") return Shape::DeepChain;
  if (name == "wide-fan") return Shape::WideFan;
  return std::nullopt;
}

std::string_view to_string(Shape shape) {
  switch (shape) {
    case Shape::Uniform: return "uniform";
    case Shape::DeepChain: return "deep-chain";
    case Shape::WideFan: return "wide-fan";
  }
  return "uniform";
}

SelfmapSystem gen_system(const GeneratorConfig& config) {
  if (config.size == 0) throw Error(ErrorKind::InvalidSystem, "generator size must be positive");
  // Draws use plain modulo on mt19937_64 output so sequences are identical
  // across standard libraries (distributions are implementation-defined).
  std::mt19937_64 rng(config.seed);
  auto below = [&](std::uint64_t bound) { return static_cast<Point>(rng() % bound); };

  std::vector<Point> map(config.size, 0);
  for (std::size_t i = 1; i < config.size; ++i) {
    switch (config.shape) {
      case Shape::Uniform:
        map[i] = below(i);
        break;
      case Shape::DeepChain:
        map[i] = static_cast<Point>(i - 1) - below(std::min<std::size_t>(i, 3));
        break;
      case Shape::WideFan:
        map[i] = std::min({below(i), below(i), below(i)});
        break;
    }
  }
  return SelfmapSystem(std::move(map));
}

}  // namespace compactify
