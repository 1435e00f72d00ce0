#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "compactify/system_model.hpp"

namespace compactify {

/// How a point picks its image among the earlier points.
enum class Shape {
  Uniform,    // uniform over [0, i)
  DeepChain,  // one of the last few points: long, thin trees
  WideFan,    // skewed towards 0: short, bushy trees
};

std::optional<Shape> parse_shape(std::string_view name);
std::string_view to_string(Shape shape);

struct GeneratorConfig {
  std::size_t size = 1;
  std::uint64_t seed = 0;
  Shape shape = Shape::Uniform;
};

/// Point 0 is fixed and every i >= 1 maps into [0, i), so the only cycle is
/// the self-loop at 0. Identical configs give identical systems.
SelfmapSystem gen_system(const GeneratorConfig& config);

}  // namespace compactify
