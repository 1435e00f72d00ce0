#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "compactify/chain.hpp"
#include "compactify/checker.hpp"
#include "compactify/forest.hpp"
#include "compactify/system_model.hpp"
#include "compactify/witness.hpp"
#include "json.hpp"

namespace compactify {

using Json = nlohmann::json;

/// An instance file holds either a finite system or a ray presentation:
///
///   {"size": 4, "map": [0, 0, 0, 1]}
///   {"ray": {"prefix": 2,
///            "branches": [{"nodes": [], "parent": {}},
///                         {"nodes": ["c"], "parent": {"c": "b1"}}]}}
///
/// Ray parents name another node of the same branch, the root "b<n>", or
/// "*" for x* (which the validator rejects).
using Instance = std::variant<SelfmapSystem, RayPresentation>;

/// Throws Error(ParseError) with a "line L, column C" or "field /path" diagnostic.
Instance parse_instance(std::string_view text);
Instance instance_from_json(const Json& j);

Json to_json(const SelfmapSystem& system);
Json to_json(const RayPresentation& ray);
Json to_json(const Instance& instance);
Json to_json(const ConditionReport& report);
Json to_json(const Partition& partition);
Json to_json(const ClassDecomposition& forest);
Json to_json(const Chain& chain);
Json to_json(const Atomization& atom);
Json to_json(const ChainWitness& witness);
Json to_json(const TopologyWitness& witness);
Json to_json(const CheckReport& report);

Partition partition_from_json(const Json& j);
TopologyWitness witness_from_json(const Json& j);

/// Parses text as JSON, mapping syntax errors to Error(ParseError) with a line number.
Json parse_json_text(std::string_view text);

}  // namespace compactify
