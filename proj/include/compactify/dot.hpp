#pragma once

#include <string>

#include "compactify/system_model.hpp"
#include "compactify/witness.hpp"

namespace compactify {

/// Functional graph of T, one edge x -> Tx per point, in point order.
std::string export_dot(const SelfmapSystem& system);

/// Forest view of a witness: one cluster per class or branch, one ranked row
/// per chain level, and a box around every atom.
std::string export_dot(const TopologyWitness& witness);

}  // namespace compactify
