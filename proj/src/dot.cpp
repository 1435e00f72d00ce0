#include "compactify/dot.hpp"

#include <sstream>

namespace compactify {

namespace {

std::string label(const TopologyWitness& w, Point p) {
  if (p < w.names.size()) return w.names[p];
  return std::to_string(p);
}

void emit_chain(std::ostringstream& out, const TopologyWitness& w, const ChainWitness& cw, const std::string& id) {
  for (std::size_t k = 0; k < cw.orders.size(); ++k) {
    out << "    subgraph " << id << "_level" << k << " {\n      rank=same;\n";
    for (std::size_t a = 0; a < cw.orders[k].size(); ++a) {
      out << "      subgraph cluster_" << id << "_l" << k << "_a" << a << " {\n        style=solid;\n";
      for (Point p : cw.orders[k][a].sequence) out << "        n" << p << " [label=\"" << label(w, p) << "\"];\n";
      out << "      }\n";
    }
    out << "    }\n";
  }
}

}  // namespace

std::string export_dot(const SelfmapSystem& system) {
  std::ostringstream out;
  out << "digraph selfmap {\n";
  for (Point x = 0; x < system.size(); ++x) out << "  n" << x << " [label=\"" << x << "\"];\n";
  for (Point x = 0; x < system.size(); ++x) out << "  n" << x << " -> n" << system(x) << ";\n";
  out << "}\n";
  return out.str();
}

std::string export_dot(const TopologyWitness& w) {
  std::ostringstream out;
  out << "digraph witness {\n  rankdir=BT;\n";
  out << "  n" << w.star << " [label=\"" << label(w, w.star) << "\", shape=doublecircle];\n";
  for (std::size_t c = 0; c < w.classes.size(); ++c) {
    const std::string id = "class" + std::to_string(c);
    out << "  subgraph cluster_" << id << " {\n    label=\"class " << c << "\";\n";
    emit_chain(out, w, w.classes[c].chain, id);
    out << "  }\n";
  }
  for (const BranchWitness& b : w.branches) {
    const std::string id = "branch" + std::to_string(b.ray_index);
    out << "  subgraph cluster_" << id << " {\n    label=\"B_" << b.ray_index << "\";\n";
    emit_chain(out, w, b.chain, id);
    out << "  }\n";
  }
  // Edges come from the per-level map tables; seeds and ray points go to x* or along the ray.
  auto edges = [&](const ChainWitness& cw) {
    for (const auto& level : cw.lex) {
      for (const LexEntry& e : level) out << "  n" << e.point << " -> n" << e.image << ";\n";
    }
  };
  for (const ClassWitness& c : w.classes) {
    out << "  n" << c.seed << " -> n" << w.star << ";\n";
    edges(c.chain);
  }
  for (std::size_t i = 0; i < w.branches.size(); ++i) {
    const BranchWitness& b = w.branches[i];
    edges(b.chain);
    if (!b.chain.orders.empty() && !b.chain.orders[0].empty() && i + 1 < w.branches.size()) {
      const BranchWitness& next = w.branches[i + 1];
      if (!next.chain.orders.empty() && !next.chain.orders[0].empty()) {
        out << "  n" << b.chain.orders[0][0].last << " -> n" << next.chain.orders[0][0].last << ";\n";
      }
    }
  }
  if (w.tail) {
    out << "  tail [label=\"b" << w.tail->from << ", b" << w.tail->from + 1 << ", ...\", shape=plaintext];\n";
    if (!w.branches.empty() && !w.branches.back().chain.orders.empty() &&
        !w.branches.back().chain.orders[0].empty()) {
      out << "  n" << w.branches.back().chain.orders[0][0].last << " -> tail;\n";
    }
    out << "  tail -> n" << w.star << " [style=dotted];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace compactify
