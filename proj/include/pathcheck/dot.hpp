#pragma once

#include <pathcheck/circuit.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace pathcheck {

namespace detail {

inline void dot_body(std::string &out, const TransducerCircuit &t, std::string_view prefix,
                     std::string_view indent) {
  const Circuit &c = t.circuit;
  std::vector<std::string> role(c.size());
  for (std::size_t i = 0; i < t.inputs.size(); ++i)
    role[t.inputs[i]] += " in" + std::to_string(i);
  for (std::size_t i = 0; i < t.outputs.size(); ++i)
    role[t.outputs[i]] += " out" + std::to_string(i);
  auto name = [&](GateId g) { return std::string(prefix) + "g" + std::to_string(g); };

  for (GateId g = 0; g < c.size(); ++g) {
    out += indent;
    out += name(g) + " [label=\"" + kind_name(c[g]) + "\", xlabel=\"" + std::to_string(g) +
           role[g] + "\"];\n";
  }
  for (GateId g = 0; g < c.size(); ++g) {
    const Gate &gate = c[g];
    if (gate.arity() >= 1)
      out += std::string(indent) + name(g) + " -> " + name(gate.lhs) + ";\n";
    if (gate.arity() == 2)
      out += std::string(indent) + name(g) + " -> " + name(gate.rhs) + ";\n";
  }
  for (const auto *group : {&t.inputs, &t.outputs}) {
    if (group->empty())
      continue;
    out += std::string(indent) + "{ rank=same;";
    for (GateId g : *group)
      out += " " + name(g) + ";";
    out += " }\n";
  }
}

} // namespace detail

/// Graphviz rendering. Edges run from a gate to the gates it depends on;
/// inputs and outputs are each kept on one rank in interface order.
inline std::string to_dot(const TransducerCircuit &t, std::string_view graph = "circuit") {
  std::string out = "digraph \"" + std::string(graph) + "\" {\n";
  out += "  node [shape=circle];\n";
  detail::dot_body(out, t, "", "  ");
  out += "}\n";
  return out;
}

inline std::string to_dot(const Circuit &c, std::string_view graph = "circuit") {
  return to_dot(TransducerCircuit{c, {}, {}}, graph);
}

/// Several labeled circuits in one digraph, one cluster each.
inline std::string to_dot(const std::vector<std::pair<std::string, TransducerCircuit>> &parts,
                          std::string_view graph) {
  std::string out = "digraph \"" + std::string(graph) + "\" {\n";
  out += "  node [shape=circle];\n";
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const std::string prefix = "c" + std::to_string(k) + "_";
    out += "  subgraph cluster_" + std::to_string(k) + " {\n";
    out += "    label=\"" + parts[k].first + "\";\n";
    detail::dot_body(out, parts[k].second, prefix, "    ");
    out += "  }\n";
  }
  out += "}\n";
  return out;
}

} // namespace pathcheck
