/// \file bdd_dot.hpp
/// \brief Graphviz export of BDDs: solid high edges, dashed low edges.

#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bdd.hpp"

namespace adderverify {

/// Renders one or more rooted BDDs as a DOT digraph. `var_name` maps a
/// variable to its label; by default variables print as x<i>.
inline std::string to_dot(const bdd_manager& m,
                          std::span<const std::pair<std::string, node_ref>> roots,
                          const std::function<std::string(var_id)>& var_name = {}) {
  auto name_of = [&](var_id v) {
    return var_name ? var_name(v) : "x" + std::to_string(v);
  };
  // deterministic order: depth-first from the roots as given
  std::vector<std::uint32_t> order;
  std::vector<char> seen(m.live_nodes() + 2, 0);
  std::vector<std::uint32_t> stack;
  for (const auto& [label, root] : roots) {
    if (!m.is_terminal(root) && !seen[root.id()]) {
      seen[root.id()] = 1;
      stack.push_back(root.id());
    }
    while (!stack.empty()) {
      std::uint32_t id = stack.back();
      stack.pop_back();
      order.push_back(id);
      const bdd_node& n = m.internal_nodes()[id - 2];
      for (node_ref child : {n.high, n.low}) {
        if (!m.is_terminal(child) && !seen[child.id()]) {
          seen[child.id()] = 1;
          stack.push_back(child.id());
        }
      }
    }
  }

  std::ostringstream os;
  os << "digraph bdd {\n";
  os << "  node [shape=circle];\n";
  os << "  t0 [label=\"0\", shape=box];\n";
  os << "  t1 [label=\"1\", shape=box];\n";
  auto node_name = [&](node_ref f) {
    if (f == bdd_manager::zero()) return std::string("t0");
    if (f == bdd_manager::one()) return std::string("t1");
    return "n" + std::to_string(f.id());
  };
  for (std::uint32_t id : order) {
    const bdd_node& n = m.internal_nodes()[id - 2];
    os << "  n" << id << " [label=\"" << name_of(n.var) << "\"];\n";
    os << "  n" << id << " -> " << node_name(n.high) << ";\n";
    os << "  n" << id << " -> " << node_name(n.low) << " [style=dashed];\n";
  }
  for (std::size_t k = 0; k < roots.size(); ++k) {
    os << "  r" << k << " [label=\"" << roots[k].first << "\", shape=plaintext];\n";
    os << "  r" << k << " -> " << node_name(roots[k].second) << ";\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string to_dot(const bdd_manager& m, const std::string& label, node_ref root,
                          const std::function<std::string(var_id)>& var_name = {}) {
  std::pair<std::string, node_ref> r{label, root};
  return to_dot(m, std::span<const std::pair<std::string, node_ref>>{&r, 1}, var_name);
}

} // namespace adderverify
