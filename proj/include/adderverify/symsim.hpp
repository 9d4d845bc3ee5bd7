/// \file symsim.hpp
/// \brief Symbolic simulation: one BDD per net, gates applied in
/// topological order through ite.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "adder_spec.hpp"
#include "bdd.hpp"
#include "circuit.hpp"

namespace adderverify {

struct trace_sample {
  std::uint32_t step;      ///< position in the topological order
  net_id net;              ///< the gate's output net
  std::uint64_t bdd_size;  ///< internal nodes of that net's BDD
  std::uint64_t live_nodes;///< manager pool size after the step
};

struct size_trace {
  std::vector<trace_sample> samples;
  std::uint64_t peak_live = 0;
};

struct sim_result {
  std::vector<node_ref> net_fn; ///< indexed by net id
  size_trace trace;
};

/// Binds each circuit input net to the projection of its adder variable,
/// matching by name (cin, a0..a{n-1}, b0..b{n-1}).
inline std::vector<node_ref> adder_input_binding(const circuit& c, const adder_vars& vars,
                                                 bdd_manager& m) {
  if (c.inputs().size() != vars.var_count())
    throw std::invalid_argument("adder of width " + std::to_string(vars.n) + " expects " +
                                std::to_string(vars.var_count()) + " inputs, circuit has " +
                                std::to_string(c.inputs().size()));
  std::vector<node_ref> binding;
  binding.reserve(c.inputs().size());
  for (net_id in : c.inputs()) {
    auto v = vars.find(c.net_name(in));
    if (!v)
      throw std::invalid_argument("circuit input '" + c.net_name(in) +
                                  "' does not name an adder variable");
    binding.push_back(m.var(*v));
  }
  return binding;
}

/// Traverses the circuit in topological order and builds the canonical
/// BDD of every net, recording size and pool occupancy after each gate.
inline sim_result simulate(const circuit& c, bdd_manager& m,
                           std::span<const node_ref> input_fn) {
  if (!c.frozen()) throw std::invalid_argument("simulate: circuit must be frozen");
  if (input_fn.size() != c.inputs().size())
    throw std::invalid_argument("simulate: wrong number of input functions");

  sim_result res;
  res.net_fn.assign(c.net_count(), bdd_manager::zero());
  for (std::size_t k = 0; k < input_fn.size(); ++k) res.net_fn[c.inputs()[k]] = input_fn[k];

  res.trace.samples.reserve(c.gate_count());
  res.trace.peak_live = m.live_nodes();
  std::uint32_t step = 0;
  for (std::uint32_t gi : c.topo_order()) {
    const gate& g = c.gates()[gi];
    const auto& fn = res.net_fn;
    node_ref r;
    switch (g.kind) {
      case gate_kind::and2: r = m.apply_and(fn[g.in[0]], fn[g.in[1]]); break;
      case gate_kind::or2: r = m.apply_or(fn[g.in[0]], fn[g.in[1]]); break;
      case gate_kind::xor2: r = m.apply_xor(fn[g.in[0]], fn[g.in[1]]); break;
      case gate_kind::not1: r = m.apply_not(fn[g.in[0]]); break;
      case gate_kind::mux: r = m.ite(fn[g.in[0]], fn[g.in[1]], fn[g.in[2]]); break;
      case gate_kind::const0: r = bdd_manager::zero(); break;
      case gate_kind::const1: r = bdd_manager::one(); break;
    }
    res.net_fn[g.out] = r;
    std::uint64_t live = m.live_nodes();
    res.trace.samples.push_back({step++, g.out, m.size(r), live});
    if (live > res.trace.peak_live) res.trace.peak_live = live;
  }
  return res;
}

} // namespace adderverify
