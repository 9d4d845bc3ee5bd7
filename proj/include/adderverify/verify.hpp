/// \file verify.hpp
/// \brief Equivalence checking of adder netlists against the reference
/// functions, size-bound compliance, counterexample extraction, mutation
/// checks and growth sweeps.
///
/// Equivalence is node-handle equality in one shared manager: the circuit
/// is simulated symbolically and each output's BDD is compared against
/// the reference BDD built in the same manager, which canonicity makes an
/// O(1) comparison.

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "adder_spec.hpp"
#include "bdd.hpp"
#include "circuit.hpp"
#include "generators.hpp"
#include "symsim.hpp"

namespace adderverify {

enum class arch { rca, cosa, cla };

constexpr std::string_view to_string(arch a) {
  switch (a) {
    case arch::rca: return "rca";
    case arch::cosa: return "cosa";
    case arch::cla: return "cla";
  }
  return "?";
}

inline std::optional<arch> arch_from(std::string_view s) {
  if (s == "rca") return arch::rca;
  if (s == "cosa") return arch::cosa;
  if (s == "cla") return arch::cla;
  return std::nullopt;
}

inline circuit generate_adder(arch a, std::uint32_t n) {
  switch (a) {
    case arch::rca: return gen_rca(n);
    case arch::cosa: return gen_cosa(n);
    case arch::cla: return gen_cla(n);
  }
  throw std::invalid_argument("unknown architecture");
}

struct bound_violation {
  std::string signal;
  std::string bound_kind; ///< tag string, or "ite-product" for untagged nets
  std::uint64_t measured;
  std::uint64_t bound;
};

struct output_check {
  std::string name;
  bool equivalent;
};

struct counterexample {
  std::string output;               ///< name of a differing output
  std::vector<std::uint8_t> inputs; ///< by circuit input position
  bool circuit_value;
  bool expected_value;
};

struct verification_report {
  std::string circuit_name;
  std::uint32_t n = 0;
  std::vector<output_check> outputs;
  bool equivalent = false; ///< all outputs NodeRef-equal to the reference
  std::vector<bound_violation> violations;
  std::optional<counterexample> cex;
  size_trace trace;
  std::uint64_t peak_live = 0;
  std::uint64_t total_ops = 0;
  double wall_ms = 0.0;
};

/// Assignment on which two functions of one manager differ, found by
/// walking both DAGs toward a differing terminal. Variables not steering
/// the walk default to 0. Precondition: u != v.
inline std::vector<std::uint8_t> diff_assignment(const bdd_manager& m, node_ref u, node_ref v) {
  if (u == v) throw std::invalid_argument("diff_assignment: functions are equal");
  std::vector<std::uint8_t> assign(m.num_vars(), 0);
  auto cofs = [&](node_ref f, var_id x) -> std::pair<node_ref, node_ref> {
    if (m.is_terminal(f) || m.level(f) != x) return {f, f};
    const bdd_node& nd = m.node(f);
    return {nd.low, nd.high};
  };
  while (u != v && !(m.is_terminal(u) && m.is_terminal(v))) {
    var_id x = std::min(m.level(u), m.level(v));
    auto [u0, u1] = cofs(u, x);
    auto [v0, v1] = cofs(v, x);
    if (u0 != v0) {
      u = u0;
      v = v0;
    } else {
      assign[x] = 1;
      u = u1;
      v = v1;
    }
  }
  return assign;
}

/// Checks every tagged net of the trace against its closed-form bound and
/// every untagged gate output against the generic per-step ite product
/// bound. The product counts each operand's nodes terminals included
/// (size + 2): the triple-product theorem is stated over whole graphs,
/// and internal-only factors are violated already by the XOR of two
/// projections.
inline std::vector<bound_violation> check_bounds(const circuit& c, const sim_result& sim,
                                                 const bdd_manager& m) {
  std::vector<bound_violation> out;
  auto opsz = [&](net_id n) -> std::uint64_t { return m.size(sim.net_fn[n]) + 2; };
  for (const trace_sample& s : sim.trace.samples) {
    if (auto tag = c.tag(s.net)) {
      std::uint64_t bound = 0;
      switch (tag->kind) {
        case signal_tag::semantic::sum: bound = bound_set::sum(tag->i); break;
        case signal_tag::semantic::carry: bound = bound_set::carry(tag->i); break;
        case signal_tag::semantic::propagate: bound = bound_set::propagate(tag->j, tag->i); break;
        case signal_tag::semantic::generate: bound = bound_set::generate(tag->j, tag->i); break;
      }
      if (s.bdd_size > bound)
        out.push_back({c.net_name(s.net), tag->to_string(), s.bdd_size, bound});
      continue;
    }
    const gate& g = c.gates()[c.topo_order()[s.step]];
    std::uint64_t prod = 1;
    switch (g.kind) {
      case gate_kind::and2:
      case gate_kind::or2: prod = opsz(g.in[0]) * opsz(g.in[1]) * 2; break;
      case gate_kind::xor2: prod = opsz(g.in[0]) * opsz(g.in[1]) * opsz(g.in[1]); break;
      case gate_kind::not1: prod = opsz(g.in[0]) * 4; break;
      case gate_kind::mux: prod = opsz(g.in[0]) * opsz(g.in[1]) * opsz(g.in[2]); break;
      case gate_kind::const0:
      case gate_kind::const1: continue;
    }
    if (s.bdd_size > prod)
      out.push_back({c.net_name(s.net), "ite-product", s.bdd_size, prod});
  }
  return out;
}

/// Verifies a circuit following the adder I/O naming contract against the
/// reference functions for width n.
inline verification_report verify_circuit(const circuit& c, std::uint32_t n) {
  auto t0 = std::chrono::steady_clock::now();
  adder_vars vars = adder_vars::interleaved(n);
  bdd_manager m(vars.var_count());
  adder_spec spec(m, vars);

  auto binding = adder_input_binding(c, vars, m);
  sim_result sim = simulate(c, m, binding);

  verification_report rep;
  rep.circuit_name = c.name();
  rep.n = n;

  std::vector<bool> sum_seen(n, false);
  bool cout_seen = false;
  rep.equivalent = true;
  for (net_id out : c.outputs()) {
    const std::string& name = c.net_name(out);
    node_ref expected;
    if (name == "cout") {
      expected = spec.carry_bit(n - 1);
      cout_seen = true;
    } else if (name.size() > 1 && name[0] == 's') {
      std::uint32_t i = 0;
      for (char ch : name.substr(1)) {
        if (ch < '0' || ch > '9') throw std::invalid_argument("output '" + name +
                                                              "' is not part of the adder contract");
        i = i * 10 + static_cast<std::uint32_t>(ch - '0');
      }
      if (i >= n) throw std::invalid_argument("output '" + name + "' out of range for n=" +
                                              std::to_string(n));
      expected = spec.sum_bit(i);
      sum_seen[i] = true;
    } else {
      throw std::invalid_argument("output '" + name + "' is not part of the adder contract");
    }

    bool eq = sim.net_fn[out] == expected;
    rep.outputs.push_back({name, eq});
    if (!eq) {
      rep.equivalent = false;
      if (!rep.cex) {
        auto assign = diff_assignment(m, sim.net_fn[out], expected);
        counterexample cx;
        cx.output = name;
        cx.inputs.reserve(c.inputs().size());
        for (net_id in : c.inputs()) cx.inputs.push_back(assign[*vars.find(c.net_name(in))]);
        cx.circuit_value = m.eval(sim.net_fn[out], std::span<const std::uint8_t>(assign));
        cx.expected_value = m.eval(expected, std::span<const std::uint8_t>(assign));
        rep.cex = std::move(cx);
      }
    }
  }
  for (std::uint32_t i = 0; i < n; ++i)
    if (!sum_seen[i])
      throw std::invalid_argument("circuit does not expose output s" + std::to_string(i));
  if (!cout_seen) throw std::invalid_argument("circuit does not expose output cout");

  rep.violations = check_bounds(c, sim, m);
  rep.trace = std::move(sim.trace);
  rep.peak_live = m.live_nodes();
  rep.total_ops = m.ite_invocations();
  rep.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

inline verification_report verify_adder(arch a, std::uint32_t n) {
  circuit c = generate_adder(a, n);
  return verify_circuit(c, n);
}

// -- integer-arithmetic oracle helpers ----------------------------------

/// Expected value of output bit `k` (k == n means the carry-out), where
/// the inputs follow the circuit's input ordering cin, a0.., b0... Plain
/// software ripple addition; independent of both BDDs and netlists.
inline bool adder_oracle_bit(std::span<const std::uint8_t> inputs, std::uint32_t n,
                             std::uint32_t k) {
  std::uint8_t carry = inputs[0];
  std::uint8_t s = 0;
  for (std::uint32_t i = 0; i <= std::min(k, n - 1); ++i) {
    std::uint8_t a = inputs[1 + i];
    std::uint8_t b = inputs[1 + n + i];
    s = a ^ b ^ carry;
    carry = static_cast<std::uint8_t>((a & b) | (carry & (a | b)));
  }
  return k == n ? carry : s;
}

/// True iff the plain gate-level evaluation of `c` on the counterexample
/// assignment reproduces the reported value and disagrees with integer
/// addition on the named output.
inline bool confirm_counterexample(const circuit& c, const counterexample& cx,
                                   std::uint32_t n) {
  auto outs = c.eval(cx.inputs);
  for (std::size_t k = 0; k < c.outputs().size(); ++k) {
    if (c.net_name(c.outputs()[k]) != cx.output) continue;
    std::uint32_t bit = cx.output == "cout" ? n : std::stoul(cx.output.substr(1));
    bool oracle = adder_oracle_bit(cx.inputs, n, bit);
    return outs[k] == cx.circuit_value && outs[k] != oracle &&
           cx.expected_value == oracle;
  }
  return false;
}

// -- mutation checks -----------------------------------------------------

struct gate_mutation {
  std::uint32_t gate_index;
  gate_kind from, to;
};

/// Picks a random two-input gate and a different two-input kind for it.
/// Returns nothing if the circuit has no two-input gates.
inline std::optional<gate_mutation> random_gate_mutation(const circuit& c, std::mt19937& rng) {
  std::vector<std::uint32_t> eligible;
  for (std::uint32_t gi = 0; gi < c.gate_count(); ++gi)
    if (gate_arity(c.gates()[gi].kind) == 2) eligible.push_back(gi);
  if (eligible.empty()) return std::nullopt;
  std::uint32_t gi = eligible[std::uniform_int_distribution<std::size_t>(
      0, eligible.size() - 1)(rng)];
  gate_kind from = c.gates()[gi].kind;
  std::vector<gate_kind> others;
  for (gate_kind k : {gate_kind::and2, gate_kind::or2, gate_kind::xor2})
    if (k != from) others.push_back(k);
  gate_kind to = others[std::uniform_int_distribution<std::size_t>(0, others.size() - 1)(rng)];
  return gate_mutation{gi, from, to};
}

struct mutation_check {
  gate_mutation mu;
  bool equivalent; ///< the mutated circuit still equals the reference
  bool confirmed;  ///< counterexample reproduced, or equivalence proven exhaustively
};

/// Applies one mutation and classifies it: a detected mutation must come
/// with a counterexample the plain evaluator and the integer oracle both
/// confirm; an undetected one must be proven benign by exhaustive
/// simulation (feasible only for small n).
inline mutation_check check_mutation(const circuit& base, const gate_mutation& mu,
                                     std::uint32_t n) {
  circuit mutated = base;
  mutated.set_gate_kind(mu.gate_index, mu.to);
  verification_report rep = verify_circuit(mutated, n);
  mutation_check out{mu, rep.equivalent, false};
  if (!rep.equivalent) {
    out.confirmed = rep.cex && confirm_counterexample(mutated, *rep.cex, n);
    return out;
  }
  std::uint32_t bits = 2 * n + 1;
  if (bits > 24) throw std::invalid_argument("exhaustive benign-mutation proof needs small n");
  std::vector<std::uint8_t> in(bits);
  for (std::uint64_t x = 0; x < (1ull << bits); ++x) {
    for (std::uint32_t k = 0; k < bits; ++k) in[k] = (x >> k) & 1;
    auto outs = mutated.eval(in);
    for (std::uint32_t k = 0; k <= n; ++k)
      if (bool(outs[k]) != adder_oracle_bit(in, n, k)) return out; // confirmed stays false
  }
  out.confirmed = true;
  return out;
}

// -- growth sweep ----------------------------------------------------------

struct growth_row {
  std::uint32_t n;
  std::uint64_t peak_live;
  std::uint64_t total_ops;
  double wall_ms;
  bool ok; ///< equivalent and free of bound violations
};

struct growth_table {
  arch a;
  std::vector<growth_row> rows;

  bool all_ok() const {
    for (const auto& r : rows)
      if (!r.ok) return false;
    return true;
  }

  /// Largest peak_live ratio across consecutive entries where n doubles.
  double max_peak_ratio() const {
    double worst = 0.0;
    for (std::size_t k = 1; k < rows.size(); ++k)
      if (rows[k].n == 2 * rows[k - 1].n && rows[k - 1].peak_live > 0)
        worst = std::max(worst, double(rows[k].peak_live) / double(rows[k - 1].peak_live));
    return worst;
  }

  /// Largest wall-time ratio across doublings; pairs below `min_ms` are
  /// skipped as unmeasurable.
  double max_time_ratio(double min_ms = 5.0) const {
    double worst = 0.0;
    for (std::size_t k = 1; k < rows.size(); ++k)
      if (rows[k].n == 2 * rows[k - 1].n && rows[k - 1].wall_ms >= min_ms &&
          rows[k].wall_ms >= min_ms)
        worst = std::max(worst, rows[k].wall_ms / rows[k - 1].wall_ms);
    return worst;
  }
};

/// One verify_adder run per width on an independent manager. Node and
/// operation counts are deterministic; wall time is not, so each width is
/// re-timed in rounds interleaved across the whole list and the per-width
/// minimum kept. Interleaving decorrelates scheduler-noise windows from
/// individual widths, which a blocked best-of-k cannot do.
inline growth_table growth_fit(arch a, std::span<const std::uint32_t> n_list) {
  growth_table table{a, {}};
  for (std::uint32_t n : n_list) {
    verification_report rep = verify_adder(a, n);
    table.rows.push_back(
        {n, rep.peak_live, rep.total_ops, rep.wall_ms, rep.equivalent && rep.violations.empty()});
  }
  for (int round = 0; round < 4; ++round)
    for (growth_row& r : table.rows) r.wall_ms = std::min(r.wall_ms, verify_adder(a, r.n).wall_ms);
  return table;
}

// -- machine-readable exports ----------------------------------------------

/// CSV columns: step, net, tag, size, live_nodes.
inline void write_trace_csv(std::ostream& os, const circuit& c, const size_trace& trace) {
  os << "step,net,tag,size,live_nodes\n";
  for (const trace_sample& s : trace.samples) {
    auto tag = c.tag(s.net);
    os << s.step << ',' << c.net_name(s.net) << ',' << (tag ? tag->to_string() : "-") << ','
       << s.bdd_size << ',' << s.live_nodes << '\n';
  }
}

/// CSV columns: i, sum_bound, carry_bound, measured_sum, measured_carry.
inline void write_bounds_csv(std::ostream& os, std::uint32_t n) {
  adder_vars vars = adder_vars::interleaved(n);
  bdd_manager m(vars.var_count());
  adder_spec spec(m, vars);
  os << "i,sum_bound,carry_bound,measured_sum,measured_carry\n";
  for (std::uint32_t i = 0; i < n; ++i) {
    os << i << ',' << bound_set::sum(i) << ',' << bound_set::carry(i) << ','
       << m.size(spec.sum_bit(i)) << ',' << m.size(spec.carry_bit(i)) << '\n';
  }
}

/// CSV columns: n, peak_live, total_ops, wall_ms. The wall_ms column is
/// measurement metadata and the only re-run-dependent field.
inline void write_growth_csv(std::ostream& os, const growth_table& table) {
  os << "n,peak_live,total_ops,wall_ms\n";
  for (const growth_row& r : table.rows)
    os << r.n << ',' << r.peak_live << ',' << r.total_ops << ',' << r.wall_ms << '\n';
}

inline nlohmann::json to_json(const verification_report& rep, const circuit& c,
                              bool include_trace = true) {
  nlohmann::json j;
  j["circuit"] = rep.circuit_name;
  j["n"] = rep.n;
  j["equivalent"] = rep.equivalent;
  j["outputs"] = nlohmann::json::array();
  for (const output_check& oc : rep.outputs)
    j["outputs"].push_back({{"name", oc.name}, {"equivalent", oc.equivalent}});
  j["bound_violations"] = nlohmann::json::array();
  for (const bound_violation& v : rep.violations)
    j["bound_violations"].push_back({{"signal", v.signal},
                                     {"kind", v.bound_kind},
                                     {"measured", v.measured},
                                     {"bound", v.bound}});
  if (rep.cex) {
    nlohmann::json inputs = nlohmann::json::object();
    for (std::size_t k = 0; k < c.inputs().size(); ++k)
      inputs[c.net_name(c.inputs()[k])] = int(rep.cex->inputs[k]);
    j["counterexample"] = {{"output", rep.cex->output},
                           {"inputs", inputs},
                           {"circuit_value", rep.cex->circuit_value},
                           {"expected_value", rep.cex->expected_value}};
  } else {
    j["counterexample"] = nullptr;
  }
  if (include_trace) {
    j["trace"] = nlohmann::json::array();
    for (const trace_sample& s : rep.trace.samples) {
      auto tag = c.tag(s.net);
      j["trace"].push_back({{"step", s.step},
                            {"net", c.net_name(s.net)},
                            {"tag", tag ? tag->to_string() : "-"},
                            {"size", s.bdd_size},
                            {"live_nodes", s.live_nodes}});
    }
  }
  j["metadata"] = {{"wall_ms", rep.wall_ms},
                   {"peak_live", rep.peak_live},
                   {"total_ops", rep.total_ops}};
  return j;
}

} // namespace adderverify
