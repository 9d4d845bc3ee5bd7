/// \file circuit.hpp
/// \brief Gate-level combinational netlists.
///
/// A circuit is a list of named nets, each driven by exactly one source
/// (primary input or gate output), plus ordered input and output lists.
/// freeze() validates the structure and fixes a topological order; after
/// that the circuit is immutable apart from same-arity gate-kind swaps
/// used by mutation testing.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace adderverify {

enum class gate_kind : std::uint8_t { and2, or2, xor2, not1, mux, const0, const1 };

constexpr unsigned gate_arity(gate_kind k) {
  switch (k) {
    case gate_kind::and2:
    case gate_kind::or2:
    case gate_kind::xor2: return 2;
    case gate_kind::not1: return 1;
    case gate_kind::mux: return 3;
    case gate_kind::const0:
    case gate_kind::const1: return 0;
  }
  return 0;
}

constexpr std::string_view gate_kind_name(gate_kind k) {
  switch (k) {
    case gate_kind::and2: return "AND";
    case gate_kind::or2: return "OR";
    case gate_kind::xor2: return "XOR";
    case gate_kind::not1: return "NOT";
    case gate_kind::mux: return "MUX";
    case gate_kind::const0: return "CONST0";
    case gate_kind::const1: return "CONST1";
  }
  return "?";
}

inline std::optional<gate_kind> gate_kind_from(std::string_view s) {
  if (s == "AND") return gate_kind::and2;
  if (s == "OR") return gate_kind::or2;
  if (s == "XOR") return gate_kind::xor2;
  if (s == "NOT") return gate_kind::not1;
  if (s == "MUX") return gate_kind::mux;
  if (s == "CONST0") return gate_kind::const0;
  if (s == "CONST1") return gate_kind::const1;
  return std::nullopt;
}

using net_id = std::uint32_t;
inline constexpr net_id no_net = 0xffffffffu;

/// MUX input order is (select, then, else): out = select ? then : else.
struct gate {
  gate_kind kind;
  std::array<net_id, 3> in{no_net, no_net, no_net};
  net_id out = no_net;
};

/// Semantic label a generator attaches to a net whose function is one of
/// the reference adder functions; bound checking keys off these.
struct signal_tag {
  enum class semantic : std::uint8_t { sum, carry, propagate, generate };
  semantic kind;
  std::uint32_t i = 0; ///< bit index (sum/carry) or range low (p/g)
  std::uint32_t j = 0; ///< range high for p/g; unused otherwise

  static signal_tag sum(std::uint32_t i) { return {semantic::sum, i, i}; }
  static signal_tag carry(std::uint32_t i) { return {semantic::carry, i, i}; }
  static signal_tag propagate(std::uint32_t j, std::uint32_t i) {
    return {semantic::propagate, i, j};
  }
  static signal_tag generate(std::uint32_t j, std::uint32_t i) {
    return {semantic::generate, i, j};
  }

  std::string to_string() const {
    switch (kind) {
      case semantic::sum: return "sum:" + std::to_string(i);
      case semantic::carry: return "carry:" + std::to_string(i);
      case semantic::propagate: return "p:" + std::to_string(j) + ":" + std::to_string(i);
      case semantic::generate: return "g:" + std::to_string(j) + ":" + std::to_string(i);
    }
    return "?";
  }
};

class circuit_error : public std::runtime_error {
public:
  explicit circuit_error(const std::string& msg,
                         std::optional<std::uint32_t> gate_index = std::nullopt)
      : std::runtime_error(msg), gate_index_(gate_index) {}
  std::optional<std::uint32_t> gate_index() const { return gate_index_; }

private:
  std::optional<std::uint32_t> gate_index_;
};

inline bool valid_net_name(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
  if (!head(s[0])) return false;
  for (char c : s.substr(1))
    if (!tail(c)) return false;
  return true;
}

class circuit {
public:
  explicit circuit(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  // -- construction ---------------------------------------------------

  net_id add_input(std::string name) {
    net_id id = new_net(std::move(name));
    driver_.push_back(driver_input);
    inputs_.push_back(id);
    return id;
  }

  /// Declares a net whose driver arrives later (netlist forward refs).
  net_id add_net(std::string name) {
    net_id id = new_net(std::move(name));
    driver_.push_back(driver_none);
    return id;
  }

  /// Creates a fresh net and the gate driving it.
  net_id emit(gate_kind k, std::string out_name, net_id i0 = no_net, net_id i1 = no_net,
              net_id i2 = no_net) {
    net_id out = add_net(std::move(out_name));
    emit_to(out, k, i0, i1, i2);
    return out;
  }

  /// Attaches a driving gate to a previously declared net.
  void emit_to(net_id out, gate_kind k, net_id i0 = no_net, net_id i1 = no_net,
               net_id i2 = no_net) {
    require_unfrozen();
    if (out >= net_count()) throw circuit_error("emit_to: unknown net id");
    if (driver_[out] != driver_none)
      throw circuit_error("duplicate driver for net '" + net_names_[out] + "'");
    gate g{k, {i0, i1, i2}, out};
    unsigned want = gate_arity(k);
    for (unsigned s = 0; s < 3; ++s) {
      bool used = s < want;
      if (used != (g.in[s] != no_net))
        throw circuit_error(std::string(gate_kind_name(k)) + " expects " +
                            std::to_string(want) + " inputs");
      if (used && g.in[s] >= net_count()) throw circuit_error("gate input references unknown net");
    }
    driver_[out] = static_cast<std::int64_t>(gates_.size());
    gates_.push_back(g);
  }

  void connect_output(net_id n) {
    require_unfrozen();
    if (n >= net_count()) throw circuit_error("connect_output: unknown net id");
    outputs_.push_back(n);
  }

  void tag_net(net_id n, signal_tag t) {
    if (n >= net_count()) throw circuit_error("tag_net: unknown net id");
    tags_resize();
    tags_[n] = t;
  }

  /// Swaps the kind of one gate; arity must be preserved, so topology
  /// and a previously computed topological order stay valid.
  void set_gate_kind(std::uint32_t gate_index, gate_kind k) {
    if (gate_index >= gates_.size()) throw circuit_error("set_gate_kind: no such gate");
    if (gate_arity(gates_[gate_index].kind) != gate_arity(k))
      throw circuit_error("set_gate_kind: arity mismatch");
    gates_[gate_index].kind = k;
  }

  // -- access ----------------------------------------------------------

  std::size_t net_count() const { return net_names_.size(); }
  const std::string& net_name(net_id n) const { return net_names_[n]; }
  std::optional<net_id> find_net(std::string_view name) const {
    auto it = net_by_name_.find(std::string(name));
    if (it == net_by_name_.end()) return std::nullopt;
    return it->second;
  }
  std::span<const net_id> inputs() const { return inputs_; }
  std::span<const net_id> outputs() const { return outputs_; }
  std::span<const gate> gates() const { return gates_; }
  std::size_t gate_count() const { return gates_.size(); }
  std::optional<signal_tag> tag(net_id n) const {
    if (n >= tags_.size() || !tags_[n].has_value()) return std::nullopt;
    return tags_[n];
  }
  /// Index of the driving gate, or nullopt for primary inputs.
  std::optional<std::uint32_t> driver_gate(net_id n) const {
    if (driver_[n] < 0) return std::nullopt;
    return static_cast<std::uint32_t>(driver_[n]);
  }
  bool is_input(net_id n) const { return driver_[n] == driver_input; }

  // -- structure -------------------------------------------------------

  /// Validates the netlist (all nets driven, acyclic) and fixes the
  /// topological gate order. Idempotent.
  void freeze() {
    if (frozen_) return;
    for (net_id n = 0; n < net_count(); ++n)
      if (driver_[n] == driver_none)
        throw circuit_error("undriven net '" + net_names_[n] + "'");

    // Kahn's algorithm over gates
    std::vector<std::uint32_t> pending(gates_.size(), 0);
    std::vector<std::vector<std::uint32_t>> readers(net_count());
    for (std::uint32_t gi = 0; gi < gates_.size(); ++gi) {
      for (unsigned s = 0; s < gate_arity(gates_[gi].kind); ++s) {
        net_id in = gates_[gi].in[s];
        if (driver_[in] >= 0) {
          ++pending[gi];
          readers[in].push_back(gi);
        }
      }
    }
    topo_.clear();
    topo_.reserve(gates_.size());
    std::vector<std::uint32_t> queue;
    for (std::uint32_t gi = 0; gi < gates_.size(); ++gi)
      if (pending[gi] == 0) queue.push_back(gi);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::uint32_t gi = queue[head];
      topo_.push_back(gi);
      for (std::uint32_t r : readers[gates_[gi].out])
        if (--pending[r] == 0) queue.push_back(r);
    }
    if (topo_.size() != gates_.size()) {
      for (std::uint32_t gi = 0; gi < gates_.size(); ++gi)
        if (pending[gi] != 0)
          throw circuit_error("combinational cycle through net '" +
                                  net_names_[gates_[gi].out] + "'",
                              gi);
    }
    frozen_ = true;
  }

  bool frozen() const { return frozen_; }

  std::span<const std::uint32_t> topo_order() const {
    require_frozen();
    return topo_;
  }

  /// Longest input-to-output path, counted in gates.
  std::uint32_t depth() const {
    require_frozen();
    std::vector<std::uint32_t> d(net_count(), 0);
    for (std::uint32_t gi : topo_) {
      const gate& g = gates_[gi];
      std::uint32_t m = 0;
      for (unsigned s = 0; s < gate_arity(g.kind); ++s) m = std::max(m, d[g.in[s]]);
      d[g.out] = m + 1;
    }
    std::uint32_t out = 0;
    for (net_id n : outputs_) out = std::max(out, d[n]);
    return out;
  }

  // -- plain Boolean evaluation -----------------------------------------

  /// Evaluates every net; `values` must have net_count() entries.
  void eval_nets(std::span<const std::uint8_t> input_values,
                 std::span<std::uint8_t> values) const {
    require_frozen();
    if (input_values.size() != inputs_.size())
      throw std::invalid_argument("eval: wrong number of input values");
    for (std::size_t k = 0; k < inputs_.size(); ++k) values[inputs_[k]] = input_values[k];
    for (std::uint32_t gi : topo_) {
      const gate& g = gates_[gi];
      std::uint8_t r = 0;
      switch (g.kind) {
        case gate_kind::and2: r = values[g.in[0]] & values[g.in[1]]; break;
        case gate_kind::or2: r = values[g.in[0]] | values[g.in[1]]; break;
        case gate_kind::xor2: r = values[g.in[0]] ^ values[g.in[1]]; break;
        case gate_kind::not1: r = values[g.in[0]] ^ 1u; break;
        case gate_kind::mux: r = values[g.in[0]] ? values[g.in[1]] : values[g.in[2]]; break;
        case gate_kind::const0: r = 0; break;
        case gate_kind::const1: r = 1; break;
      }
      values[g.out] = r;
    }
  }

  std::vector<std::uint8_t> eval(std::span<const std::uint8_t> input_values) const {
    std::vector<std::uint8_t> values(net_count(), 0);
    eval_nets(input_values, values);
    std::vector<std::uint8_t> out(outputs_.size());
    for (std::size_t k = 0; k < outputs_.size(); ++k) out[k] = values[outputs_[k]];
    return out;
  }

private:
  static constexpr std::int64_t driver_input = -1;
  static constexpr std::int64_t driver_none = -2;

  net_id new_net(std::string name) {
    require_unfrozen();
    if (!valid_net_name(name)) throw circuit_error("invalid net name '" + name + "'");
    if (net_by_name_.contains(name)) throw circuit_error("duplicate net name '" + name + "'");
    auto id = static_cast<net_id>(net_names_.size());
    net_by_name_.emplace(name, id);
    net_names_.push_back(std::move(name));
    return id;
  }

  void tags_resize() {
    if (tags_.size() < net_count()) tags_.resize(net_count());
  }
  void require_frozen() const {
    if (!frozen_) throw circuit_error("circuit '" + name_ + "' is not frozen");
  }
  void require_unfrozen() const {
    if (frozen_) throw circuit_error("circuit '" + name_ + "' is frozen");
  }

  std::string name_;
  std::vector<std::string> net_names_;
  std::unordered_map<std::string, net_id> net_by_name_;
  std::vector<net_id> inputs_;
  std::vector<gate> gates_;
  std::vector<net_id> outputs_;
  std::vector<std::optional<signal_tag>> tags_;
  std::vector<std::int64_t> driver_;
  std::vector<std::uint32_t> topo_;
  bool frozen_ = false;
};

/// Same gates, same topology, same names; tags and circuit names are not
/// part of the structural identity.
inline bool structurally_equal(const circuit& x, const circuit& y) {
  auto names = [](const circuit& c, std::span<const net_id> ids) {
    std::vector<std::string> v;
    v.reserve(ids.size());
    for (net_id n : ids) v.push_back(c.net_name(n));
    return v;
  };
  if (names(x, x.inputs()) != names(y, y.inputs())) return false;
  if (names(x, x.outputs()) != names(y, y.outputs())) return false;
  if (x.gate_count() != y.gate_count()) return false;
  for (std::size_t k = 0; k < x.gate_count(); ++k) {
    const gate& gx = x.gates()[k];
    const gate& gy = y.gates()[k];
    if (gx.kind != gy.kind) return false;
    if (x.net_name(gx.out) != y.net_name(gy.out)) return false;
    for (unsigned s = 0; s < gate_arity(gx.kind); ++s)
      if (x.net_name(gx.in[s]) != y.net_name(gy.in[s])) return false;
  }
  return true;
}

} // namespace adderverify
