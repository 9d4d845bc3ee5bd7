/// \file generators.hpp
/// \brief Netlist generators: half/full adder cells and the ripple-carry,
/// conditional-sum and carry-look-ahead architectures.
///
/// All three adder generators share one I/O naming contract: inputs
/// cin, a0..a{n-1}, b0..b{n-1} and outputs s0..s{n-1}, cout. Nets whose
/// function is one of the reference adder functions carry a signal_tag.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuit.hpp"

namespace adderverify {

namespace detail {

struct fa_nets {
  net_id sum, carry;
};

/// Five-gate full adder: sum = XOR(XOR(a,b),c),
/// carry = OR(AND(a,b), AND(XOR(a,b),c)).
inline fa_nets emit_full_adder(circuit& c, net_id a, net_id b, net_id cin,
                               const std::string& prefix, const std::string& sum_name,
                               const std::string& carry_name) {
  net_id axb = c.emit(gate_kind::xor2, prefix + "axb", a, b);
  net_id s = c.emit(gate_kind::xor2, sum_name, axb, cin);
  net_id g = c.emit(gate_kind::and2, prefix + "g", a, b);
  net_id t = c.emit(gate_kind::and2, prefix + "t", axb, cin);
  net_id co = c.emit(gate_kind::or2, carry_name, g, t);
  return {s, co};
}

struct adder_io {
  net_id cin;
  std::vector<net_id> a, b;
};

inline adder_io add_adder_inputs(circuit& c, std::uint32_t n) {
  adder_io io;
  io.cin = c.add_input("cin");
  for (std::uint32_t i = 0; i < n; ++i) io.a.push_back(c.add_input("a" + std::to_string(i)));
  for (std::uint32_t i = 0; i < n; ++i) io.b.push_back(c.add_input("b" + std::to_string(i)));
  return io;
}

inline void require_width(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("adder width must be at least 1");
}

} // namespace detail

/// 2-gate half adder cell; inputs a, b; outputs sum, carry.
inline circuit gen_half_adder() {
  circuit c("half_adder");
  net_id a = c.add_input("a");
  net_id b = c.add_input("b");
  net_id s = c.emit(gate_kind::xor2, "sum", a, b);
  net_id co = c.emit(gate_kind::and2, "carry", a, b);
  c.connect_output(s);
  c.connect_output(co);
  c.freeze();
  return c;
}

/// 5-gate full adder cell; inputs a, b, cin; outputs sum, carry.
inline circuit gen_full_adder() {
  circuit c("full_adder");
  net_id a = c.add_input("a");
  net_id b = c.add_input("b");
  net_id cin = c.add_input("cin");
  auto fa = detail::emit_full_adder(c, a, b, cin, "fa_", "sum", "carry");
  c.connect_output(fa.sum);
  c.connect_output(fa.carry);
  c.freeze();
  return c;
}

/// Ripple-carry adder: n full adders chained through the carry; exactly
/// 5n gates, depth linear in n.
inline circuit gen_rca(std::uint32_t n) {
  detail::require_width(n);
  circuit c("rca" + std::to_string(n));
  auto io = detail::add_adder_inputs(c, n);
  net_id carry = io.cin;
  std::vector<net_id> sums;
  for (std::uint32_t i = 0; i < n; ++i) {
    std::string si = std::to_string(i);
    net_id axb = c.emit(gate_kind::xor2, "axb" + si, io.a[i], io.b[i]);
    net_id s = c.emit(gate_kind::xor2, "s" + si, axb, carry);
    net_id g = c.emit(gate_kind::and2, "g" + si, io.a[i], io.b[i]);
    net_id t = c.emit(gate_kind::and2, "t" + si, axb, carry);
    carry = c.emit(gate_kind::or2, i + 1 == n ? "cout" : "c" + si, g, t);
    c.tag_net(axb, signal_tag::propagate(i, i));
    c.tag_net(g, signal_tag::generate(i, i));
    c.tag_net(s, signal_tag::sum(i));
    c.tag_net(carry, signal_tag::carry(i));
    sums.push_back(s);
  }
  for (net_id s : sums) c.connect_output(s);
  c.connect_output(carry);
  c.freeze();
  return c;
}

namespace detail {

/// Builder for the conditional-sum recursion. A conditional block over a
/// bit range produces both outcome vectors at once, for carry-in 0 and
/// carry-in 1; at the leaves these are a pair of full adders with the
/// carry inputs tied to CONST0 and CONST1. The spine along the least
/// significant bits keeps the true carry-in and selects each upper half
/// through one multiplexer per sum bit plus one for the carry.
struct cosa_builder {
  circuit& c;
  const adder_io& io;
  net_id zero = no_net, one = no_net;

  struct cond_nets {
    std::vector<net_id> s0, s1;
    net_id c0, c1;
  };

  std::string range_tag(std::uint32_t lo, std::uint32_t w) const {
    return std::to_string(lo) + "_" + std::to_string(lo + w - 1);
  }

  cond_nets cond(std::uint32_t lo, std::uint32_t w) {
    std::string u = "u" + range_tag(lo, w);
    if (w == 1) {
      auto f0 = emit_full_adder(c, io.a[lo], io.b[lo], zero, u + "_v0_", u + "_s_v0", u + "_c_v0");
      auto f1 = emit_full_adder(c, io.a[lo], io.b[lo], one, u + "_v1_", u + "_s_v1", u + "_c_v1");
      return {{f0.sum}, {f1.sum}, f0.carry, f1.carry};
    }
    std::uint32_t hl = (w + 1) / 2;
    cond_nets L = cond(lo, hl);
    cond_nets U = cond(lo + hl, w - hl);
    cond_nets out;
    for (int x = 0; x < 2; ++x) {
      net_id sel = x ? L.c1 : L.c0;
      auto& sv = x ? out.s1 : out.s0;
      sv = x ? L.s1 : L.s0;
      std::string v = "_v" + std::to_string(x);
      for (std::size_t k = 0; k < U.s0.size(); ++k) {
        std::string bit = std::to_string(lo + hl + k);
        sv.push_back(c.emit(gate_kind::mux, u + "_s" + bit + v, sel, U.s1[k], U.s0[k]));
      }
      (x ? out.c1 : out.c0) = c.emit(gate_kind::mux, u + "_c" + v, sel, U.c1, U.c0);
    }
    return out;
  }

  /// True-carry spine over bits [0..w); returns sum nets plus carry-out.
  std::pair<std::vector<net_id>, net_id> spine(std::uint32_t w, std::uint32_t n) {
    if (w == 1) {
      auto fa = emit_full_adder(c, io.a[0], io.b[0], io.cin, "fa0_", "s0",
                                w == n ? "cout" : "c0");
      c.tag_net(fa.sum, signal_tag::sum(0));
      c.tag_net(fa.carry, signal_tag::carry(0));
      return {{fa.sum}, fa.carry};
    }
    std::uint32_t hl = (w + 1) / 2;
    auto [sums, cmid] = spine(hl, n);
    cond_nets U = cond(hl, w - hl);
    for (std::size_t k = 0; k < U.s0.size(); ++k) {
      auto bit = static_cast<std::uint32_t>(hl + k);
      net_id s = c.emit(gate_kind::mux, "s" + std::to_string(bit), cmid, U.s1[k], U.s0[k]);
      c.tag_net(s, signal_tag::sum(bit));
      sums.push_back(s);
    }
    net_id carry = c.emit(gate_kind::mux, w == n ? "cout" : "c" + std::to_string(w - 1), cmid,
                          U.c1, U.c0);
    c.tag_net(carry, signal_tag::carry(w - 1));
    return {std::move(sums), carry};
  }
};

} // namespace detail

/// Conditional-sum adder: lower half with the true carry-in, upper half
/// precomputed for both carry values and selected by multiplexers.
/// Depth O(log n), gate count O(n log n).
inline circuit gen_cosa(std::uint32_t n) {
  detail::require_width(n);
  circuit c("cosa" + std::to_string(n));
  auto io = detail::add_adder_inputs(c, n);
  detail::cosa_builder b{c, io};
  if (n > 1) {
    b.zero = c.emit(gate_kind::const0, "zero");
    b.one = c.emit(gate_kind::const1, "one");
  }
  auto [sums, cout] = b.spine(n, n);
  for (net_id s : sums) c.connect_output(s);
  c.connect_output(cout);
  c.freeze();
  return c;
}

namespace detail {

/// Carry-look-ahead prefix machinery: Brent-Kung-shaped all-prefix tree
/// over (generate, propagate) pairs, O(n) operators and O(log n) levels.
struct cla_builder {
  circuit& c;

  struct ent {
    net_id g, p;
    std::uint32_t lo, hi;
  };

  /// (g,p) of the concatenated range: hi covers [m..j], lo covers [i..m-1].
  ent combine(const ent& hi, const ent& lo) {
    std::string r = std::to_string(hi.hi) + "_" + std::to_string(lo.lo);
    net_id t = c.emit(gate_kind::and2, "t" + r, lo.g, hi.p);
    net_id g = c.emit(gate_kind::or2, "g" + r, hi.g, t);
    net_id p = c.emit(gate_kind::and2, "p" + r, lo.p, hi.p);
    c.tag_net(g, signal_tag::generate(hi.hi, lo.lo));
    c.tag_net(p, signal_tag::propagate(hi.hi, lo.lo));
    return {g, p, lo.lo, hi.hi};
  }

  /// All-prefix: out[k] covers [xs[0].lo .. xs[k].hi].
  std::vector<ent> prefix(const std::vector<ent>& xs) {
    if (xs.size() == 1) return xs;
    bool odd = xs.size() % 2;
    std::vector<ent> halved;
    for (std::size_t k = 0; 2 * k + 1 < xs.size(); ++k)
      halved.push_back(combine(xs[2 * k + 1], xs[2 * k]));
    if (odd) halved.push_back(xs.back());
    std::vector<ent> z = prefix(halved);
    std::vector<ent> out(xs.size());
    out[0] = xs[0];
    for (std::size_t k = 0; 2 * k + 1 < xs.size(); ++k) out[2 * k + 1] = z[k];
    for (std::size_t k = 1; 2 * k < xs.size(); ++k)
      if (!(odd && 2 * k == xs.size() - 1)) out[2 * k] = combine(xs[2 * k], z[k - 1]);
    if (odd) out.back() = z.back();
    return out;
  }
};

} // namespace detail

/// Carry-look-ahead adder: per-bit propagate/generate preprocessing, a
/// Brent-Kung prefix block, the carry layer c_i = g_{i,0} + p_{i,0} cin,
/// and sums s_i = p_i XOR c_{i-1}. Gate count O(n), depth O(log n).
inline circuit gen_cla(std::uint32_t n) {
  detail::require_width(n);
  circuit c("cla" + std::to_string(n));
  auto io = detail::add_adder_inputs(c, n);
  detail::cla_builder b{c};

  std::vector<detail::cla_builder::ent> leaves;
  std::vector<net_id> p(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::string si = std::to_string(i);
    p[i] = c.emit(gate_kind::xor2, "p" + si, io.a[i], io.b[i]);
    net_id g = c.emit(gate_kind::and2, "g" + si, io.a[i], io.b[i]);
    c.tag_net(p[i], signal_tag::propagate(i, i));
    c.tag_net(g, signal_tag::generate(i, i));
    leaves.push_back({g, p[i], i, i});
  }
  std::vector<detail::cla_builder::ent> pre = b.prefix(leaves);

  std::vector<net_id> carries(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::string si = std::to_string(i);
    net_id t = c.emit(gate_kind::and2, "ct" + si, pre[i].p, io.cin);
    carries[i] = c.emit(gate_kind::or2, i + 1 == n ? "cout" : "c" + si, pre[i].g, t);
    c.tag_net(carries[i], signal_tag::carry(i));
  }
  std::vector<net_id> sums(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    net_id prev = i == 0 ? io.cin : carries[i - 1];
    sums[i] = c.emit(gate_kind::xor2, "s" + std::to_string(i), p[i], prev);
    c.tag_net(sums[i], signal_tag::sum(i));
  }
  for (net_id s : sums) c.connect_output(s);
  c.connect_output(carries[n - 1]);
  c.freeze();
  return c;
}

} // namespace adderverify
