// Test oracles kept independent of the code paths they check:
//  - truth tables over up to 6 variables as raw uint64 bit masks, with a
//    BDD construction route that uses only make_node (no ite),
//  - plain integer arithmetic for adder outputs.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <adderverify/adderverify.hpp>

namespace oracle {

using adderverify::adder_vars;
using adderverify::bdd_manager;
using adderverify::circuit;
using adderverify::node_ref;

// Truth-table convention: bit k of the table is f(x) where variable v
// takes bit v of k.

inline std::uint64_t tt_mask(unsigned num_vars) {
  return num_vars >= 6 ? ~0ull : (1ull << (1u << num_vars)) - 1;
}

inline std::uint64_t tt_var(unsigned v, unsigned num_vars) {
  std::uint64_t tt = 0;
  for (unsigned k = 0; k < (1u << num_vars); ++k)
    if ((k >> v) & 1) tt |= 1ull << k;
  return tt;
}

inline std::uint64_t tt_restrict(std::uint64_t tt, unsigned num_vars, unsigned v, bool value) {
  std::uint64_t out = 0;
  for (unsigned k = 0; k < (1u << num_vars); ++k) {
    unsigned src = (k & ~(1u << v)) | (value ? (1u << v) : 0u);
    if ((tt >> src) & 1) out |= 1ull << k;
  }
  return out;
}

inline std::uint64_t tt_ite(std::uint64_t f, std::uint64_t g, std::uint64_t h,
                            unsigned num_vars) {
  return ((f & g) | (~f & h)) & tt_mask(num_vars);
}

// Shannon decomposition on successive variables using make_node only;
// independent of the ite recursion it is used to check.
inline node_ref bdd_from_tt(bdd_manager& m, std::uint64_t tt, unsigned num_vars,
                            unsigned v = 0) {
  tt &= tt_mask(num_vars);
  if (tt == 0) return bdd_manager::zero();
  if (tt == tt_mask(num_vars)) return bdd_manager::one();
  node_ref lo = bdd_from_tt(m, tt_restrict(tt, num_vars, v, false), num_vars, v + 1);
  node_ref hi = bdd_from_tt(m, tt_restrict(tt, num_vars, v, true), num_vars, v + 1);
  return m.make_node(v, lo, hi);
}

inline std::uint64_t tt_of(const bdd_manager& m, node_ref f, unsigned num_vars) {
  std::uint64_t tt = 0;
  std::vector<std::uint8_t> assign(m.num_vars(), 0);
  for (unsigned k = 0; k < (1u << num_vars); ++k) {
    for (unsigned v = 0; v < num_vars; ++v) assign[v] = (k >> v) & 1;
    if (m.eval(f, std::span<const std::uint8_t>(assign))) tt |= 1ull << k;
  }
  return tt;
}

// Adder input layout used by the generators: cin, a0..a{n-1}, b0..b{n-1}.

template <typename F>
void for_each_adder_input(std::uint32_t n, F&& body) {
  std::uint32_t bits = 2 * n + 1;
  std::vector<std::uint8_t> in(bits);
  for (std::uint64_t x = 0; x < (1ull << bits); ++x) {
    for (std::uint32_t k = 0; k < bits; ++k) in[k] = (x >> k) & 1;
    body(std::span<const std::uint8_t>(in));
  }
}

inline std::vector<std::uint8_t> to_var_assignment(std::span<const std::uint8_t> inputs,
                                                   const adder_vars& vars) {
  std::vector<std::uint8_t> out(vars.var_count(), 0);
  out[vars.carry_in()] = inputs[0];
  for (std::uint32_t i = 0; i < vars.n; ++i) {
    out[vars.a(i)] = inputs[1 + i];
    out[vars.b(i)] = inputs[1 + vars.n + i];
  }
  return out;
}

// Plain-simulation equivalence with integer addition over every input
// assignment; no BDDs involved.
inline bool exhaustive_adder_check(const circuit& c, std::uint32_t n) {
  std::vector<std::uint8_t> values(c.net_count(), 0);
  bool ok = true;
  for_each_adder_input(n, [&](std::span<const std::uint8_t> in) {
    if (!ok) return;
    c.eval_nets(in, values);
    for (std::uint32_t k = 0; k <= n; ++k) {
      bool got = values[c.outputs()[k]];
      if (got != adderverify::adder_oracle_bit(in, n, k)) ok = false;
    }
  });
  return ok;
}

} // namespace oracle
