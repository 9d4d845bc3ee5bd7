#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include <adderverify/adder_spec.hpp>
#include <adderverify/verify.hpp>

#include "oracle.hpp"

using namespace adderverify;

TEST_CASE("interleaved variable order") {
  adder_vars v1 = adder_vars::interleaved(1);
  CHECK(v1.carry_in() == 0);
  CHECK(v1.a(0) == 1);
  CHECK(v1.b(0) == 2);
  CHECK(v1.var_count() == 3);

  adder_vars v2 = adder_vars::interleaved(2);
  CHECK(v2.a(1) == 3);
  CHECK(v2.b(1) == 4);

  CHECK(adder_vars::interleaved(4).var_count() == 9);
  CHECK_THROWS_AS(adder_vars::interleaved(0), std::invalid_argument);
  CHECK_THROWS_AS(v1.a(1), std::out_of_range);
}

TEST_CASE("variable names round-trip") {
  adder_vars v = adder_vars::interleaved(12);
  for (var_id x = 0; x < v.var_count(); ++x) {
    auto back = v.find(v.var_name(x));
    REQUIRE(back.has_value());
    CHECK(*back == x);
  }
  CHECK_FALSE(v.find("a12").has_value());
  CHECK_FALSE(v.find("c0").has_value());
  CHECK_FALSE(v.find("a01").has_value());
}

TEST_CASE("bound formulas") {
  CHECK(bound_set::sum(3) == 16);
  CHECK(bound_set::carry(3) == 15);
  CHECK(bound_set::propagate(3, 0) == 12);
  CHECK(bound_set::generate(3, 0) == 11);
  CHECK(bound_set::propagate(2, 2) == 3);
  CHECK(bound_set::generate(2, 2) == 2);
}

TEST_CASE("reference function spot sizes") {
  adder_vars vars = adder_vars::interleaved(4);
  bdd_manager m(vars.var_count());
  adder_spec spec(m, vars);
  CHECK(m.size(spec.sum_bit(0)) == 5);   // three-variable xor
  CHECK(m.size(spec.carry_bit(0)) == 4); // majority of three
  CHECK(m.size(spec.propagate(0, 0)) == 3);
  CHECK(m.size(spec.generate(0, 0)) == 2);
  CHECK(m.size(spec.propagate(1, 0)) == 6);
  CHECK(m.size(spec.generate(1, 0)) == 5);
}

TEST_CASE("spot sizes match brute-force construction") {
  // independent route: truth table over the 5-variable universe of n=2,
  // decomposed with make_node only
  adder_vars vars = adder_vars::interleaved(2);
  bdd_manager m(vars.var_count());
  adder_spec spec(m, vars);

  auto tt_for = [&](auto&& fn) {
    std::uint64_t tt = 0;
    for (unsigned k = 0; k < 32; ++k) {
      bool a0 = (k >> vars.a(0)) & 1, b0 = (k >> vars.b(0)) & 1;
      bool a1 = (k >> vars.a(1)) & 1, b1 = (k >> vars.b(1)) & 1;
      if (fn(a0, b0, a1, b1)) tt |= 1ull << k;
    }
    return tt;
  };
  std::uint64_t p10 = tt_for([](bool a0, bool b0, bool a1, bool b1) {
    return (a0 ^ b0) && (a1 ^ b1);
  });
  std::uint64_t g10 = tt_for([](bool a0, bool b0, bool a1, bool b1) {
    return (a1 && b1) || ((a0 && b0) && (a1 ^ b1));
  });
  node_ref p = oracle::bdd_from_tt(m, p10, 5);
  node_ref g = oracle::bdd_from_tt(m, g10, 5);
  CHECK(m.size(p) == 6);
  CHECK(m.size(g) == 5);
  CHECK(p == spec.propagate(1, 0)); // canonicity ties the routes together
  CHECK(g == spec.generate(1, 0));
}

TEST_CASE("reference evaluations") {
  adder_vars vars = adder_vars::interleaved(2);
  bdd_manager m(vars.var_count());
  adder_spec spec(m, vars);
  std::unordered_map<var_id, bool> e1{{vars.carry_in(), true}, {vars.a(0), true}, {vars.b(0), false}};
  CHECK(m.eval(spec.carry_bit(0), e1)); // 1+0+1 carries
  std::unordered_map<var_id, bool> e2{{vars.carry_in(), false}, {vars.a(0), true}, {vars.b(0), true}};
  CHECK_FALSE(m.eval(spec.sum_bit(0), e2)); // 1+1+0 has sum bit 0
  CHECK_THROWS_AS(spec.sum_bit(2), std::out_of_range);
}

TEST_CASE("sum and carry bounds hold through i = 63") {
  std::uint32_t n = 64;
  adder_vars vars = adder_vars::interleaved(n);
  bdd_manager m(vars.var_count());
  adder_spec spec(m, vars);
  for (std::uint32_t i = 0; i < n; ++i) {
    CHECK(m.size(spec.sum_bit(i)) <= bound_set::sum(i));
    CHECK(m.size(spec.carry_bit(i)) <= bound_set::carry(i));
  }
}

TEST_CASE("propagate and generate bounds across all ranges") {
  std::uint32_t n = 16;
  adder_vars vars = adder_vars::interleaved(n);
  bdd_manager m(vars.var_count());
  adder_spec spec(m, vars);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i; j < n; ++j) {
      CHECK(m.size(spec.propagate(j, i)) <= bound_set::propagate(j, i));
      CHECK(m.size(spec.generate(j, i)) <= bound_set::generate(j, i));
    }
    // degenerate single-bit ranges pin to exact sizes
    CHECK(m.size(spec.propagate(i, i)) == 3);
    CHECK(m.size(spec.generate(i, i)) == 2);
  }
}

TEST_CASE("split point does not influence the result") {
  adder_vars vars = adder_vars::interleaved(6);
  bdd_manager m(vars.var_count());
  adder_spec spec(m, vars);
  node_ref g_default = spec.generate(3, 0);
  CHECK(spec.generate(3, 0, 0) == g_default);
  CHECK(spec.generate(3, 0, 2) == g_default);
  node_ref p_default = spec.propagate(3, 0);
  CHECK(spec.propagate(3, 0, 0) == p_default);
  CHECK(spec.propagate(3, 0, 1) == p_default);
  CHECK_THROWS_AS(spec.generate(3, 0, 3), std::out_of_range);
}

TEST_CASE("prefix carries equal ripple carries") {
  std::uint32_t n = 16;
  adder_vars vars = adder_vars::interleaved(n);
  bdd_manager m(vars.var_count());
  adder_spec spec(m, vars);
  for (std::uint32_t i = 0; i < n; ++i) CHECK(spec.carry_from_pg(i) == spec.carry_bit(i));
}

TEST_CASE("composing the carry cell reproduces the next carry") {
  adder_vars vars = adder_vars::interleaved(3);
  bdd_manager m(vars.var_count());
  adder_spec spec(m, vars);
  // majority cell over (cin, a2, b2), then substitute c1 for cin
  node_ref va = m.var(vars.a(2)), vb = m.var(vars.b(2)), vc = m.var(vars.carry_in());
  node_ref cell = m.apply_or(m.apply_and(va, vb), m.apply_and(vc, m.apply_or(va, vb)));
  CHECK(m.compose(cell, vars.carry_in(), spec.carry_bit(1)) == spec.carry_bit(2));
}

TEST_CASE("exhaustive arithmetic soundness") {
  for (std::uint32_t n : {1u, 2u, 3u, 4u, 5u, 8u}) {
    adder_vars vars = adder_vars::interleaved(n);
    bdd_manager m(vars.var_count());
    adder_spec spec(m, vars);
    std::vector<node_ref> outs;
    for (std::uint32_t i = 0; i < n; ++i) outs.push_back(spec.sum_bit(i));
    outs.push_back(spec.carry_bit(n - 1));
    bool ok = true;
    oracle::for_each_adder_input(n, [&](std::span<const std::uint8_t> in) {
      if (!ok) return;
      auto assign = oracle::to_var_assignment(in, vars);
      for (std::uint32_t k = 0; k <= n; ++k)
        if (m.eval(outs[k], std::span<const std::uint8_t>(assign)) !=
            adder_oracle_bit(in, n, k))
          ok = false;
    });
    CHECK(ok);
  }
}

TEST_CASE("bounds table") {
  std::ostringstream os;
  write_bounds_csv(os, 4);
  std::string csv = os.str();
  CHECK(csv.starts_with("i,sum_bound,carry_bound,measured_sum,measured_carry\n"));
  CHECK(csv.find("\n3,16,15,") != std::string::npos);
  CHECK(csv.find("\n0,7,6,5,4\n") != std::string::npos);
}

TEST_CASE("pool totals grow quadratically when every output is kept") {
  // Each sum and carry BDD is linear in its own index, but distinct bit
  // positions share almost nothing, so the multi-rooted total over all
  // outputs is quadratic: doubling ratios approach 4 from below.
  std::vector<std::uint64_t> totals;
  for (std::uint32_t n : {8u, 16u, 32u, 64u, 128u}) {
    adder_vars vars = adder_vars::interleaved(n);
    bdd_manager m(vars.var_count());
    adder_spec spec(m, vars);
    for (std::uint32_t i = 0; i < n; ++i) spec.sum_bit(i);
    spec.carry_bit(n - 1);
    totals.push_back(m.live_nodes());
  }
  for (std::size_t k = 1; k < totals.size(); ++k) {
    double ratio = double(totals[k]) / double(totals[k - 1]);
    CHECK(ratio > 3.0);  // genuinely quadratic, not linear
    CHECK(ratio <= 4.05);
  }
}
