#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <adderverify/adderverify.hpp>

#include "oracle.hpp"

using namespace adderverify;

TEST_CASE("single and gate") {
  circuit c("and1");
  net_id x = c.add_input("x");
  net_id y = c.add_input("y");
  c.connect_output(c.emit(gate_kind::and2, "z", x, y));
  c.freeze();

  bdd_manager m(2);
  std::vector<node_ref> binding{m.var(0), m.var(1)};
  sim_result sim = simulate(c, m, binding);
  CHECK(sim.net_fn[c.outputs()[0]] == m.apply_and(m.var(0), m.var(1)));
  CHECK(sim.trace.samples.size() == 1);
}

TEST_CASE("constant select folds the mux") {
  circuit c("mux_const");
  net_id x = c.add_input("x");
  net_id y = c.add_input("y");
  net_id one = c.emit(gate_kind::const1, "one");
  c.connect_output(c.emit(gate_kind::mux, "z", one, x, y));
  c.freeze();

  bdd_manager m(2);
  std::vector<node_ref> binding{m.var(0), m.var(1)};
  sim_result sim = simulate(c, m, binding);
  CHECK(sim.net_fn[c.outputs()[0]] == m.var(0)); // then-branch unchanged
}

TEST_CASE("simulated ripple sums equal the reference") {
  std::uint32_t n = 3;
  adder_vars vars = adder_vars::interleaved(n);
  bdd_manager m(vars.var_count());
  adder_spec spec(m, vars);
  circuit c = gen_rca(n);
  sim_result sim = simulate(c, m, adder_input_binding(c, vars, m));
  CHECK(sim.net_fn[*c.find_net("s2")] == spec.sum_bit(2));
  CHECK(sim.net_fn[*c.find_net("cout")] == spec.carry_bit(2));

  // arithmetic oracle cross-check on every assignment
  bool ok = true;
  oracle::for_each_adder_input(n, [&](std::span<const std::uint8_t> in) {
    auto assign = oracle::to_var_assignment(in, vars);
    for (std::uint32_t k = 0; k <= n; ++k) {
      net_id out = c.outputs()[k];
      if (m.eval(sim.net_fn[out], std::span<const std::uint8_t>(assign)) !=
          adder_oracle_bit(in, n, k))
        ok = false;
    }
  });
  CHECK(ok);
}

TEST_CASE("any topological order yields the same functions") {
  circuit a = gen_rca(4);
  // reverse the gate lines; forward references keep the netlist valid
  std::string text = serialize_netlist(a);
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  std::vector<std::string> gates;
  std::string header;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#' || line[0] == '.')
      header += line + "\n";
    else
      gates.push_back(line);
  }
  std::string reversed = header;
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) reversed += *it + "\n";
  circuit b = parse_netlist(reversed, "rca4_reversed");
  CHECK_FALSE(structurally_equal(a, b)); // different emission order

  adder_vars vars = adder_vars::interleaved(4);
  bdd_manager m(vars.var_count());
  sim_result sa = simulate(a, m, adder_input_binding(a, vars, m));
  sim_result sb = simulate(b, m, adder_input_binding(b, vars, m));
  for (std::size_t k = 0; k < a.outputs().size(); ++k) {
    net_id oa = a.outputs()[k];
    net_id ob = *b.find_net(a.net_name(oa));
    CHECK(sa.net_fn[oa] == sb.net_fn[ob]);
  }
}

TEST_CASE("verify_adder accepts all architectures") {
  for (arch a : {arch::rca, arch::cosa, arch::cla}) {
    verification_report rep = verify_adder(a, 8);
    CHECK(rep.equivalent);
    CHECK(rep.violations.empty());
    CHECK(rep.outputs.size() == 9);
    CHECK_FALSE(rep.cex.has_value());
  }
  // base case reduces to the full-adder check
  verification_report fa = verify_adder(arch::cosa, 1);
  CHECK(fa.equivalent);
  CHECK(fa.outputs.size() == 2);
}

TEST_CASE("bound check flags an injected oversize signal") {
  std::uint32_t n = 4;
  adder_vars vars = adder_vars::interleaved(n);
  bdd_manager m(vars.var_count());
  circuit c = gen_rca(n);
  sim_result sim = simulate(c, m, adder_input_binding(c, vars, m));
  CHECK(check_bounds(c, sim, m).empty());

  net_id s2 = *c.find_net("s2");
  for (trace_sample& s : sim.trace.samples)
    if (s.net == s2) s.bdd_size = 100; // bound for sum:2 is 13
  auto violations = check_bounds(c, sim, m);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].signal == "s2");
  CHECK(violations[0].bound == 13);
  CHECK(violations[0].measured == 100);
}

TEST_CASE("mutations are detected with confirmed counterexamples") {
  std::uint32_t n = 8;
  circuit c = gen_rca(n);
  // flip the first sum xor into an or
  std::uint32_t target = 0;
  for (std::uint32_t gi = 0; gi < c.gate_count(); ++gi)
    if (c.net_name(c.gates()[gi].out) == "s3") target = gi;
  circuit bad = c;
  bad.set_gate_kind(target, gate_kind::or2);

  verification_report rep = verify_circuit(bad, n);
  CHECK_FALSE(rep.equivalent);
  REQUIRE(rep.cex.has_value());
  CHECK(confirm_counterexample(bad, *rep.cex, n));

  // the plain evaluator and the integer oracle agree about the failure
  auto outs = bad.eval(rep.cex->inputs);
  bool found = false;
  for (std::size_t k = 0; k < bad.outputs().size(); ++k) {
    if (bad.net_name(bad.outputs()[k]) != rep.cex->output) continue;
    found = true;
    std::uint32_t bit = rep.cex->output == "cout" ? n : std::stoul(rep.cex->output.substr(1));
    CHECK(bool(outs[k]) != adder_oracle_bit(rep.cex->inputs, n, bit));
  }
  CHECK(found);
}

TEST_CASE("random mutation helper") {
  circuit c = gen_cosa(4);
  std::mt19937 rng(5);
  for (int k = 0; k < 20; ++k) {
    auto mu = random_gate_mutation(c, rng);
    REQUIRE(mu.has_value());
    CHECK(gate_arity(mu->from) == 2);
    CHECK(gate_arity(mu->to) == 2);
    CHECK(mu->from != mu->to);
    CHECK(c.gates()[mu->gate_index].kind == mu->from);
  }
  circuit consts("c");
  consts.connect_output(consts.emit(gate_kind::const1, "one"));
  consts.freeze();
  std::mt19937 rng2(1);
  CHECK_FALSE(random_gate_mutation(consts, rng2).has_value());
}

TEST_CASE("trace shape") {
  std::uint32_t n = 8;
  adder_vars vars = adder_vars::interleaved(n);
  bdd_manager m(vars.var_count());
  circuit c = gen_rca(n);
  sim_result sim = simulate(c, m, adder_input_binding(c, vars, m));
  CHECK(sim.trace.samples.size() == 40); // one row per gate
  std::uint64_t prev = 0;
  for (const trace_sample& s : sim.trace.samples) {
    CHECK(s.live_nodes >= prev); // append-only pool
    prev = s.live_nodes;
  }
  CHECK(sim.trace.peak_live == prev);
  CHECK(sim.trace.peak_live == m.live_nodes());
}

TEST_CASE("architectures meet in one manager") {
  for (std::uint32_t n : {1u, 2u, 3u, 4u, 5u, 6u}) {
    adder_vars vars = adder_vars::interleaved(n);
    bdd_manager m(vars.var_count());
    std::vector<std::vector<node_ref>> outs;
    for (arch a : {arch::rca, arch::cosa, arch::cla}) {
      circuit c = generate_adder(a, n);
      sim_result sim = simulate(c, m, adder_input_binding(c, vars, m));
      std::vector<node_ref> o;
      for (net_id nid : c.outputs()) o.push_back(sim.net_fn[nid]);
      outs.push_back(std::move(o));
    }
    CHECK(outs[0] == outs[1]);
    CHECK(outs[1] == outs[2]);
  }
}

TEST_CASE("binding rejects foreign circuits") {
  adder_vars vars = adder_vars::interleaved(2);
  bdd_manager m(vars.var_count());

  circuit wrong_names("w");
  wrong_names.add_input("x");
  CHECK_THROWS_AS(adder_input_binding(wrong_names, vars, m), std::invalid_argument);

  circuit wrong_count = gen_rca(3);
  CHECK_THROWS_AS(adder_input_binding(wrong_count, vars, m), std::invalid_argument);

  circuit cell = gen_full_adder(); // 3 inputs but named a, b, cin
  CHECK_THROWS_AS(verify_circuit(cell, 1), std::invalid_argument);
}

TEST_CASE("growth table") {
  std::uint32_t single[] = {8};
  growth_table t1 = growth_fit(arch::rca, single);
  REQUIRE(t1.rows.size() == 1);
  CHECK(t1.rows[0].peak_live > 0);
  CHECK(t1.max_peak_ratio() == 0.0); // no doubling pairs
  CHECK(t1.all_ok());

  std::uint32_t pair[] = {8, 16};
  growth_table t2 = growth_fit(arch::cosa, pair);
  CHECK(t2.max_peak_ratio() > 1.0);
  CHECK(t2.max_peak_ratio() <= 4.25);
}

TEST_CASE("report serialization") {
  circuit c = gen_cla(4);
  verification_report rep = verify_circuit(c, 4);
  nlohmann::json j = to_json(rep, c);
  CHECK(j["circuit"] == "cla4");
  CHECK(j["n"] == 4);
  CHECK(j["equivalent"] == true);
  CHECK(j["bound_violations"].empty());
  CHECK(j["counterexample"].is_null());
  CHECK(j["trace"].size() == c.gate_count());
  CHECK(j["metadata"].contains("wall_ms"));
  CHECK(j["metadata"]["peak_live"] == rep.peak_live);

  std::ostringstream csv;
  write_trace_csv(csv, c, rep.trace);
  std::string text = csv.str();
  CHECK(text.starts_with("step,net,tag,size,live_nodes\n"));
  CHECK(text.find("p:3:0") != std::string::npos); // tagged prefix net
}
