// Command-line front end: netlist generation, verification against the
// reference adder functions, bound tables, growth sweeps and BDD dumps.
//
// Exit codes: 0 verified/ok, 1 non-equivalent (or failed mutation
// confirmation), 2 bound or growth-ratio violation, 64 usage error,
// 74 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <adderverify/adderverify.hpp>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_nonequivalent = 1;
constexpr int exit_bound_violation = 2;
constexpr int exit_usage = 64;
constexpr int exit_io = 74;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Writes to a file, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw io_error("cannot open '" + path + "' for writing");
  os << text;
  if (!os) throw io_error("failed writing '" + path + "'");
}

adderverify::arch parse_arch(const std::string& s) {
  auto a = adderverify::arch_from(s);
  if (!a) throw usage_error("unknown architecture '" + s + "' (expected rca, cosa or cla)");
  return *a;
}

std::vector<std::uint32_t> parse_n_list(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      unsigned long v = std::stoul(tok);
      if (v == 0 || v > 1u << 20) throw usage_error("width out of range: " + tok);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::logic_error&) {
      throw usage_error("bad width list entry '" + tok + "'");
    }
  }
  if (out.empty()) throw usage_error("empty width list");
  for (std::size_t k = 1; k < out.size(); ++k)
    if (out[k] <= out[k - 1]) throw usage_error("width list must be strictly ascending");
  return out;
}

int cmd_gen(const std::string& arch_name, std::uint32_t bits, const std::string& out) {
  adderverify::circuit c = adderverify::generate_adder(parse_arch(arch_name), bits);
  write_text(out, adderverify::serialize_netlist(c));
  return exit_ok;
}

int cmd_bounds(std::uint32_t bits, const std::string& out) {
  std::ostringstream os;
  adderverify::write_bounds_csv(os, bits);
  write_text(out, os.str());
  return exit_ok;
}

adderverify::circuit load_circuit(const std::string& arch_name, const std::string& netlist_path,
                                  std::uint32_t bits) {
  if (!arch_name.empty()) return adderverify::generate_adder(parse_arch(arch_name), bits);
  std::ifstream is(netlist_path);
  if (!is) throw io_error("cannot open netlist '" + netlist_path + "'");
  std::stringstream buf;
  buf << is.rdbuf();
  return adderverify::parse_netlist(buf.str(), netlist_path);
}

int run_mutations(const adderverify::circuit& c, std::uint32_t bits, std::uint32_t count,
                  std::uint32_t seed) {
  if (2 * bits + 1 > 24)
    throw usage_error("mutation mode proves benign mutations exhaustively; use --bits <= 11");
  std::mt19937 rng(seed);
  std::uint32_t detected = 0, benign = 0, unconfirmed = 0;
  for (std::uint32_t k = 0; k < count; ++k) {
    auto mu = adderverify::random_gate_mutation(c, rng);
    if (!mu) throw usage_error("circuit has no two-input gates to mutate");
    auto chk = adderverify::check_mutation(c, *mu, bits);
    if (!chk.confirmed)
      ++unconfirmed;
    else if (chk.equivalent)
      ++benign;
    else
      ++detected;
  }
  nlohmann::json j{{"circuit", c.name()},
                   {"mutations", count},
                   {"seed", seed},
                   {"detected", detected},
                   {"benign", benign},
                   {"unconfirmed", unconfirmed}};
  std::cout << j.dump(2) << "\n";
  return unconfirmed == 0 ? exit_ok : exit_nonequivalent;
}

int cmd_verify(const std::string& arch_name, const std::string& netlist_path, std::uint32_t bits,
               const std::string& trace_path, const std::string& report_path,
               std::uint32_t mutations, std::uint32_t seed) {
  adderverify::circuit c = load_circuit(arch_name, netlist_path, bits);
  if (mutations > 0) return run_mutations(c, bits, mutations, seed);

  adderverify::verification_report rep = adderverify::verify_circuit(c, bits);
  if (!trace_path.empty()) {
    std::ostringstream os;
    adderverify::write_trace_csv(os, c, rep.trace);
    write_text(trace_path, os.str());
  }
  write_text(report_path, adderverify::to_json(rep, c).dump(2) + "\n");
  if (!rep.equivalent) {
    std::cerr << "non-equivalent: output " << rep.cex->output << " differs\n";
    return exit_nonequivalent;
  }
  if (!rep.violations.empty()) {
    std::cerr << rep.violations.size() << " bound violation(s), first: "
              << rep.violations.front().signal << " measured " << rep.violations.front().measured
              << " > bound " << rep.violations.front().bound << "\n";
    return exit_bound_violation;
  }
  return exit_ok;
}

int cmd_sweep(const std::string& arch_name, const std::string& n_spec, const std::string& out,
              double max_peak_ratio, double max_time_ratio) {
  auto n_list = parse_n_list(n_spec);
  adderverify::growth_table table =
      adderverify::growth_fit(parse_arch(arch_name), n_list);
  std::ostringstream os;
  adderverify::write_growth_csv(os, table);
  write_text(out, os.str());
  if (!table.all_ok()) {
    std::cerr << "sweep: a run was non-equivalent or violated a size bound\n";
    return exit_nonequivalent;
  }
  if (table.max_peak_ratio() > max_peak_ratio) {
    std::cerr << "sweep: peak_live doubling ratio " << table.max_peak_ratio() << " exceeds "
              << max_peak_ratio << "\n";
    return exit_bound_violation;
  }
  if (table.max_time_ratio() > max_time_ratio) {
    std::cerr << "sweep: wall-time doubling ratio " << table.max_time_ratio() << " exceeds "
              << max_time_ratio << "\n";
    return exit_bound_violation;
  }
  return exit_ok;
}

int cmd_dump_bdd(const std::string& selector, std::uint32_t bits, const std::string& out) {
  adderverify::adder_vars vars = adderverify::adder_vars::interleaved(bits);
  adderverify::bdd_manager m(vars.var_count());
  adderverify::adder_spec spec(m, vars);

  std::vector<std::string> parts;
  std::stringstream ss(selector);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  auto index = [&](const std::string& s) -> std::uint32_t {
    try {
      unsigned long v = std::stoul(s);
      if (v >= bits) throw usage_error("selector index " + s + " out of range for --bits " +
                                       std::to_string(bits));
      return static_cast<std::uint32_t>(v);
    } catch (const std::logic_error&) {
      throw usage_error("bad selector index '" + s + "'");
    }
  };

  adderverify::node_ref root;
  if (parts.size() == 2 && parts[0] == "sum") {
    root = spec.sum_bit(index(parts[1]));
  } else if (parts.size() == 2 && parts[0] == "carry") {
    root = spec.carry_bit(index(parts[1]));
  } else if (parts.size() == 3 && (parts[0] == "p" || parts[0] == "g")) {
    std::uint32_t j = index(parts[1]);
    std::uint32_t i = index(parts[2]);
    if (i > j) throw usage_error("selector needs j >= i");
    root = parts[0] == "p" ? spec.propagate(j, i) : spec.generate(j, i);
  } else {
    throw usage_error("bad selector '" + selector + "' (expected sum:i, carry:i, p:j:i or g:j:i)");
  }
  std::string label = selector;
  for (char& ch : label)
    if (ch == ':') ch = '_';
  write_text(out, adderverify::to_dot(m, label, root,
                                      [&](adderverify::var_id v) { return vars.var_name(v); }));
  return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"BDD-based generation and formal verification of adder circuits"};
  app.require_subcommand(1);

  std::string arch_name, netlist_path, out_path, report_path, trace_path, n_spec, selector;
  std::uint32_t bits = 0, mutations = 0, seed = 1;
  double max_peak_ratio = 4.25, max_time_ratio = 5.0;

  auto* gen = app.add_subcommand("gen", "Generate an adder netlist");
  gen->add_option("--arch", arch_name, "Architecture: rca, cosa, cla")->required();
  gen->add_option("--bits", bits, "Adder width")->required()->check(CLI::PositiveNumber);
  gen->add_option("--out,-o", out_path, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Verify an adder against the reference functions");
  auto* varch = verify->add_option("--arch", arch_name, "Architecture: rca, cosa, cla");
  auto* vnet = verify->add_option("--netlist", netlist_path, "Netlist file to verify");
  verify->add_option("--bits", bits, "Adder width")->required()->check(CLI::PositiveNumber);
  verify->add_option("--trace", trace_path, "Write the per-gate size trace CSV here");
  verify->add_option("--report", report_path, "Write the JSON report here (default stdout)");
  verify->add_option("--mutations", mutations,
                     "Self-test: apply this many random single-gate mutations");
  verify->add_option("--seed", seed, "Seed for mutation selection");
  varch->excludes(vnet);

  auto* bounds = app.add_subcommand("bounds", "Print the size-bound table as CSV");
  bounds->add_option("--bits", bits, "Adder width")->required()->check(CLI::PositiveNumber);
  bounds->add_option("--out,-o", out_path, "Output file (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Growth sweep over a list of widths");
  sweep->add_option("--arch", arch_name, "Architecture: rca, cosa, cla")->required();
  sweep->add_option("--n", n_spec, "Comma-separated ascending widths, e.g. 8,16,32")->required();
  sweep->add_option("--out,-o", out_path, "Output CSV file (default stdout)");
  sweep->add_option("--max-peak-ratio", max_peak_ratio,
                    "Fail (exit 2) if peak_live grows faster per doubling");
  sweep->add_option("--max-time-ratio", max_time_ratio,
                    "Fail (exit 2) if wall time grows faster per doubling");

  auto* dump = app.add_subcommand("dump-bdd", "Dump a reference function BDD as DOT");
  dump->add_option("selector", selector, "sum:i, carry:i, p:j:i or g:j:i")->required();
  dump->add_option("--bits", bits, "Adder width")->required()->check(CLI::PositiveNumber);
  dump->add_option("--out,-o", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (gen->parsed()) return cmd_gen(arch_name, bits, out_path);
    if (verify->parsed()) {
      if (arch_name.empty() == netlist_path.empty())
        throw usage_error("verify needs exactly one of --arch or --netlist");
      return cmd_verify(arch_name, netlist_path, bits, trace_path, report_path, mutations, seed);
    }
    if (bounds->parsed()) return cmd_bounds(bits, out_path);
    if (sweep->parsed())
      return cmd_sweep(arch_name, n_spec, out_path, max_peak_ratio, max_time_ratio);
    if (dump->parsed()) return cmd_dump_bdd(selector, bits, out_path);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_io;
  } catch (const adderverify::parse_error& e) {
    std::cerr << "netlist error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
