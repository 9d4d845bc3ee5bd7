/// \file netlist.hpp
/// \brief Line-oriented textual netlist format.
///
/// Format:
///   # comment, anywhere
///   .inputs <name> <name> ...
///   .outputs <name> <name> ...
///   <out> = <KIND>(<in>[, <in>...])
///
/// Names match [A-Za-z_][A-Za-z0-9_]*. Gate lines may reference nets
/// defined further down; cycles are rejected after parsing.

#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "circuit.hpp"

namespace adderverify {

class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string> split_names(std::string_view s) {
  std::vector<std::string> out;
  std::size_t k = 0;
  while (k < s.size()) {
    while (k < s.size() && (s[k] == ' ' || s[k] == '\t')) ++k;
    std::size_t start = k;
    while (k < s.size() && s[k] != ' ' && s[k] != '\t') ++k;
    if (k > start) out.emplace_back(s.substr(start, k - start));
  }
  return out;
}

} // namespace detail

inline circuit parse_netlist(std::string_view text, std::string name = "netlist") {
  struct gate_line {
    std::string out;
    gate_kind kind;
    std::vector<std::string> ins;
    std::size_t line;
  };
  std::vector<std::pair<std::string, std::size_t>> input_names;
  std::vector<std::pair<std::string, std::size_t>> output_names;
  std::vector<gate_line> gate_lines;

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++lineno;

    if (std::size_t hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    std::string_view line = detail::trim(raw);
    if (line.empty()) continue;

    if (line.starts_with(".")) {
      std::size_t sp = line.find_first_of(" \t");
      std::string_view directive = line.substr(0, sp);
      std::string_view rest = sp == std::string_view::npos ? "" : line.substr(sp);
      if (directive == ".inputs") {
        for (auto& n : detail::split_names(rest)) input_names.emplace_back(n, lineno);
      } else if (directive == ".outputs") {
        for (auto& n : detail::split_names(rest)) output_names.emplace_back(n, lineno);
      } else {
        throw parse_error("unknown directive", lineno);
      }
      continue;
    }

    // <out> = <KIND>(<in>, ...)
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw parse_error("expected '=' in gate line", lineno);
    std::string out{detail::trim(line.substr(0, eq))};
    std::string_view rhs = detail::trim(line.substr(eq + 1));
    std::size_t open = rhs.find('(');
    if (open == std::string_view::npos || rhs.back() != ')')
      throw parse_error("expected <KIND>(<inputs>)", lineno);
    std::string_view kind_tok = detail::trim(rhs.substr(0, open));
    auto kind = gate_kind_from(kind_tok);
    if (!kind) throw parse_error("unknown gate kind '" + std::string(kind_tok) + "'", lineno);
    std::string_view args = rhs.substr(open + 1, rhs.size() - open - 2);

    std::vector<std::string> ins;
    std::string_view rest = detail::trim(args);
    while (!rest.empty()) {
      std::size_t comma = rest.find(',');
      std::string_view tok = detail::trim(rest.substr(0, comma));
      if (tok.empty()) throw parse_error("empty gate argument", lineno);
      ins.emplace_back(tok);
      if (comma == std::string_view::npos) break;
      rest = detail::trim(rest.substr(comma + 1));
      if (rest.empty()) throw parse_error("trailing comma in gate arguments", lineno);
    }
    if (ins.size() != gate_arity(*kind))
      throw parse_error(std::string(gate_kind_name(*kind)) + " expects " +
                            std::to_string(gate_arity(*kind)) + " inputs, got " +
                            std::to_string(ins.size()),
                        lineno);
    if (!valid_net_name(out)) throw parse_error("invalid net name '" + out + "'", lineno);
    for (const auto& n : ins)
      if (!valid_net_name(n)) throw parse_error("invalid net name '" + n + "'", lineno);
    gate_lines.push_back({std::move(out), *kind, std::move(ins), lineno});
  }

  circuit c(std::move(name));
  for (auto& [n, ln] : input_names) {
    if (!valid_net_name(n)) throw parse_error("invalid input name '" + n + "'", ln);
    if (c.find_net(n)) throw parse_error("duplicate input '" + n + "'", ln);
    c.add_input(n);
  }
  for (auto& gl : gate_lines) {
    if (c.find_net(gl.out))
      throw parse_error("duplicate driver for net '" + gl.out + "'", gl.line);
    c.add_net(gl.out);
  }
  for (auto& gl : gate_lines) {
    net_id ins[3] = {no_net, no_net, no_net};
    for (std::size_t s = 0; s < gl.ins.size(); ++s) {
      auto n = c.find_net(gl.ins[s]);
      if (!n) throw parse_error("undriven net '" + gl.ins[s] + "'", gl.line);
      ins[s] = *n;
    }
    c.emit_to(*c.find_net(gl.out), gl.kind, ins[0], ins[1], ins[2]);
  }
  for (auto& [n, ln] : output_names) {
    auto id = c.find_net(n);
    if (!id) throw parse_error("output names undriven net '" + n + "'", ln);
    c.connect_output(*id);
  }
  try {
    c.freeze();
  } catch (const circuit_error& e) {
    std::size_t ln = e.gate_index() ? gate_lines[*e.gate_index()].line : 0;
    throw parse_error(e.what(), ln);
  }
  return c;
}

inline std::string serialize_netlist(const circuit& c) {
  std::ostringstream os;
  os << "# " << c.name() << "\n";
  os << ".inputs";
  for (net_id n : c.inputs()) os << ' ' << c.net_name(n);
  os << "\n.outputs";
  for (net_id n : c.outputs()) os << ' ' << c.net_name(n);
  os << "\n";
  for (const gate& g : c.gates()) {
    os << c.net_name(g.out) << " = " << gate_kind_name(g.kind) << "(";
    for (unsigned s = 0; s < gate_arity(g.kind); ++s) {
      if (s) os << ", ";
      os << c.net_name(g.in[s]);
    }
    os << ")\n";
  }
  return os.str();
}

} // namespace adderverify
