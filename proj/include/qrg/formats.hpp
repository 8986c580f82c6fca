#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrg/circuit.hpp"
#include "qrg/referee.hpp"

namespace qrg {

/// Malformed textual input; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string> tokenize(const std::string& raw) {
  std::string line = raw;
  if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
  std::istringstream is(line);
  std::vector<std::string> toks;
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

inline std::size_t parse_index(const std::string& tok, std::size_t lineno) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(lineno, "expected a nonnegative integer, got '" + tok + "'");
  }
  if (pos != tok.size())
    throw ParseError(lineno, "expected a nonnegative integer, got '" + tok + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace detail

/// Circuit text: an `inputs <n>` header, then one gate per line
/// (`H <w>`, `P <w>`, `T <c1> <c2> <t>`, `ANC`, `TR <w>`). `#` starts a
/// comment; blank lines are skipped. Reads until the stream ends or an
/// `end` line is hit (the terminator is consumed, for block embedding).
inline Circuit parse_circuit_text(std::istream& in, std::size_t& lineno) {
  Circuit c;
  bool have_inputs = false;
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = detail::tokenize(raw);
    if (toks.empty()) continue;
    const std::string& op = toks[0];
    if (op == "end") {
      if (!have_inputs) throw ParseError(lineno, "circuit block missing 'inputs' header");
      return c;
    }
    if (op == "inputs") {
      if (have_inputs) throw ParseError(lineno, "duplicate 'inputs' header");
      if (toks.size() != 2) throw ParseError(lineno, "usage: inputs <n>");
      c.inputs = detail::parse_index(toks[1], lineno);
      have_inputs = true;
      continue;
    }
    if (!have_inputs)
      throw ParseError(lineno, "circuit must start with 'inputs <n>', got '" + op + "'");
    if (op == "H" || op == "P" || op == "TR") {
      if (toks.size() != 2) throw ParseError(lineno, "usage: " + op + " <wire>");
      std::size_t w = detail::parse_index(toks[1], lineno);
      c.gates.push_back(op == "H"   ? Gate::hadamard(w)
                        : op == "P" ? Gate::phase(w)
                                    : Gate::erasure(w));
    } else if (op == "T") {
      if (toks.size() != 4) throw ParseError(lineno, "usage: T <c1> <c2> <t>");
      c.gates.push_back(Gate::toffoli(detail::parse_index(toks[1], lineno),
                                      detail::parse_index(toks[2], lineno),
                                      detail::parse_index(toks[3], lineno)));
    } else if (op == "ANC") {
      if (toks.size() != 1) throw ParseError(lineno, "ANC takes no arguments");
      c.gates.push_back(Gate::ancilla());
    } else {
      throw ParseError(lineno, "unknown gate '" + op + "'");
    }
  }
  if (!have_inputs) throw ParseError(lineno, "empty circuit text");
  return c;
}

inline Circuit parse_circuit_text(const std::string& text) {
  std::istringstream is(text);
  std::size_t lineno = 0;
  Circuit c = parse_circuit_text(is, lineno);
  std::string raw;
  while (std::getline(is, raw)) {
    ++lineno;
    if (!detail::tokenize(raw).empty())
      throw ParseError(lineno, "trailing content after circuit");
  }
  return c;
}

inline void serialize_circuit(std::ostream& os, const Circuit& c) {
  os << "inputs " << c.inputs << "\n";
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::Hadamard: os << "H " << g.wires[0] << "\n"; break;
      case GateKind::Phase: os << "P " << g.wires[0] << "\n"; break;
      case GateKind::Toffoli:
        os << "T " << g.wires[0] << " " << g.wires[1] << " " << g.wires[2] << "\n";
        break;
      case GateKind::Ancilla: os << "ANC\n"; break;
      case GateKind::Erasure: os << "TR " << g.wires[0] << "\n"; break;
    }
  }
}

inline std::string serialize_circuit(const Circuit& c) {
  std::ostringstream os;
  serialize_circuit(os, c);
  return os.str();
}

/// Referee text: `mode qrg|cqrg|mqrg`, `alice <n>`, `bob <m>`, optional
/// `outcome <k>`, then `begin p` / `begin q` circuit blocks, each closed
/// by `end`. Width/shape consistency is checked after parsing.
inline Referee parse_referee_text(std::istream& in) {
  Referee r;
  bool have_mode = false, have_alice = false, have_bob = false, have_q = false, have_p = false;
  std::size_t lineno = 0;
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = detail::tokenize(raw);
    if (toks.empty()) continue;
    const std::string& key = toks[0];
    if (key == "mode") {
      if (toks.size() != 2) throw ParseError(lineno, "usage: mode qrg|cqrg|mqrg");
      if (toks[1] == "qrg") r.mode = GameMode::Qrg;
      else if (toks[1] == "cqrg") r.mode = GameMode::Cqrg;
      else if (toks[1] == "mqrg") r.mode = GameMode::Mqrg;
      else throw ParseError(lineno, "unknown mode '" + toks[1] + "'");
      have_mode = true;
    } else if (key == "alice" || key == "bob" || key == "outcome") {
      if (toks.size() != 2) throw ParseError(lineno, "usage: " + key + " <width>");
      std::size_t v = detail::parse_index(toks[1], lineno);
      if (key == "alice") r.alice = v, have_alice = true;
      else if (key == "bob") r.bob = v, have_bob = true;
      else r.outcome = v;
    } else if (key == "begin") {
      if (toks.size() != 2 || (toks[1] != "p" && toks[1] != "q"))
        throw ParseError(lineno, "usage: begin p|q");
      bool is_p = toks[1] == "p";
      if ((is_p && have_p) || (!is_p && have_q))
        throw ParseError(lineno, "duplicate circuit block '" + toks[1] + "'");
      (is_p ? r.p_circuit : r.q_circuit) = parse_circuit_text(in, lineno);
      (is_p ? have_p : have_q) = true;
    } else {
      throw ParseError(lineno, "unknown keyword '" + key + "'");
    }
  }
  if (!have_mode) throw ParseError(lineno, "missing 'mode'");
  if (!have_alice || !have_bob) throw ParseError(lineno, "missing player widths");
  if (!have_q) throw ParseError(lineno, "missing 'begin q' block");
  if (r.mode == GameMode::Mqrg && !have_p)
    throw ParseError(lineno, "mqrg referee needs a 'begin p' block");
  if (r.mode != GameMode::Mqrg && have_p)
    throw ParseError(lineno, "only mqrg referees take a 'begin p' block");
  ValidationReport vr = validate_referee(r);
  if (!vr.ok) throw ParseError(lineno, "inconsistent referee: " + vr.message);
  return r;
}

inline Referee parse_referee_text(const std::string& text) {
  std::istringstream is(text);
  return parse_referee_text(is);
}

inline std::string serialize_referee(const Referee& r) {
  std::ostringstream os;
  os << "mode "
     << (r.mode == GameMode::Qrg ? "qrg" : r.mode == GameMode::Cqrg ? "cqrg" : "mqrg")
     << "\n";
  os << "alice " << r.alice << "\n";
  os << "bob " << r.bob << "\n";
  if (r.mode == GameMode::Mqrg) {
    os << "outcome " << r.outcome << "\n";
    os << "begin p\n";
    serialize_circuit(os, r.p_circuit);
    os << "end\n";
  }
  os << "begin q\n";
  serialize_circuit(os, r.q_circuit);
  os << "end\n";
  return os.str();
}

}  // namespace qrg
