#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrg {

/// Gate set: Hadamard, Phase (|1> -> i|1>), Toffoli, Ancilla (appends a
/// fresh |0> wire at the end of the register), Erasure (traces out a wire;
/// higher wire indices shift down by one).
enum class GateKind { Hadamard, Phase, Toffoli, Ancilla, Erasure };

inline std::size_t gate_arity(GateKind k) {
  switch (k) {
    case GateKind::Hadamard:
    case GateKind::Phase:
    case GateKind::Erasure:
      return 1;
    case GateKind::Toffoli:
      return 3;
    case GateKind::Ancilla:
      return 0;
  }
  throw std::logic_error("gate_arity: bad kind");
}

struct Gate {
  GateKind kind;
  std::array<std::size_t, 3> wires{};  // first gate_arity(kind) entries used

  static Gate hadamard(std::size_t w) { return {GateKind::Hadamard, {w, 0, 0}}; }
  static Gate phase(std::size_t w) { return {GateKind::Phase, {w, 0, 0}}; }
  /// Controls c1, c2; target t.
  static Gate toffoli(std::size_t c1, std::size_t c2, std::size_t t) {
    return {GateKind::Toffoli, {c1, c2, t}};
  }
  static Gate ancilla() { return {GateKind::Ancilla, {0, 0, 0}}; }
  static Gate erasure(std::size_t w) { return {GateKind::Erasure, {w, 0, 0}}; }
};

/// A circuit is an input width plus an ordered gate list. Wires are
/// indexed 0..live-1 at every point in time; qubit 0 is the most
/// significant position in all bitstring indexing.
struct Circuit {
  std::size_t inputs = 0;
  std::vector<Gate> gates;
};

struct ValidationReport {
  bool ok = true;
  std::size_t gate_index = 0;  // first offending gate when !ok
  std::string message;
};

/// Replays the gate list checking wire bounds and distinctness at every
/// step. A register with zero live wires is legal (the scalar system).
inline ValidationReport validate(const Circuit& c) {
  std::size_t live = c.inputs;
  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    const Gate& gate = c.gates[g];
    std::size_t ar = gate_arity(gate.kind);
    for (std::size_t i = 0; i < ar; ++i) {
      if (gate.wires[i] >= live)
        return {false, g,
                "wire " + std::to_string(gate.wires[i]) + " out of range (live " +
                    std::to_string(live) + ")"};
      for (std::size_t j = i + 1; j < ar; ++j)
        if (gate.wires[i] == gate.wires[j])
          return {false, g, "repeated wire " + std::to_string(gate.wires[i])};
    }
    if (gate.kind == GateKind::Ancilla) ++live;
    if (gate.kind == GateKind::Erasure) --live;
  }
  return {};
}

inline std::size_t output_count(const Circuit& c) {
  std::size_t live = c.inputs;
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::Ancilla) ++live;
    if (g.kind == GateKind::Erasure) --live;
  }
  return live;
}

inline std::size_t max_live(const Circuit& c) {
  std::size_t live = c.inputs, peak = c.inputs;
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::Ancilla) peak = std::max(peak, ++live);
    if (g.kind == GateKind::Erasure) --live;
  }
  return peak;
}

/// Size measure used by every scaling exponent: gate count + inputs + outputs.
inline std::size_t circuit_size(const Circuit& c) {
  return c.gates.size() + c.inputs + output_count(c);
}

/// X on a wire, expanded over the base gate set as H P P H.
inline void append_not(Circuit& c, std::size_t wire) {
  c.gates.push_back(Gate::hadamard(wire));
  c.gates.push_back(Gate::phase(wire));
  c.gates.push_back(Gate::phase(wire));
  c.gates.push_back(Gate::hadamard(wire));
}

/// Dephasing gadget on one wire: copy the wire onto a fresh |0> ancilla
/// with a Toffoli whose second control is a |1> ancilla, then trace both
/// ancillas out. `live` is the current live count of the register.
inline void append_dephase_gadget(Circuit& c, std::size_t wire, std::size_t live) {
  c.gates.push_back(Gate::ancilla());  // wire `live`, prepared |0>, flipped to |1>
  append_not(c, live);
  c.gates.push_back(Gate::ancilla());  // wire `live`+1, the copy target
  c.gates.push_back(Gate::toffoli(wire, live, live + 1));
  c.gates.push_back(Gate::erasure(live));
  c.gates.push_back(Gate::erasure(live));  // the copy shifted down to `live`
}

/// Pointwise dephasing channel on n qubits (diagonal truncation).
inline Circuit build_dephasing(std::size_t n) {
  Circuit c;
  c.inputs = n;
  for (std::size_t w = 0; w < n; ++w) append_dephase_gadget(c, w, n);
  return c;
}

/// Appends src's gates to dst with src's input wires routed through
/// `map` (map[i] = dst wire for src input wire i; entries distinct and
/// live in dst). Pure relabeling, no gates added beyond src's. Wires in
/// `tracked` (dst indices untouched by src) are renumbered in place as
/// src's erasures shift them. Returns dst positions of src's outputs in
/// src wire order.
inline std::vector<std::size_t> embed(Circuit& dst, const Circuit& src,
                                      std::vector<std::size_t> map,
                                      std::vector<std::size_t>* tracked = nullptr) {
  if (map.size() != src.inputs)
    throw std::invalid_argument("embed: map size does not match src inputs");
  ValidationReport vr = validate(src);
  if (!vr.ok)
    throw std::invalid_argument("embed: invalid src circuit at gate " +
                                std::to_string(vr.gate_index) + ": " + vr.message);
  std::size_t dst_live = output_count(dst);
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map[i] >= dst_live) throw std::invalid_argument("embed: map entry out of range");
    for (std::size_t j = i + 1; j < map.size(); ++j)
      if (map[i] == map[j]) throw std::invalid_argument("embed: map entries must be distinct");
  }

  for (const Gate& g : src.gates) {
    switch (g.kind) {
      case GateKind::Hadamard:
        dst.gates.push_back(Gate::hadamard(map[g.wires[0]]));
        break;
      case GateKind::Phase:
        dst.gates.push_back(Gate::phase(map[g.wires[0]]));
        break;
      case GateKind::Toffoli:
        dst.gates.push_back(
            Gate::toffoli(map[g.wires[0]], map[g.wires[1]], map[g.wires[2]]));
        break;
      case GateKind::Ancilla:
        dst.gates.push_back(Gate::ancilla());
        map.push_back(dst_live);
        ++dst_live;
        break;
      case GateKind::Erasure: {
        std::size_t target = map[g.wires[0]];
        dst.gates.push_back(Gate::erasure(target));
        map.erase(map.begin() + static_cast<std::ptrdiff_t>(g.wires[0]));
        for (auto& w : map)
          if (w > target) --w;
        if (tracked)
          for (auto& w : *tracked)
            if (w > target) --w;
        --dst_live;
        break;
      }
    }
  }
  return map;
}

}  // namespace qrg
