#pragma once

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrg/circuit.hpp"

namespace qrg {

/// One-turn refereed game flavors:
///  - Qrg: fully quantum messages on both sides.
///  - Cqrg: Alice's register is dephased before the decision circuit.
///  - Mqrg: Alice's register is fed through a measurement circuit
///    (p_circuit, n -> k wires) whose output is dephased, then the
///    decision circuit runs on (outcome, Bob).
enum class GameMode { Qrg, Cqrg, Mqrg };

struct Referee {
  GameMode mode = GameMode::Qrg;
  std::size_t alice = 0;    ///< n, width of Alice's message
  std::size_t bob = 0;      ///< m, width of Bob's message
  std::size_t outcome = 0;  ///< k, measurement outcome width (Mqrg only)
  Circuit p_circuit;        ///< Mqrg only
  Circuit q_circuit;        ///< decision circuit, one output wire
};

inline ValidationReport validate_referee(const Referee& r) {
  ValidationReport vq = validate(r.q_circuit);
  if (!vq.ok) {
    vq.message = "q circuit: " + vq.message;
    return vq;
  }
  if (output_count(r.q_circuit) != 1)
    return {false, r.q_circuit.gates.size(), "q circuit must output exactly one wire"};
  std::size_t q_in = r.mode == GameMode::Mqrg ? r.outcome + r.bob : r.alice + r.bob;
  if (r.q_circuit.inputs != q_in)
    return {false, 0,
            "q circuit takes " + std::to_string(r.q_circuit.inputs) + " inputs, expected " +
                std::to_string(q_in)};
  if (r.mode == GameMode::Mqrg) {
    ValidationReport vp = validate(r.p_circuit);
    if (!vp.ok) {
      vp.message = "p circuit: " + vp.message;
      return vp;
    }
    if (r.p_circuit.inputs != r.alice)
      return {false, 0, "p circuit must take Alice's register"};
    if (output_count(r.p_circuit) != r.outcome)
      return {false, 0,
              "p circuit outputs " + std::to_string(output_count(r.p_circuit)) +
                  " wires, expected " + std::to_string(r.outcome)};
  }
  return {};
}

/// Flattens a referee into a single circuit on the (Alice, Bob) input
/// register: Alice's wires first (0..n-1), Bob's after (n..n+m-1), one
/// output wire. Composition is by wire relabeling, so the gate list is
/// exactly the concatenation of the parts.
inline Circuit compose_referee(const Referee& r) {
  ValidationReport vr = validate_referee(r);
  if (!vr.ok) throw std::invalid_argument("compose_referee: " + vr.message);

  Circuit c;
  c.inputs = r.alice + r.bob;
  switch (r.mode) {
    case GameMode::Qrg: {
      std::vector<std::size_t> id(c.inputs);
      std::iota(id.begin(), id.end(), 0);
      embed(c, r.q_circuit, id);
      break;
    }
    case GameMode::Cqrg: {
      for (std::size_t w = 0; w < r.alice; ++w) append_dephase_gadget(c, w, c.inputs);
      std::vector<std::size_t> id(c.inputs);
      std::iota(id.begin(), id.end(), 0);
      embed(c, r.q_circuit, id);
      break;
    }
    case GameMode::Mqrg: {
      std::vector<std::size_t> amap(r.alice);
      std::iota(amap.begin(), amap.end(), 0);
      std::vector<std::size_t> bmap(r.bob);
      std::iota(bmap.begin(), bmap.end(), r.alice);
      std::vector<std::size_t> ymap = embed(c, r.p_circuit, amap, &bmap);
      for (std::size_t w : ymap) append_dephase_gadget(c, w, output_count(c));
      std::vector<std::size_t> qmap = ymap;
      qmap.insert(qmap.end(), bmap.begin(), bmap.end());
      embed(c, r.q_circuit, qmap);
      break;
    }
  }
  return c;
}

/// Exchanges the players of a fully quantum game and negates the verdict
/// with a trailing NOT, so the swapped game's value is 1 - original.
/// The exchange is a wire relabeling, no routing gates are added.
inline Referee swap_roles(const Referee& r) {
  if (r.mode != GameMode::Qrg)
    throw std::invalid_argument("swap_roles: only fully quantum games can swap players");
  ValidationReport vr = validate_referee(r);
  if (!vr.ok) throw std::invalid_argument("swap_roles: " + vr.message);

  Referee s;
  s.mode = GameMode::Qrg;
  s.alice = r.bob;
  s.bob = r.alice;
  s.q_circuit.inputs = r.alice + r.bob;
  std::vector<std::size_t> map(r.alice + r.bob);
  for (std::size_t i = 0; i < r.alice; ++i) map[i] = r.bob + i;
  for (std::size_t j = 0; j < r.bob; ++j) map[r.alice + j] = j;
  std::vector<std::size_t> out = embed(s.q_circuit, r.q_circuit, map);
  append_not(s.q_circuit, out[0]);
  return s;
}

}  // namespace qrg
