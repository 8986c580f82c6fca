#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qrg/circuit.hpp"
#include "qrg/referee.hpp"
#include "qrg/rng.hpp"

namespace qrg {

struct CircuitShape {
  std::size_t inputs_min = 1;
  std::size_t inputs_max = 4;
  std::size_t max_live = 4;   ///< live-wire ceiling throughout
  std::size_t gates_max = 8;
};

namespace detail {

inline void random_gate(Rng& rng, Circuit& c, std::size_t& live, std::size_t max_live) {
  std::vector<GateKind> kinds;
  if (live >= 1) {
    kinds.push_back(GateKind::Hadamard);
    kinds.push_back(GateKind::Phase);
    kinds.push_back(GateKind::Erasure);
  }
  if (live >= 3) kinds.push_back(GateKind::Toffoli);
  if (live < max_live) kinds.push_back(GateKind::Ancilla);
  GateKind kind = kinds[rng.below(kinds.size())];
  switch (kind) {
    case GateKind::Hadamard:
      c.gates.push_back(Gate::hadamard(rng.below(live)));
      break;
    case GateKind::Phase:
      c.gates.push_back(Gate::phase(rng.below(live)));
      break;
    case GateKind::Toffoli: {
      std::size_t a = rng.below(live), b = a, t = a;
      while (b == a) b = rng.below(live);
      while (t == a || t == b) t = rng.below(live);
      c.gates.push_back(Gate::toffoli(a, b, t));
      break;
    }
    case GateKind::Ancilla:
      c.gates.push_back(Gate::ancilla());
      ++live;
      break;
    case GateKind::Erasure:
      c.gates.push_back(Gate::erasure(rng.below(live)));
      --live;
      break;
  }
}

}  // namespace detail

/// Random circuit within the shape's width/size envelope.
inline Circuit random_circuit(Rng& rng, const CircuitShape& shape) {
  Circuit c;
  c.inputs = shape.inputs_min + rng.below(shape.inputs_max - shape.inputs_min + 1);
  std::size_t live = c.inputs;
  std::size_t count = rng.below(shape.gates_max + 1);
  for (std::size_t g = 0; g < count; ++g) {
    if (live == 0 && shape.max_live == 0) break;
    detail::random_gate(rng, c, live, shape.max_live);
  }
  return c;
}

/// Random circuit with exact input and output wire counts: a random body
/// followed by erasures or ancillas that settle the register at `outputs`.
inline Circuit random_channel_circuit(Rng& rng, std::size_t inputs, std::size_t outputs,
                                      std::size_t body_gates, std::size_t max_live) {
  if (inputs > max_live || outputs > max_live)
    throw std::invalid_argument("random_channel_circuit: width exceeds max_live");
  Circuit c;
  c.inputs = inputs;
  std::size_t live = inputs;
  for (std::size_t g = 0; g < body_gates; ++g) {
    if (live == 0 && max_live == 0) break;
    detail::random_gate(rng, c, live, max_live);
  }
  while (live > outputs) {
    c.gates.push_back(Gate::erasure(rng.below(live)));
    --live;
  }
  while (live < outputs) {
    c.gates.push_back(Gate::ancilla());
    ++live;
  }
  return c;
}

/// Random referee at fixed message widths (k ignored unless Mqrg).
inline Referee random_referee(Rng& rng, GameMode mode, std::size_t n, std::size_t m,
                              std::size_t k, std::size_t body_gates) {
  Referee r;
  r.mode = mode;
  r.alice = n;
  r.bob = m;
  std::size_t q_in = n + m;
  if (mode == GameMode::Mqrg) {
    r.outcome = k;
    q_in = k + m;
    r.p_circuit = random_channel_circuit(rng, n, k, body_gates, std::max(n, k) + 2);
  }
  r.q_circuit = random_channel_circuit(rng, q_in, 1, body_gates, q_in + 2);
  return r;
}

/// Deterministic circuit corpus: `count` circuits drawn from one seeded
/// stream.
inline std::vector<Circuit> corpus_circuits(std::uint64_t seed, std::size_t count,
                                            const CircuitShape& shape) {
  Rng rng(seed);
  std::vector<Circuit> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_circuit(rng, shape));
  return out;
}

}  // namespace qrg
