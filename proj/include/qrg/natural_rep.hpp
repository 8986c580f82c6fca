#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qrg/circuit.hpp"
#include "qrg/exact_matrix.hpp"

namespace qrg {

/// Cap on live qubits for vectorized-state pushes (4^live scalars held).
inline std::size_t& max_push_qubits() {
  static std::size_t cap = 10;
  return cap;
}

/// Channel in the natural (vectorization) picture: a 4^out x 4^in exact
/// matrix K with K vec(rho) = vec(Phi(rho)). Row index is the pair (u, v)
/// of output bitstrings packed as u * 2^out + v, column index likewise
/// (z, w); qubit 0 is the most significant bit of each string.
struct NaturalRep {
  ExactMatrix mat;
  std::size_t in_qubits = 0;
  std::size_t out_qubits = 0;
};

/// vec(M) for a 2^q x 2^q matrix: entry (y, z) lands at index y * 2^q + z.
inline std::vector<Dyadic> vec(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("vec: matrix not square");
  std::vector<Dyadic> v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t y = 0; y < m.rows(); ++y)
    for (std::size_t z = 0; z < m.cols(); ++z) v.push_back(m.at(y, z));
  return v;
}

inline ExactMatrix unvec(const std::vector<Dyadic>& v, std::size_t qubits) {
  std::size_t dim = std::size_t{1} << qubits;
  if (v.size() != dim * dim) throw std::invalid_argument("unvec: size mismatch");
  ExactMatrix m(dim, dim);
  for (std::size_t y = 0; y < dim; ++y)
    for (std::size_t z = 0; z < dim; ++z) m.at(y, z) = v[y * dim + z];
  return m;
}

namespace detail {

inline std::size_t remove_bit(std::size_t x, std::size_t pos) {
  return ((x >> (pos + 1)) << pos) | (x & ((std::size_t{1} << pos) - 1));
}

inline std::size_t insert_bit(std::size_t x, std::size_t pos, std::size_t bit) {
  return (((x >> pos) << (pos + 1)) | (bit << pos) | (x & ((std::size_t{1} << pos) - 1)));
}

inline std::size_t toffoli_perm(std::size_t z) {
  return z ^ ((z >> 2) & (z >> 1) & 1);
}

inline void check_push_cap(std::size_t live) {
  if (live > max_push_qubits())
    throw std::runtime_error("state push cap exceeded: need " + std::to_string(live) +
                             " live qubits, cap is " + std::to_string(max_push_qubits()));
}

}  // namespace detail

/// Single-gate channel matrix on the gate's own wires (unlifted).
inline NaturalRep gate_rep(GateKind kind) {
  switch (kind) {
    case GateKind::Hadamard: {
      NaturalRep r{ExactMatrix(4, 4), 1, 1};
      for (std::size_t row = 0; row < 4; ++row)
        for (std::size_t col = 0; col < 4; ++col) {
          std::size_t par = ((row >> 1) & (col >> 1)) ^ (row & col & 1);
          r.mat.at(row, col) = Dyadic(par ? -1 : 1, 0, 1);
        }
      return r;
    }
    case GateKind::Phase: {
      NaturalRep r{ExactMatrix(4, 4), 1, 1};
      r.mat.at(0, 0) = Dyadic(1);
      r.mat.at(1, 1) = Dyadic(0, -1, 0);
      r.mat.at(2, 2) = Dyadic(0, 1, 0);
      r.mat.at(3, 3) = Dyadic(1);
      return r;
    }
    case GateKind::Toffoli: {
      NaturalRep r{ExactMatrix(64, 64), 3, 3};
      for (std::size_t z = 0; z < 8; ++z)
        for (std::size_t w = 0; w < 8; ++w)
          r.mat.at(detail::toffoli_perm(z) * 8 + detail::toffoli_perm(w), z * 8 + w) =
              Dyadic(1);
      return r;
    }
    case GateKind::Ancilla: {
      NaturalRep r{ExactMatrix(4, 1), 0, 1};
      r.mat.at(0, 0) = Dyadic(1);
      return r;
    }
    case GateKind::Erasure: {
      NaturalRep r{ExactMatrix(1, 4), 1, 0};
      r.mat.at(0, 0) = Dyadic(1);
      r.mat.at(0, 3) = Dyadic(1);
      return r;
    }
  }
  throw std::logic_error("gate_rep: bad kind");
}

/// Lifts a gate rep to a register with `live` qubits by explicit index
/// bookkeeping. `wires` are the gate's input wires; an arity-0 gate
/// (Ancilla) appends its output at index `live`, an output-free gate
/// (Erasure) removes its wire and shifts higher indices down.
inline NaturalRep lift(const NaturalRep& g, const std::vector<std::size_t>& wires,
                       std::size_t live) {
  if (wires.size() != g.in_qubits) throw std::invalid_argument("lift: wire count mismatch");
  for (std::size_t w : wires)
    if (w >= live) throw std::invalid_argument("lift: wire out of range");

  std::size_t live_out = live - g.in_qubits + g.out_qubits;
  std::size_t din = std::size_t{1} << live, dout = std::size_t{1} << live_out;
  NaturalRep r{ExactMatrix(dout * dout, din * din), live, live_out};

  auto gather = [&](std::size_t x) {
    std::size_t bits = 0;
    for (std::size_t i = 0; i < wires.size(); ++i)
      bits = (bits << 1) | ((x >> (live - 1 - wires[i])) & 1);
    return bits;
  };

  if (g.in_qubits == g.out_qubits) {
    // Unitary-style lift: wires keep their positions.
    std::size_t gdim = std::size_t{1} << g.in_qubits;
    auto scatter = [&](std::size_t x, std::size_t bits) {
      for (std::size_t i = 0; i < wires.size(); ++i) {
        std::size_t pos = live - 1 - wires[i];
        std::size_t b = (bits >> (wires.size() - 1 - i)) & 1;
        x = (x & ~(std::size_t{1} << pos)) | (b << pos);
      }
      return x;
    };
    for (std::size_t y = 0; y < din; ++y)
      for (std::size_t z = 0; z < din; ++z) {
        std::size_t a = gather(y), b = gather(z);
        for (std::size_t ap = 0; ap < gdim; ++ap)
          for (std::size_t bp = 0; bp < gdim; ++bp) {
            const Dyadic& e = g.mat.at(ap * gdim + bp, a * gdim + b);
            if (e.is_zero()) continue;
            r.mat.at(scatter(y, ap) * din + scatter(z, bp), y * din + z) = e;
          }
      }
    return r;
  }
  if (g.in_qubits == 0 && g.out_qubits == 1) {
    for (std::size_t y = 0; y < din; ++y)
      for (std::size_t z = 0; z < din; ++z)
        r.mat.at((y << 1) * dout + (z << 1), y * din + z) = g.mat.at(0, 0);
    return r;
  }
  if (g.in_qubits == 1 && g.out_qubits == 0) {
    std::size_t pos = live - 1 - wires[0];
    for (std::size_t y = 0; y < din; ++y)
      for (std::size_t z = 0; z < din; ++z) {
        std::size_t a = (y >> pos) & 1, b = (z >> pos) & 1;
        const Dyadic& e = g.mat.at(0, a * 2 + b);
        if (e.is_zero()) continue;
        r.mat.at(detail::remove_bit(y, pos) * dout + detail::remove_bit(z, pos),
                 y * din + z) += e;
      }
    return r;
  }
  throw std::invalid_argument("lift: unsupported arity combination");
}

/// Applies one gate's channel to a vectorized state (sparse, in place of
/// multiplying by the lifted matrix). Returns the new live count.
inline std::size_t apply_gate_to_vec(const Gate& gate, std::size_t live,
                                     std::vector<Dyadic>& v) {
  std::size_t dim = std::size_t{1} << live;
  if (v.size() != dim * dim) throw std::invalid_argument("apply_gate_to_vec: size mismatch");
  const Dyadic half(1, 0, 1);
  const Dyadic plus_i(0, 1, 0), minus_i(0, -1, 0);

  switch (gate.kind) {
    case GateKind::Hadamard: {
      std::size_t pos = live - 1 - gate.wires[0];
      std::vector<Dyadic> out(v.size());
      for (std::size_t y = 0; y < dim; ++y)
        for (std::size_t z = 0; z < dim; ++z) {
          const Dyadic& e = v[y * dim + z];
          if (e.is_zero()) continue;
          std::size_t a = (y >> pos) & 1, b = (z >> pos) & 1;
          Dyadic he = half * e;
          for (std::size_t ap = 0; ap < 2; ++ap)
            for (std::size_t bp = 0; bp < 2; ++bp) {
              std::size_t yp = (y & ~(std::size_t{1} << pos)) | (ap << pos);
              std::size_t zp = (z & ~(std::size_t{1} << pos)) | (bp << pos);
              if ((a & ap) ^ (b & bp))
                out[yp * dim + zp] -= he;
              else
                out[yp * dim + zp] += he;
            }
        }
      v = std::move(out);
      return live;
    }
    case GateKind::Phase: {
      std::size_t pos = live - 1 - gate.wires[0];
      for (std::size_t y = 0; y < dim; ++y)
        for (std::size_t z = 0; z < dim; ++z) {
          std::size_t a = (y >> pos) & 1, b = (z >> pos) & 1;
          if (a == b) continue;
          Dyadic& e = v[y * dim + z];
          if (e.is_zero()) continue;
          e *= (a ? plus_i : minus_i);
        }
      return live;
    }
    case GateKind::Toffoli: {
      std::size_t p1 = live - 1 - gate.wires[0];
      std::size_t p2 = live - 1 - gate.wires[1];
      std::size_t pt = live - 1 - gate.wires[2];
      auto perm = [&](std::size_t x) {
        return ((x >> p1) & (x >> p2) & 1) ? x ^ (std::size_t{1} << pt) : x;
      };
      std::vector<Dyadic> out(v.size());
      for (std::size_t y = 0; y < dim; ++y)
        for (std::size_t z = 0; z < dim; ++z) {
          Dyadic& e = v[y * dim + z];
          if (e.is_zero()) continue;
          out[perm(y) * dim + perm(z)] = std::move(e);
        }
      v = std::move(out);
      return live;
    }
    case GateKind::Ancilla: {
      detail::check_push_cap(live + 1);
      std::size_t dout = dim << 1;
      std::vector<Dyadic> out(dout * dout);
      for (std::size_t y = 0; y < dim; ++y)
        for (std::size_t z = 0; z < dim; ++z) {
          Dyadic& e = v[y * dim + z];
          if (e.is_zero()) continue;
          out[(y << 1) * dout + (z << 1)] = std::move(e);
        }
      v = std::move(out);
      return live + 1;
    }
    case GateKind::Erasure: {
      std::size_t pos = live - 1 - gate.wires[0];
      std::size_t dout = dim >> 1;
      std::vector<Dyadic> out(dout * dout);
      for (std::size_t y = 0; y < dim; ++y)
        for (std::size_t z = 0; z < dim; ++z) {
          const Dyadic& e = v[y * dim + z];
          if (e.is_zero()) continue;
          if (((y >> pos) & 1) != ((z >> pos) & 1)) continue;
          out[detail::remove_bit(y, pos) * dout + detail::remove_bit(z, pos)] += e;
        }
      v = std::move(out);
      return live - 1;
    }
  }
  throw std::logic_error("apply_gate_to_vec: bad kind");
}

/// Adjoint (Heisenberg) action of one gate on a vectorized effect. The
/// state flows backwards: `live` is the qubit count on the gate's OUTPUT
/// side, the return value the count on its input side.
inline std::size_t apply_gate_adjoint_to_vec(const Gate& gate, std::size_t live,
                                             std::vector<Dyadic>& v) {
  std::size_t dim = std::size_t{1} << live;
  if (v.size() != dim * dim)
    throw std::invalid_argument("apply_gate_adjoint_to_vec: size mismatch");
  const Dyadic plus_i(0, 1, 0), minus_i(0, -1, 0);

  switch (gate.kind) {
    case GateKind::Hadamard:
    case GateKind::Toffoli:
      // Self-adjoint channels: K is real symmetric (H) or a symmetric
      // permutation (Toffoli), so the adjoint action coincides.
      return apply_gate_to_vec(gate, live, v);
    case GateKind::Phase: {
      std::size_t pos = live - 1 - gate.wires[0];
      for (std::size_t y = 0; y < dim; ++y)
        for (std::size_t z = 0; z < dim; ++z) {
          std::size_t a = (y >> pos) & 1, b = (z >> pos) & 1;
          if (a == b) continue;
          Dyadic& e = v[y * dim + z];
          if (e.is_zero()) continue;
          e *= (a ? minus_i : plus_i);
        }
      return live;
    }
    case GateKind::Ancilla: {
      // Adjoint of appending |0>: restrict to the (0,0) block of the
      // last qubit and drop it.
      std::size_t dout = dim >> 1;
      std::vector<Dyadic> out(dout * dout);
      for (std::size_t y = 0; y < dout; ++y)
        for (std::size_t z = 0; z < dout; ++z)
          out[y * dout + z] = std::move(v[(y << 1) * dim + (z << 1)]);
      v = std::move(out);
      return live - 1;
    }
    case GateKind::Erasure: {
      // Adjoint of the trace: tensor an identity back in at the wire.
      detail::check_push_cap(live + 1);
      std::size_t pos = live - gate.wires[0];  // position in the (live+1)-register
      std::size_t dout = dim << 1;
      std::vector<Dyadic> out(dout * dout);
      for (std::size_t y = 0; y < dim; ++y)
        for (std::size_t z = 0; z < dim; ++z) {
          const Dyadic& e = v[y * dim + z];
          if (e.is_zero()) continue;
          for (std::size_t bit = 0; bit < 2; ++bit)
            out[detail::insert_bit(y, pos, bit) * dout +
                detail::insert_bit(z, pos, bit)] = e;
        }
      v = std::move(out);
      return live + 1;
    }
  }
  throw std::logic_error("apply_gate_adjoint_to_vec: bad kind");
}

/// Full channel matrix of a circuit, built by pushing vectorized basis
/// states through the gate list (equal to the ordered product of lifted
/// gate reps).
inline NaturalRep circuit_rep(const Circuit& c) {
  ValidationReport vr = validate(c);
  if (!vr.ok)
    throw std::invalid_argument("circuit_rep: invalid circuit at gate " +
                                std::to_string(vr.gate_index) + ": " + vr.message);
  detail::check_push_cap(max_live(c));
  std::size_t out_q = output_count(c);
  std::size_t din = std::size_t{1} << c.inputs, dout = std::size_t{1} << out_q;
  NaturalRep r{ExactMatrix(dout * dout, din * din), c.inputs, out_q};
  for (std::size_t col = 0; col < din * din; ++col) {
    std::vector<Dyadic> v(din * din);
    v[col] = Dyadic(1);
    std::size_t live = c.inputs;
    for (const Gate& g : c.gates) live = apply_gate_to_vec(g, live, v);
    for (std::size_t row = 0; row < dout * dout; ++row)
      if (!v[row].is_zero()) r.mat.at(row, col) = std::move(v[row]);
  }
  return r;
}

/// Phi(rho) through the materialized channel matrix.
inline ExactMatrix apply_channel(const NaturalRep& rep, const ExactMatrix& rho) {
  std::size_t din = std::size_t{1} << rep.in_qubits;
  if (rho.rows() != din || rho.cols() != din)
    throw std::invalid_argument("apply_channel: state dimension mismatch");
  std::vector<Dyadic> in = vec(rho);
  std::vector<Dyadic> out(rep.mat.rows());
  for (std::size_t i = 0; i < rep.mat.rows(); ++i) {
    Dyadic acc;
    for (std::size_t j = 0; j < rep.mat.cols(); ++j) {
      const Dyadic& k = rep.mat.at(i, j);
      if (k.is_zero() || in[j].is_zero()) continue;
      acc += k * in[j];
    }
    out[i] = std::move(acc);
  }
  return unvec(out, rep.out_qubits);
}

/// Phi*(effect): the conjugate-transposed channel matrix applied to
/// vec(effect), pulling an output-side observable back to the input.
inline ExactMatrix adjoint_apply(const NaturalRep& rep, const ExactMatrix& effect) {
  std::size_t dout = std::size_t{1} << rep.out_qubits;
  if (effect.rows() != dout || effect.cols() != dout)
    throw std::invalid_argument("adjoint_apply: effect dimension mismatch");
  std::vector<Dyadic> in = vec(effect);
  std::vector<Dyadic> out(rep.mat.cols());
  for (std::size_t i = 0; i < rep.mat.rows(); ++i) {
    if (in[i].is_zero()) continue;
    for (std::size_t j = 0; j < rep.mat.cols(); ++j) {
      const Dyadic& k = rep.mat.at(i, j);
      if (k.is_zero()) continue;
      out[j] += k.conj() * in[i];
    }
  }
  return unvec(out, rep.in_qubits);
}

/// Phi(rho) by streaming gate application (no materialized channel
/// matrix; scales to max_push_qubits live wires).
inline ExactMatrix apply_circuit(const Circuit& c, const ExactMatrix& rho) {
  ValidationReport vr = validate(c);
  if (!vr.ok) throw std::invalid_argument("apply_circuit: " + vr.message);
  detail::check_push_cap(max_live(c));
  if (rho.rows() != (std::size_t{1} << c.inputs) || rho.rows() != rho.cols())
    throw std::invalid_argument("apply_circuit: state dimension mismatch");
  std::vector<Dyadic> v = vec(rho);
  std::size_t live = c.inputs;
  for (const Gate& g : c.gates) live = apply_gate_to_vec(g, live, v);
  return unvec(v, live);
}

/// Phi*(effect) by streaming adjoint gate application in reverse order.
inline ExactMatrix adjoint_apply_circuit(const Circuit& c, const ExactMatrix& effect) {
  ValidationReport vr = validate(c);
  if (!vr.ok) throw std::invalid_argument("adjoint_apply_circuit: " + vr.message);
  detail::check_push_cap(max_live(c));
  std::size_t out_q = output_count(c);
  if (effect.rows() != (std::size_t{1} << out_q) || effect.rows() != effect.cols())
    throw std::invalid_argument("adjoint_apply_circuit: effect dimension mismatch");

  // Live counts entering each gate, for the backward sweep.
  std::vector<std::size_t> live_in(c.gates.size());
  std::size_t live = c.inputs;
  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    live_in[g] = live;
    if (c.gates[g].kind == GateKind::Ancilla) ++live;
    if (c.gates[g].kind == GateKind::Erasure) --live;
  }

  std::vector<Dyadic> v = vec(effect);
  for (std::size_t g = c.gates.size(); g-- > 0;) {
    std::size_t got = apply_gate_adjoint_to_vec(c.gates[g], live, v);
    if (got != live_in[g])
      throw std::logic_error("adjoint_apply_circuit: live count desync");
    live = got;
  }
  return unvec(v, c.inputs);
}

}  // namespace qrg
