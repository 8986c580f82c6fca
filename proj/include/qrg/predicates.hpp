#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qrg/exact_matrix.hpp"
#include "qrg/game_solver.hpp"
#include "qrg/gap_functions.hpp"
#include "qrg/natural_rep.hpp"
#include "qrg/sparsify.hpp"

namespace qrg {

/// Deterministic membership test over binary strings.
struct Predicate {
  std::function<bool(const std::string&)> membership;
  std::string description;
};

/// Exact-integer certificate for the trace-power threshold test on
/// P = (1/N) sum_j (I - S_{y_j}).
///
/// H = 2^{2rm} N^{2m} Tr(P^{2m}) and K = 2^{2rm} N^{2m} - 3^m H are exact
/// integers; accept means K > 0. Guarantees: lambda_min(avg S) >= 2/3
/// implies accept, <= 1/3 implies reject; strictly in between either
/// decision may come out and only the algebra is promised.
struct TracePowerCertificate {
  Int H_value;
  Int K_value;
  std::uint64_t r = 0;  ///< effect-operator scaling exponent
  std::size_t m = 0;    ///< operator qubit count (dimension 2^m)
  std::size_t N = 0;    ///< tuple length
  bool accept = false;
};

namespace detail {

inline Int int_pow(Int base, std::uint64_t e) {
  Int acc = 1;
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

/// Exact integer 2^{shift} * Tr(A^e); throws if the trace is not real
/// or the shift does not clear the denominator.
inline Int shifted_trace_power(const ExactMatrix& a, std::size_t e, std::uint64_t shift,
                               const char* who) {
  Dyadic tp = mat_trace_power(a, e);
  if (!tp.is_real())
    throw std::logic_error(std::string(who) + ": trace power has nonzero imaginary part");
  Dyadic scaled = tp.times_two_pow(static_cast<std::int64_t>(shift));
  if (!scaled.is_integer())
    throw std::logic_error(std::string(who) + ": scaled trace power is not an integer");
  return scaled.num_re();
}

}  // namespace detail

inline TracePowerCertificate trace_power_decide(const EffectOperatorMap& s,
                                                const StrategyTuple& t) {
  if (t.strings.empty())
    throw std::invalid_argument("trace_power_decide: empty tuple");
  if (s.bob_bits == 0)
    throw std::invalid_argument("trace_power_decide: scalar operator space");

  std::size_t m = s.bob_bits;
  std::size_t dim = std::size_t{1} << m;
  std::size_t n = t.strings.size();

  Dyadic count(static_cast<long long>(n));
  ExactMatrix sum_t = count * ExactMatrix::identity(dim);
  for (const std::string& y : t.strings)
    sum_t = sum_t - s.exact[detail::outcome_index(y, s.outcome_bits)];

  TracePowerCertificate cert;
  cert.r = s.scaling_exponent;
  cert.m = m;
  cert.N = n;
  std::uint64_t shift = 2 * cert.r * static_cast<std::uint64_t>(m);
  cert.H_value = detail::shifted_trace_power(sum_t, 2 * m, shift, "trace_power_decide");
  cert.K_value = (Int(1) << shift) * detail::int_pow(Int(static_cast<unsigned long>(n)), 2 * m) -
                 detail::int_pow(3, m) * cert.H_value;
  cert.accept = cert.K_value > 0;
  return cert;
}

inline TracePowerCertificate trace_power_decide(const Referee& r, const StrategyTuple& t) {
  return trace_power_decide(effect_operators(r), t);
}

/// Exact-integer certificate for the measured-circuit acceptance test.
///
/// R = sum_{u in B} Phi*(|u><u|) for the circuit's channel Phi;
/// G = 2^{(n+1)r} Tr(R^{n+1}) and H = 3^{n+1} G - 2^{(n+1)r + n}.
/// lambda_max(R) >= 2/3 implies H > 0; <= 1/3 implies H <= 0.
struct MeasuredAcceptCertificate {
  Int G_value;
  Int H_value;
  std::uint64_t r = 0;  ///< circuit size
  std::size_t n = 0;    ///< input qubit count
  bool accept = false;
};

inline MeasuredAcceptCertificate qma_pc_decide(const Circuit& p_circuit,
                                               const Predicate& b) {
  ValidationReport v = validate(p_circuit);
  if (!v.ok) throw std::invalid_argument("qma_pc_decide: " + v.message);
  std::size_t n = p_circuit.inputs;
  std::size_t k = output_count(p_circuit);
  if ((std::size_t{1} << n) > max_matrix_dim())
    throw std::runtime_error("qma_pc_decide: input register exceeds the matrix cap");

  std::size_t din = std::size_t{1} << n;
  std::size_t dout = std::size_t{1} << k;
  ExactMatrix r_mat(din, din);
  std::string u(k, '0');
  for (std::size_t code = 0; code < dout; ++code) {
    for (std::size_t b_idx = 0; b_idx < k; ++b_idx)
      u[b_idx] = (code >> (k - 1 - b_idx)) & 1 ? '1' : '0';
    if (!b.membership(u)) continue;
    ExactMatrix point(dout, dout);
    point.at(code, code) = Dyadic(1);
    r_mat = r_mat + adjoint_apply_circuit(p_circuit, point);
  }

  MeasuredAcceptCertificate cert;
  cert.r = circuit_size(p_circuit);
  cert.n = n;
  std::uint64_t shift = (static_cast<std::uint64_t>(n) + 1) * cert.r;
  cert.G_value = detail::shifted_trace_power(r_mat, n + 1, shift, "qma_pc_decide");
  cert.H_value = detail::int_pow(3, n + 1) * cert.G_value -
                 (Int(1) << (shift + static_cast<std::uint64_t>(n)));
  cert.accept = cert.H_value > 0;
  return cert;
}

/// Existential search over all outcome tuples of a fixed length.
struct ExistsPpResult {
  bool accept = false;
  StrategyTuple witness;               ///< first accepting tuple, if any
  TracePowerCertificate certificate;   ///< its certificate (else the last examined)
  std::size_t examined = 0;
};

inline ExistsPpResult exists_pp_decide(const Referee& r, std::size_t count) {
  if (count == 0) throw std::invalid_argument("exists_pp_decide: empty tuple size");
  EffectOperatorMap s = effect_operators(r);
  std::size_t alpha = std::size_t{1} << s.outcome_bits;
  double total = std::pow(static_cast<double>(alpha), static_cast<double>(count));
  if (total > 1e6)
    throw std::runtime_error("exists_pp_decide: enumeration cap exceeded: need " +
                             std::to_string(total) + " tuples, cap is 1000000");

  ExistsPpResult res;
  std::size_t tuples = static_cast<std::size_t>(total);
  for (std::size_t code = 0; code < tuples; ++code) {
    std::size_t rem = code;
    StrategyTuple t;
    t.n = s.outcome_bits;
    for (std::size_t j = 0; j < count; ++j) {
      std::size_t y = rem % alpha;
      rem /= alpha;
      std::string str(s.outcome_bits, '0');
      for (std::size_t b = 0; b < s.outcome_bits; ++b)
        str[b] = (y >> (s.outcome_bits - 1 - b)) & 1 ? '1' : '0';
      t.strings.push_back(std::move(str));
    }
    res.certificate = trace_power_decide(s, t);
    ++res.examined;
    if (res.certificate.accept) {
      res.accept = true;
      res.witness = std::move(t);
      return res;
    }
  }
  return res;
}

/// Sign test on a gap function: accept iff g(x) > 0.
inline bool p_pp_sign_decide(const GapFunction& g, const std::string& x) {
  return gap_eval(g, x) > 0;
}

}  // namespace qrg
