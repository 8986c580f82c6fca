#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qrg/corpus.hpp"
#include "qrg/gap_functions.hpp"
#include "qrg/natural_rep.hpp"
#include "qrg/rng.hpp"

namespace qrg {

struct SuiteCheck {
  std::string name;
  std::size_t instances = 0;
  std::size_t matches = 0;
  bool pass() const { return instances == matches; }
};

/// Leaf whose value is a pseudo-random function of the input, ranging
/// over [-2^len, 2^len]. Deterministic in (salt, input).
inline GapFunction random_gap_leaf(std::uint64_t salt, std::size_t len) {
  auto v = [salt, len](const std::string& x) {
    std::uint64_t h = salt;
    for (char c : x) h = mix64(h * 31 + static_cast<unsigned char>(c));
    h = mix64(h);
    std::uint64_t span = 2 * (std::uint64_t{1} << len) + 1;
    return Int(static_cast<std::int64_t>(h % span) -
               static_cast<std::int64_t>(std::uint64_t{1} << len));
  };
  return gap_from_value(v, len);
}

namespace detail {

inline std::string index_bits(std::size_t value, std::size_t len) {
  std::string s(len, '0');
  for (std::size_t b = 0; b < len; ++b)
    s[b] = (value >> (len - 1 - b)) & 1 ? '1' : '0';
  return s;
}

}  // namespace detail

/// Channel-entry agreement: the integer path-sum DP against materialized
/// natural representations, every entry of every corpus circuit.
inline SuiteCheck check_amplitude_vs_channel(const std::vector<Circuit>& corpus) {
  SuiteCheck chk;
  chk.name = "amplitude_path_sum_equals_channel_entry";
  for (const Circuit& c : corpus) {
    ++chk.instances;
    NaturalRep rep = circuit_rep(c);
    std::size_t din = std::size_t{1} << rep.in_qubits;
    std::size_t dout = std::size_t{1} << rep.out_qubits;
    std::uint32_t r = static_cast<std::uint32_t>(circuit_size(c));
    bool all = true;
    for (std::size_t z = 0; z < din && all; ++z)
      for (std::size_t w = 0; w < din && all; ++w) {
        AmplitudeColumn col = circuit_amplitude_column(c, z, w);
        for (std::size_t uv = 0; uv < dout * dout; ++uv) {
          Dyadic expect = rep.mat.at(uv, z * din + w);
          Dyadic got(col.entries[uv].first, col.entries[uv].second, r);
          if (!(expect == got)) {
            all = false;
            break;
          }
        }
      }
    if (all) ++chk.matches;
  }
  return chk;
}

/// Sum combinator against its defining formula, by independent
/// enumeration and by construction arithmetic.
inline SuiteCheck check_sum_combinator(std::uint64_t seed, std::size_t instances) {
  SuiteCheck chk;
  chk.name = "sum_combinator_equals_direct";
  Rng rng(seed);
  for (std::size_t i = 0; i < instances; ++i) {
    ++chk.instances;
    GapFunction f = random_gap_leaf(rng.next_u64(), rng.below(3));
    std::size_t p = 1 + rng.below(3);
    std::string x = rng.bitstring(rng.below(4));
    Int direct = 0;
    std::size_t span = std::size_t{1} << p;
    for (std::size_t y = 0; y < span; ++y)
      direct += gap_eval(f, pair_encode(x, detail::index_bits(y, p)));
    GapFunction g = gap_sum(f, p);
    if (gap_eval(g, x) == direct && gap_eval_semantic(g, x) == direct) ++chk.matches;
  }
  return chk;
}

/// Product combinator against its defining formula.
inline SuiteCheck check_product_combinator(std::uint64_t seed, std::size_t instances) {
  SuiteCheck chk;
  chk.name = "product_combinator_equals_direct";
  Rng rng(seed);
  for (std::size_t i = 0; i < instances; ++i) {
    ++chk.instances;
    GapFunction f = random_gap_leaf(rng.next_u64(), rng.below(3));
    std::size_t p = 1 + rng.below(3);
    std::string x = rng.bitstring(rng.below(4));
    Int direct = 1;
    for (std::size_t k = 0; k < p; ++k)
      direct *= gap_eval(f, pair_encode(x, unit_string(p, k)));
    GapFunction g = gap_product(f, p);
    if (gap_eval(g, x) == direct && gap_eval_semantic(g, x) == direct) ++chk.matches;
  }
  return chk;
}

/// Matrix-product combinator against a direct complex integer matrix
/// power, all entries, enumeration and semantics.
inline SuiteCheck check_matrix_product_combinator(std::uint64_t seed,
                                                  std::size_t instances) {
  SuiteCheck chk;
  chk.name = "matrix_product_combinator_equals_direct";
  Rng rng(seed);
  using CInt = std::pair<Int, Int>;
  for (std::size_t i = 0; i < instances; ++i) {
    ++chk.instances;
    GapFunction f0 = random_gap_leaf(rng.next_u64(), rng.below(3));
    GapFunction f1 = random_gap_leaf(rng.next_u64(), rng.below(3));
    std::size_t p = 1 + rng.below(2);
    std::size_t q = 1 + rng.below(3);
    if (p == 2 && q == 3) q = 2;  // keep enumeration tiny
    std::string x = rng.bitstring(rng.below(3));
    std::size_t dim = std::size_t{1} << p;

    auto entry = [&](std::size_t k, std::size_t z, std::size_t w) {
      std::string t = tuple_encode(
          {x, unit_string(q, k), detail::index_bits(z, p), detail::index_bits(w, p)});
      return CInt{gap_eval(f0, t), gap_eval(f1, t)};
    };
    std::vector<CInt> prod(dim * dim);
    for (std::size_t z = 0; z < dim; ++z)
      for (std::size_t w = 0; w < dim; ++w) prod[z * dim + w] = entry(0, z, w);
    for (std::size_t k = 1; k < q; ++k) {
      std::vector<CInt> next(dim * dim);
      for (std::size_t z = 0; z < dim; ++z)
        for (std::size_t w = 0; w < dim; ++w) {
          Int re = 0, im = 0;
          for (std::size_t t = 0; t < dim; ++t) {
            CInt a = prod[z * dim + t];
            CInt b = entry(k, t, w);
            re += a.first * b.first - a.second * b.second;
            im += a.first * b.second + a.second * b.first;
          }
          next[z * dim + w] = {std::move(re), std::move(im)};
        }
      prod = std::move(next);
    }

    GapPair g = gap_matrix_product(f0, f1, p, q);
    bool all = true;
    for (std::size_t z = 0; z < dim && all; ++z)
      for (std::size_t w = 0; w < dim && all; ++w) {
        std::string in =
            tuple_encode({x, detail::index_bits(z, p), detail::index_bits(w, p)});
        const CInt& want = prod[z * dim + w];
        all = gap_eval(g.g0, in) == want.first && gap_eval(g.g1, in) == want.second &&
              gap_eval_semantic(g.g0, in) == want.first &&
              gap_eval_semantic(g.g1, in) == want.second;
      }
    if (all) ++chk.matches;
  }
  return chk;
}

inline std::vector<SuiteCheck> run_gap_suite(std::uint64_t seed,
                                             std::size_t combinator_instances,
                                             std::size_t circuit_count) {
  CircuitShape shape;
  std::vector<SuiteCheck> out;
  out.push_back(check_amplitude_vs_channel(
      corpus_circuits(mix64(seed ^ 0xa5a5a5a5ULL), circuit_count, shape)));
  out.push_back(check_sum_combinator(mix64(seed + 1), combinator_instances));
  out.push_back(check_product_combinator(mix64(seed + 2), combinator_instances));
  out.push_back(check_matrix_product_combinator(mix64(seed + 3), combinator_instances));
  return out;
}

}  // namespace qrg
