#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qrg/circuit.hpp"
#include "qrg/dyadic.hpp"
#include "qrg/natural_rep.hpp"

namespace qrg {

/// Cap (in bits) on full witness enumeration, default 2^20 strings.
inline std::size_t& gap_enum_cap() {
  static std::size_t cap = 20;
  return cap;
}

/// Prefix-free pairing: <x, y> = 0x_1 0x_2 ... 0x_n 1 y. Self-delimiting
/// in the first component, so the pair (and left-nested tuples) decode
/// uniquely.
inline std::string pair_encode(const std::string& x, const std::string& y) {
  std::string s;
  s.reserve(2 * x.size() + 1 + y.size());
  for (char c : x) {
    s.push_back('0');
    s.push_back(c);
  }
  s.push_back('1');
  s += y;
  return s;
}

inline std::pair<std::string, std::string> pair_decode(const std::string& s) {
  std::string x;
  std::size_t i = 0;
  while (i < s.size() && s[i] == '0') {
    if (i + 1 >= s.size())
      throw std::invalid_argument("pair_decode: dangling marker in '" + s + "'");
    x.push_back(s[i + 1]);
    i += 2;
  }
  if (i >= s.size() || s[i] != '1')
    throw std::invalid_argument("pair_decode: missing separator in '" + s + "'");
  return {x, s.substr(i + 1)};
}

/// Left-nested tuple: <x1, x2, x3> = <<x1, x2>, x3>.
inline std::string tuple_encode(const std::vector<std::string>& parts) {
  if (parts.empty()) throw std::invalid_argument("tuple_encode: empty tuple");
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s = pair_encode(s, parts[i]);
  return s;
}

inline std::vector<std::string> tuple_decode(const std::string& s, std::size_t parts) {
  if (parts == 0) throw std::invalid_argument("tuple_decode: empty tuple");
  std::vector<std::string> out(parts);
  std::string rest = s;
  for (std::size_t i = parts; i-- > 1;) {
    auto [x, y] = pair_decode(rest);
    out[i] = y;
    rest = x;
  }
  out[0] = rest;
  return out;
}

/// A gap function f(x) = #{w : A accepts (x,w)} - #{w : B accepts (x,w)}
/// over witnesses w of a fixed input-dependent length. `semantic`, when
/// set, evaluates the same value by the defining arithmetic of the
/// construction that produced this function (sums / products / path sums
/// over sub-values) instead of witness enumeration.
struct GapFunction {
  std::function<bool(const std::string&, const std::string&)> accept_a;
  std::function<bool(const std::string&, const std::string&)> accept_b;
  std::function<std::size_t(const std::string&)> witness_len;
  std::function<Int(const std::string&)> semantic;
};

/// Witness-counting evaluation (full enumeration; aborts over the cap).
inline Int gap_eval(const GapFunction& f, const std::string& x) {
  std::size_t len = f.witness_len(x);
  if (len > gap_enum_cap())
    throw std::runtime_error("gap_eval: enumeration cap exceeded: need 2^" +
                             std::to_string(len) + " witnesses, cap is 2^" +
                             std::to_string(gap_enum_cap()));
  Int count = 0;
  std::string w(len, '0');
  for (std::size_t idx = 0; idx < (std::size_t{1} << len); ++idx) {
    for (std::size_t b = 0; b < len; ++b) w[b] = (idx >> (len - 1 - b)) & 1 ? '1' : '0';
    if (f.accept_a(x, w)) ++count;
    if (f.accept_b(x, w)) --count;
  }
  return count;
}

/// Construction-arithmetic evaluation; falls back to enumeration for
/// leaf functions that carry no semantic evaluator.
inline Int gap_eval_semantic(const GapFunction& f, const std::string& x) {
  if (f.semantic) return f.semantic(x);
  return gap_eval(f, x);
}

/// Leaf carrying an explicit integer value: v(x) >= 0 counts the first
/// v(x) witnesses into A, negatives go to B. The witness budget 2^len
/// must cover |v(x)|; evaluation aborts otherwise.
inline GapFunction gap_from_value(std::function<Int(const std::string&)> v,
                                  std::size_t len) {
  auto fits = [len](const Int& val) {
    Int bound = Int(1) << len;
    if (val > bound || -val > bound)
      throw std::runtime_error("gap_from_value: witness budget exceeded: |" +
                               val.str() + "| > 2^" + std::to_string(len));
  };
  auto index_of = [](const std::string& w) {
    Int idx = 0;
    for (char c : w) idx = (idx << 1) | (c == '1' ? 1 : 0);
    return idx;
  };
  GapFunction g;
  g.accept_a = [v, fits, index_of](const std::string& x, const std::string& w) {
    Int val = v(x);
    fits(val);
    return val > 0 && index_of(w) < val;
  };
  g.accept_b = [v, fits, index_of](const std::string& x, const std::string& w) {
    Int val = v(x);
    fits(val);
    return val < 0 && index_of(w) < -val;
  };
  g.witness_len = [len](const std::string&) { return len; };
  g.semantic = std::move(v);
  return g;
}

inline GapFunction gap_neg(GapFunction f) {
  GapFunction g;
  g.accept_a = f.accept_b;
  g.accept_b = f.accept_a;
  g.witness_len = f.witness_len;
  if (f.semantic)
    g.semantic = [f = std::move(f)](const std::string& x) { return -f.semantic(x); };
  return g;
}

/// Input rewiring: g(x) = f(map(x)). Value-exact, witnesses unchanged.
inline GapFunction gap_remap(GapFunction f,
                             std::function<std::string(const std::string&)> map) {
  GapFunction g;
  g.accept_a = [f, map](const std::string& x, const std::string& w) {
    return f.accept_a(map(x), w);
  };
  g.accept_b = [f, map](const std::string& x, const std::string& w) {
    return f.accept_b(map(x), w);
  };
  g.witness_len = [f, map](const std::string& x) { return f.witness_len(map(x)); };
  if (f.semantic)
    g.semantic = [f, map](const std::string& x) { return f.semantic(map(x)); };
  return g;
}

/// g(x) = sum over y in Sigma^p of f(<x, y>). Witness: y followed by
/// f's witness for the paired input.
inline GapFunction gap_sum(GapFunction f, std::size_t p) {
  auto split = [f, p](const std::string& x, const std::string& w) {
    std::string paired = pair_encode(x, w.substr(0, p));
    return std::make_pair(std::move(paired), w.substr(p));
  };
  GapFunction g;
  g.accept_a = [f, split](const std::string& x, const std::string& w) {
    auto [xi, wi] = split(x, w);
    if (wi.size() != f.witness_len(xi))
      throw std::logic_error("gap_sum: witness length varies with the summed index");
    return f.accept_a(xi, wi);
  };
  g.accept_b = [f, split](const std::string& x, const std::string& w) {
    auto [xi, wi] = split(x, w);
    if (wi.size() != f.witness_len(xi))
      throw std::logic_error("gap_sum: witness length varies with the summed index");
    return f.accept_b(xi, wi);
  };
  g.witness_len = [f, p](const std::string& x) {
    return p + f.witness_len(pair_encode(x, std::string(p, '0')));
  };
  g.semantic = [f, p](const std::string& x) {
    Int total = 0;
    std::string y(p, '0');
    for (std::size_t idx = 0; idx < (std::size_t{1} << p); ++idx) {
      for (std::size_t b = 0; b < p; ++b) y[b] = (idx >> (p - 1 - b)) & 1 ? '1' : '0';
      total += gap_eval_semantic(f, pair_encode(x, y));
    }
    return total;
  };
  return g;
}

/// Unit string e_k (the k-th of the p strings in Sigma^p with exactly
/// one 1), k = 0..p-1 counted from the left.
inline std::string unit_string(std::size_t p, std::size_t k) {
  std::string y(p, '0');
  y[k] = '1';
  return y;
}

/// g(x) = product over k of f(<x, e_k>), via disjointified factor
/// languages and parity-split witness predicates. Witness: the
/// concatenation z_1 ... z_p of per-factor witnesses.
inline GapFunction gap_product(GapFunction f, std::size_t p) {
  if (p == 0) throw std::invalid_argument("gap_product: needs at least one factor");
  // Factor sign under disjointification: +1 in A only, -1 in B only,
  // 0 in both or neither (such witnesses never count).
  auto factor_sign = [f](const std::string& xi, const std::string& wi) {
    bool a = f.accept_a(xi, wi), b = f.accept_b(xi, wi);
    return a == b ? 0 : (a ? 1 : -1);
  };
  auto product_sign = [f, p, factor_sign](const std::string& x, const std::string& w) {
    std::size_t offset = 0;
    int sign = 1;
    for (std::size_t k = 0; k < p; ++k) {
      std::string xi = pair_encode(x, unit_string(p, k));
      std::size_t fl = f.witness_len(xi);
      int s = factor_sign(xi, w.substr(offset, fl));
      if (s == 0) return 0;
      offset += fl;
      sign *= s;
    }
    return sign;
  };
  GapFunction g;
  g.accept_a = [product_sign](const std::string& x, const std::string& w) {
    return product_sign(x, w) > 0;
  };
  g.accept_b = [product_sign](const std::string& x, const std::string& w) {
    return product_sign(x, w) < 0;
  };
  g.witness_len = [f, p](const std::string& x) {
    std::size_t total = 0;
    for (std::size_t k = 0; k < p; ++k)
      total += f.witness_len(pair_encode(x, unit_string(p, k)));
    return total;
  };
  g.semantic = [f, p](const std::string& x) {
    Int prod = 1;
    for (std::size_t k = 0; k < p; ++k) {
      prod *= gap_eval_semantic(f, pair_encode(x, unit_string(p, k)));
      if (prod == 0) return prod;
    }
    return prod;
  };
  return g;
}

struct GapPair {
  GapFunction g0;  ///< real part
  GapFunction g1;  ///< imaginary part
};

/// Entries of the ordered product M_1 ... M_q of complex integer-matrix
/// families: (M_k)_{z,w} = f0(<x, e_k, z, w>) + i f1(<x, e_k, z, w>) with
/// z, w in Sigma^p. Returns gap functions (g0, g1) on input <x, z, w>
/// for the real and imaginary parts of the product entry, built from the
/// 2x2 real block lift h, the product over unit strings, and a sum over
/// interior path nodes.
inline GapPair gap_matrix_product(GapFunction f0, GapFunction f1, std::size_t p,
                                  std::size_t q) {
  if (q == 0) throw std::invalid_argument("gap_matrix_product: needs at least one factor");

  // h on input <x, y, u, v>, u = a z, v = b w in Sigma^{p+1}:
  //   h(.., 0z, 0w) = f0   h(.., 0z, 1w) = f1
  //   h(.., 1z, 0w) = -f1  h(.., 1z, 1w) = f0
  // Witnesses are padded to the longer of the two branch lengths; pad
  // bits must be zero, which preserves the counted value.
  auto pick = [f0, f1](const std::string& input, auto&& use) {
    auto parts = tuple_decode(input, 4);
    const std::string& u = parts[2];
    const std::string& v = parts[3];
    if (u.empty() || v.empty())
      throw std::invalid_argument("gap_matrix_product: empty block index");
    std::string inner = tuple_encode({parts[0], parts[1], u.substr(1), v.substr(1)});
    bool a = u[0] == '1', b = v[0] == '1';
    const GapFunction& f = (a == b) ? f0 : f1;
    bool negate = a && !b;
    return use(f, negate, inner);
  };
  auto padded_accept = [pick, f0, f1](const std::string& x, const std::string& w,
                                      bool first_language) {
    return pick(x, [&](const GapFunction& f, bool neg, const std::string& in) {
      std::size_t lf = f.witness_len(in);
      if (w.size() < lf) throw std::logic_error("gap_matrix_product: short witness");
      if (w.find('1', lf) != std::string::npos) return false;
      const std::string head = w.substr(0, lf);
      bool want_a = first_language != neg;
      return want_a ? f.accept_a(in, head) : f.accept_b(in, head);
    });
  };
  GapFunction h;
  h.accept_a = [padded_accept](const std::string& x, const std::string& w) {
    return padded_accept(x, w, true);
  };
  h.accept_b = [padded_accept](const std::string& x, const std::string& w) {
    return padded_accept(x, w, false);
  };
  h.witness_len = [pick, f0, f1](const std::string& x) {
    return pick(x, [&](const GapFunction&, bool, const std::string& in) {
      return std::max(f0.witness_len(in), f1.witness_len(in));
    });
  };
  h.semantic = [pick](const std::string& x) {
    return pick(x, [&](const GapFunction& f, bool neg, const std::string& in) {
      Int v = gap_eval_semantic(f, in);
      return neg ? Int(-v) : v;
    });
  };

  // Path product G on input <x, u_0 u_1 ... u_q>: the factor for e_k is
  // h(<x, e_k, u_{k-1}, u_k>).
  std::size_t step = p + 1;
  auto path_factor = [h, q, step](const std::string& input) {
    auto [xu, y] = pair_decode(input);
    auto [x, ustr] = pair_decode(xu);
    if (y.size() != q || ustr.size() != (q + 1) * step)
      throw std::invalid_argument("gap_matrix_product: malformed path input");
    std::size_t k = y.find('1');
    return tuple_encode({x, y, ustr.substr(k * step, step), ustr.substr((k + 1) * step, step)});
  };
  GapFunction path_h = gap_remap(h, path_factor);
  GapFunction path_prod = gap_product(std::move(path_h), q);

  // g_bit on input <x, z, w>: fix u_0 = 0z and u_q = (bit)w, sum the path
  // product over the (q-1) interior nodes.
  auto make_g = [&](char bit) {
    auto attach = [step, q, bit](const std::string& input) {
      auto [xz, interior] = pair_decode(input);
      auto parts = tuple_decode(xz, 3);
      if (interior.size() != (q - 1) * step)
        throw std::invalid_argument("gap_matrix_product: malformed interior index");
      std::string ustr = "0" + parts[1] + interior + bit + parts[2];
      return pair_encode(parts[0], ustr);
    };
    return gap_sum(gap_remap(path_prod, attach), (q - 1) * step);
  };
  return {make_g('0'), make_g('1')};
}

/// One channel-matrix entry of a circuit as a pair of integers with the
/// canonical scaling: <u| Q(|z><w|) |v> = (f0 + i f1) / 2^r, r = circuit
/// size. Computed as the integer path sum of the per-gate factors (each
/// gate contributes one factor of 1/2, identity factors pad to r).
struct AmplitudeGap {
  Int f0, f1;
  std::size_t r = 0;
};

namespace detail {

/// Integer path-sum DP: pushes e_(z,w) through the circuit, carrying
/// 2^g * K_partial with g = gates applied so far.
inline std::vector<std::pair<Int, Int>> amplitude_dp(const Circuit& c, std::size_t z,
                                                     std::size_t w) {
  ValidationReport vr = validate(c);
  if (!vr.ok) throw std::invalid_argument("circuit_amplitude_gap: " + vr.message);
  detail::check_push_cap(max_live(c));
  std::size_t din = std::size_t{1} << c.inputs;
  if (z >= din || w >= din)
    throw std::invalid_argument("circuit_amplitude_gap: index out of range");

  std::vector<std::pair<Int, Int>> vcur(din * din);
  vcur[z * din + w] = {1, 0};
  std::size_t live = c.inputs;
  for (const Gate& g : c.gates) {
    std::size_t dim = std::size_t{1} << live;
    switch (g.kind) {
      case GateKind::Hadamard: {
        std::size_t pos = live - 1 - g.wires[0];
        std::vector<std::pair<Int, Int>> out(vcur.size());
        for (std::size_t y = 0; y < dim; ++y)
          for (std::size_t zz = 0; zz < dim; ++zz) {
            auto& e = vcur[y * dim + zz];
            if (e.first == 0 && e.second == 0) continue;
            std::size_t a = (y >> pos) & 1, b = (zz >> pos) & 1;
            for (std::size_t ap = 0; ap < 2; ++ap)
              for (std::size_t bp = 0; bp < 2; ++bp) {
                std::size_t yp = (y & ~(std::size_t{1} << pos)) | (ap << pos);
                std::size_t zp = (zz & ~(std::size_t{1} << pos)) | (bp << pos);
                auto& o = out[yp * dim + zp];
                if ((a & ap) ^ (b & bp)) {
                  o.first -= e.first;
                  o.second -= e.second;
                } else {
                  o.first += e.first;
                  o.second += e.second;
                }
              }
          }
        vcur = std::move(out);
        break;
      }
      case GateKind::Phase: {
        std::size_t pos = live - 1 - g.wires[0];
        for (std::size_t y = 0; y < dim; ++y)
          for (std::size_t zz = 0; zz < dim; ++zz) {
            auto& e = vcur[y * dim + zz];
            if (e.first == 0 && e.second == 0) continue;
            std::size_t a = (y >> pos) & 1, b = (zz >> pos) & 1;
            e.first <<= 1;
            e.second <<= 1;
            if (a == b) continue;
            Int re = std::move(e.first), im = std::move(e.second);
            if (a) {  // multiply by i
              e.first = -im;
              e.second = re;
            } else {  // multiply by -i
              e.first = im;
              e.second = -re;
            }
          }
        break;
      }
      case GateKind::Toffoli: {
        std::size_t p1 = live - 1 - g.wires[0], p2 = live - 1 - g.wires[1],
                    pt = live - 1 - g.wires[2];
        auto perm = [&](std::size_t x) {
          return ((x >> p1) & (x >> p2) & 1) ? x ^ (std::size_t{1} << pt) : x;
        };
        std::vector<std::pair<Int, Int>> out(vcur.size());
        for (std::size_t y = 0; y < dim; ++y)
          for (std::size_t zz = 0; zz < dim; ++zz) {
            auto& e = vcur[y * dim + zz];
            if (e.first == 0 && e.second == 0) continue;
            auto& o = out[perm(y) * dim + perm(zz)];
            o.first = e.first << 1;
            o.second = e.second << 1;
          }
        vcur = std::move(out);
        break;
      }
      case GateKind::Ancilla: {
        std::size_t dn = dim << 1;
        std::vector<std::pair<Int, Int>> out(dn * dn);
        for (std::size_t y = 0; y < dim; ++y)
          for (std::size_t zz = 0; zz < dim; ++zz) {
            auto& e = vcur[y * dim + zz];
            if (e.first == 0 && e.second == 0) continue;
            auto& o = out[(y << 1) * dn + (zz << 1)];
            o.first = e.first << 1;
            o.second = e.second << 1;
          }
        vcur = std::move(out);
        ++live;
        break;
      }
      case GateKind::Erasure: {
        std::size_t pos = live - 1 - g.wires[0];
        std::size_t dn = dim >> 1;
        std::vector<std::pair<Int, Int>> out(dn * dn);
        for (std::size_t y = 0; y < dim; ++y)
          for (std::size_t zz = 0; zz < dim; ++zz) {
            auto& e = vcur[y * dim + zz];
            if (e.first == 0 && e.second == 0) continue;
            if (((y >> pos) & 1) != ((zz >> pos) & 1)) continue;
            auto& o = out[detail::remove_bit(y, pos) * dn + detail::remove_bit(zz, pos)];
            o.first += e.first << 1;
            o.second += e.second << 1;
          }
        vcur = std::move(out);
        --live;
        break;
      }
    }
  }
  return vcur;
}

}  // namespace detail

inline AmplitudeGap circuit_amplitude_gap(const Circuit& c, std::size_t z, std::size_t w,
                                          std::size_t u, std::size_t v) {
  std::size_t dout = std::size_t{1} << output_count(c);
  if (u >= dout || v >= dout)
    throw std::invalid_argument("circuit_amplitude_gap: index out of range");
  std::vector<std::pair<Int, Int>> vfin = detail::amplitude_dp(c, z, w);

  AmplitudeGap out;
  out.r = circuit_size(c);
  std::size_t shift = out.r - c.gates.size();
  out.f0 = vfin[u * dout + v].first << shift;
  out.f1 = vfin[u * dout + v].second << shift;
  return out;
}

/// All output entries (u, v) for a fixed basis start (z, w), each as the
/// scaled integer pair of circuit_amplitude_gap.
struct AmplitudeColumn {
  std::vector<std::pair<Int, Int>> entries;  ///< index u * 2^out + v
  std::size_t r = 0;
};

inline AmplitudeColumn circuit_amplitude_column(const Circuit& c, std::size_t z,
                                                std::size_t w) {
  AmplitudeColumn col;
  col.entries = detail::amplitude_dp(c, z, w);
  col.r = circuit_size(c);
  std::size_t shift = col.r - c.gates.size();
  for (auto& [re, im] : col.entries) {
    re <<= shift;
    im <<= shift;
  }
  return col;
}

}  // namespace qrg
