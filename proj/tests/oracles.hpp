#pragma once

// Test-side oracles. Each one recomputes a quantity the library also
// produces, by a deliberately different algorithm.

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qrg/circuit.hpp"
#include "qrg/dyadic.hpp"
#include "qrg/rng.hpp"

namespace oracle {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using qrg::Circuit;
using qrg::Gate;
using qrg::GateKind;
using qrg::Int;

// ---- density-matrix simulator -----------------------------------------
// Represents the state as a density matrix over the live wires (wire 0
// is the most significant bit) and conjugates by full matrices built by
// Kronecker products, with explicit index loops for append and trace.

inline Mat kron3(const Mat& a, const Mat& b, const Mat& c) {
  Mat ab(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      ab.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  Mat out(ab.rows() * c.rows(), ab.cols() * c.cols());
  for (Eigen::Index i = 0; i < ab.rows(); ++i)
    for (Eigen::Index j = 0; j < ab.cols(); ++j)
      out.block(i * c.rows(), j * c.cols(), c.rows(), c.cols()) = ab(i, j) * c;
  return out;
}

inline Mat one_wire_unitary(std::size_t live, std::size_t wire, const Mat& u) {
  std::size_t before = wire, after = live - 1 - wire;
  Mat ib = Mat::Identity(std::ptrdiff_t(1) << before, std::ptrdiff_t(1) << before);
  Mat ia = Mat::Identity(std::ptrdiff_t(1) << after, std::ptrdiff_t(1) << after);
  return kron3(ib, u, ia);
}

inline Mat apply_circuit_density(const Circuit& c, Mat rho) {
  std::size_t live = c.inputs;
  if (rho.rows() != std::ptrdiff_t(1) << live || rho.cols() != rho.rows())
    throw std::invalid_argument("density oracle: dimension mismatch");
  const double rs2 = 1.0 / std::sqrt(2.0);
  Mat h(2, 2), p(2, 2);
  h << rs2, rs2, rs2, -rs2;
  p << 1.0, 0.0, 0.0, Cplx(0.0, 1.0);

  for (const Gate& g : c.gates) {
    std::size_t dim = std::size_t{1} << live;
    switch (g.kind) {
      case GateKind::Hadamard: {
        Mat u = one_wire_unitary(live, g.wires[0], h);
        rho = u * rho * u.adjoint();
        break;
      }
      case GateKind::Phase: {
        Mat u = one_wire_unitary(live, g.wires[0], p);
        rho = u * rho * u.adjoint();
        break;
      }
      case GateKind::Toffoli: {
        std::size_t p1 = live - 1 - g.wires[0], p2 = live - 1 - g.wires[1],
                    pt = live - 1 - g.wires[2];
        Mat u = Mat::Zero(dim, dim);
        for (std::size_t x = 0; x < dim; ++x) {
          std::size_t y =
              ((x >> p1) & (x >> p2) & 1) ? x ^ (std::size_t{1} << pt) : x;
          u(y, x) = 1.0;
        }
        rho = u * rho * u.adjoint();
        break;
      }
      case GateKind::Ancilla: {
        Mat next = Mat::Zero(2 * dim, 2 * dim);
        for (std::size_t a = 0; a < dim; ++a)
          for (std::size_t b = 0; b < dim; ++b) next(2 * a, 2 * b) = rho(a, b);
        rho = std::move(next);
        ++live;
        break;
      }
      case GateKind::Erasure: {
        std::size_t pos = live - 1 - g.wires[0];
        std::size_t dn = dim >> 1;
        auto insert_bit = [pos](std::size_t x, std::size_t bit) {
          std::size_t high = (x >> pos) << (pos + 1);
          std::size_t low = x & ((std::size_t{1} << pos) - 1);
          return high | (bit << pos) | low;
        };
        Mat next = Mat::Zero(dn, dn);
        for (std::size_t a = 0; a < dn; ++a)
          for (std::size_t b = 0; b < dn; ++b)
            next(a, b) = rho(insert_bit(a, 0), insert_bit(b, 0)) +
                         rho(insert_bit(a, 1), insert_bit(b, 1));
        rho = std::move(next);
        --live;
        break;
      }
    }
  }
  return rho;
}

// ---- exact unitary oracle ----------------------------------------------
// For gate-only circuits (no ancilla or erasure): entries are Gaussian
// integers over sqrt(2)^h, h = number of Hadamard gates.

struct ExactUnitary {
  std::vector<std::pair<Int, Int>> u;  ///< row-major, dim x dim
  std::size_t dim = 0;
  std::size_t h = 0;  ///< power of sqrt(2) in the denominator
};

inline ExactUnitary unitary_matrix(const Circuit& c) {
  ExactUnitary out;
  out.dim = std::size_t{1} << c.inputs;
  out.u.assign(out.dim * out.dim, {0, 0});
  for (std::size_t i = 0; i < out.dim; ++i) out.u[i * out.dim + i] = {1, 0};

  for (const Gate& g : c.gates) {
    std::size_t live = c.inputs;
    switch (g.kind) {
      case GateKind::Hadamard: {
        // sqrt(2) * H on the wire, column-wise on the accumulated matrix
        std::size_t pos = live - 1 - g.wires[0];
        std::vector<std::pair<Int, Int>> next(out.dim * out.dim, {Int(0), Int(0)});
        for (std::size_t r = 0; r < out.dim; ++r)
          for (std::size_t cx = 0; cx < out.dim; ++cx) {
            auto& e = out.u[r * out.dim + cx];
            if (e.first == 0 && e.second == 0) continue;
            std::size_t bit = (r >> pos) & 1;
            std::size_t r0 = r & ~(std::size_t{1} << pos);
            std::size_t r1 = r0 | (std::size_t{1} << pos);
            auto& t0 = next[r0 * out.dim + cx];
            auto& t1 = next[r1 * out.dim + cx];
            t0.first += e.first;
            t0.second += e.second;
            if (bit == 0) {
              t1.first += e.first;
              t1.second += e.second;
            } else {
              t1.first -= e.first;
              t1.second -= e.second;
            }
          }
        out.u = std::move(next);
        ++out.h;
        break;
      }
      case GateKind::Phase: {
        std::size_t pos = live - 1 - g.wires[0];
        for (std::size_t r = 0; r < out.dim; ++r) {
          if (!((r >> pos) & 1)) continue;
          for (std::size_t cx = 0; cx < out.dim; ++cx) {
            auto& e = out.u[r * out.dim + cx];
            Int re = std::move(e.first);
            e.first = -e.second;
            e.second = std::move(re);
          }
        }
        break;
      }
      case GateKind::Toffoli: {
        std::size_t p1 = live - 1 - g.wires[0], p2 = live - 1 - g.wires[1],
                    pt = live - 1 - g.wires[2];
        std::vector<std::pair<Int, Int>> next(out.dim * out.dim, {Int(0), Int(0)});
        for (std::size_t r = 0; r < out.dim; ++r) {
          std::size_t rr = ((r >> p1) & (r >> p2) & 1) ? r ^ (std::size_t{1} << pt) : r;
          for (std::size_t cx = 0; cx < out.dim; ++cx)
            next[rr * out.dim + cx] = std::move(out.u[r * out.dim + cx]);
        }
        out.u = std::move(next);
        break;
      }
      default:
        throw std::invalid_argument("unitary oracle: circuit is not gate-only");
    }
  }
  return out;
}

// ---- extreme eigenvalues by Cholesky bisection ---------------------------
// lambda_min(A) for Hermitian A via the positive-definiteness boundary:
// A - t I admits a Cholesky factorization iff t < lambda_min.

inline double min_eig_bisect(const Mat& a, double tol = 1e-11) {
  double radius = a.cwiseAbs().rowwise().sum().maxCoeff() + 1.0;
  double lo = -radius, hi = radius;
  Mat id = Mat::Identity(a.rows(), a.cols());
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    Eigen::LLT<Mat> llt(a - mid * id);
    if (llt.info() == Eigen::Success)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline double max_eig_bisect(const Mat& a, double tol = 1e-11) {
  return -min_eig_bisect(-a, tol);
}

// ---- exact binomial tail -------------------------------------------------
// P[Bin(n, num/den) >= k], computed in exact rational arithmetic.

inline double binomial_tail_ge(std::size_t n, std::size_t k, std::uint64_t num,
                               std::uint64_t den) {
  if (den == 0 || num > den) throw std::invalid_argument("binomial tail: bad p");
  if (k > n) return 0.0;
  if (num == 0) return k == 0 ? 1.0 : 0.0;
  if (num == den) return 1.0;
  Int p = num, q = den - num;
  Int total = 0;
  // walk j = n down to k, maintaining C(n, j) and p^j q^(n-j)
  Int coeff = 1;  // C(n, n)
  Int pj = 1, qj = 1;
  for (std::size_t e = 0; e < n; ++e) pj *= p;
  Int term;
  for (std::size_t j = n;; --j) {
    term = coeff * pj * qj;
    total += term;
    if (j == k) break;
    coeff = coeff * j / (n - j + 1);  // C(n, j-1)
    if (p != 0) pj /= p;
    qj *= q;
    if (j == 0) break;
  }
  Int den_total = 1;
  for (std::size_t e = 0; e < n; ++e) den_total *= Int(den);
  boost::multiprecision::cpp_rational ratio(total, den_total);
  return ratio.convert_to<double>();
}

// ---- random densities -----------------------------------------------------

inline Mat random_density(qrg::Rng& rng, std::size_t dim) {
  Mat g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      g(i, j) = Cplx(2.0 * rng.real01() - 1.0, 2.0 * rng.real01() - 1.0);
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

}  // namespace oracle
