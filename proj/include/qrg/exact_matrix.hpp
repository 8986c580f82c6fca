#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrg/dyadic.hpp"

namespace qrg {

/// Configurable cap on matrix dimensions (rows and cols), default 2^12.
inline std::size_t& max_matrix_dim() {
  static std::size_t cap = std::size_t{1} << 12;
  return cap;
}

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Dense matrix of exact Gaussian dyadic scalars. Dimensions must be
/// powers of two (bitstring-indexed registers) and within max_matrix_dim().
class ExactMatrix {
 public:
  ExactMatrix() : rows_(1), cols_(1), a_(1) {}
  ExactMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {
    check_dims(rows, cols);
  }

  static ExactMatrix identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Dyadic(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Dyadic& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Dyadic& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend bool operator==(const ExactMatrix& x, const ExactMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const ExactMatrix& x, const ExactMatrix& y) { return !(x == y); }

  ExactMatrix conj_transpose() const {
    ExactMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j).conj();
    return m;
  }

  bool is_hermitian() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if (at(i, j) != at(j, i).conj()) return false;
    return true;
  }

  Dyadic trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace: matrix not square");
    Dyadic t;
    for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

  friend ExactMatrix operator+(const ExactMatrix& x, const ExactMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw std::invalid_argument("matrix add: shape mismatch");
    ExactMatrix m(x.rows_, x.cols_);
    for (std::size_t k = 0; k < x.a_.size(); ++k) m.a_[k] = x.a_[k] + y.a_[k];
    return m;
  }

  friend ExactMatrix operator-(const ExactMatrix& x, const ExactMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw std::invalid_argument("matrix sub: shape mismatch");
    ExactMatrix m(x.rows_, x.cols_);
    for (std::size_t k = 0; k < x.a_.size(); ++k) m.a_[k] = x.a_[k] - y.a_[k];
    return m;
  }

  friend ExactMatrix operator*(const Dyadic& s, const ExactMatrix& x) {
    ExactMatrix m(x.rows_, x.cols_);
    for (std::size_t k = 0; k < x.a_.size(); ++k) m.a_[k] = s * x.a_[k];
    return m;
  }

 private:
  static void check_dims(std::size_t rows, std::size_t cols) {
    if (!is_pow2(rows) || !is_pow2(cols))
      throw std::invalid_argument("matrix dimensions must be powers of two, got " +
                                  std::to_string(rows) + "x" + std::to_string(cols));
    if (rows > max_matrix_dim() || cols > max_matrix_dim())
      throw std::invalid_argument(
          "matrix dimension cap exceeded: need " +
          std::to_string(std::max(rows, cols)) + ", cap is " +
          std::to_string(max_matrix_dim()));
  }

  std::size_t rows_, cols_;
  std::vector<Dyadic> a_;
};

/// Exact matrix product. Entries of each factor are rescaled to a common
/// power-of-two denominator so the inner loops run on plain big integers.
inline ExactMatrix mat_mul(const ExactMatrix& x, const ExactMatrix& y) {
  if (x.cols() != y.rows()) throw std::invalid_argument("mat_mul: shape mismatch");
  std::uint32_t rx = 0, ry = 0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      rx = std::max(rx, x.at(i, j).exponent());
  for (std::size_t i = 0; i < y.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j)
      ry = std::max(ry, y.at(i, j).exponent());

  auto scaled = [](const ExactMatrix& m, std::uint32_t r, std::vector<Int>& re,
                   std::vector<Int>& im) {
    re.resize(m.rows() * m.cols());
    im.resize(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const Dyadic& d = m.at(i, j);
        std::uint32_t s = r - d.exponent();
        re[i * m.cols() + j] = d.num_re() << s;
        im[i * m.cols() + j] = d.num_im() << s;
      }
  };
  std::vector<Int> xre, xim, yre, yim;
  scaled(x, rx, xre, xim);
  scaled(y, ry, yre, yim);

  const std::size_t n = x.rows(), k = x.cols(), p = y.cols();
  std::vector<Int> cre(n * p), cim(n * p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      const Int& ar = xre[i * k + t];
      const Int& ai = xim[i * k + t];
      if (ar == 0 && ai == 0) continue;
      for (std::size_t j = 0; j < p; ++j) {
        const Int& br = yre[t * p + j];
        const Int& bi = yim[t * p + j];
        if (br == 0 && bi == 0) continue;
        cre[i * p + j] += ar * br - ai * bi;
        cim[i * p + j] += ar * bi + ai * br;
      }
    }

  ExactMatrix m(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j)
      m.at(i, j) = Dyadic(std::move(cre[i * p + j]), std::move(cim[i * p + j]), rx + ry);
  return m;
}

/// Tr(M^k) for k >= 1, by binary exponentiation.
inline Dyadic mat_trace_power(const ExactMatrix& m, unsigned k) {
  if (m.rows() != m.cols()) throw std::invalid_argument("mat_trace_power: not square");
  if (k == 0) throw std::invalid_argument("mat_trace_power: exponent must be >= 1");
  ExactMatrix acc = ExactMatrix::identity(m.rows());
  ExactMatrix base = m;
  bool acc_used = false;
  while (k > 0) {
    if (k & 1) {
      acc = acc_used ? mat_mul(acc, base) : base;
      acc_used = true;
    }
    k >>= 1;
    if (k > 0) base = mat_mul(base, base);
  }
  return acc.trace();
}

/// Kronecker product (row/col index of x is the high-order block).
inline ExactMatrix kron(const ExactMatrix& x, const ExactMatrix& y) {
  ExactMatrix m(x.rows() * y.rows(), x.cols() * y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (x.at(i, j).is_zero()) continue;
      for (std::size_t a = 0; a < y.rows(); ++a)
        for (std::size_t b = 0; b < y.cols(); ++b)
          m.at(i * y.rows() + a, j * y.cols() + b) = x.at(i, j) * y.at(a, b);
    }
  return m;
}

}  // namespace qrg
