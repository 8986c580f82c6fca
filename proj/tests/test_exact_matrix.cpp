#include <catch2/catch_amalgamated.hpp>

#include "qrg/exact_matrix.hpp"
#include "qrg/rng.hpp"

using qrg::Dyadic;
using qrg::ExactMatrix;
using qrg::Int;
using qrg::Rng;

namespace {

ExactMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  ExactMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m.at(i, j) = Dyadic(Int(static_cast<std::int64_t>(rng.below(11)) - 5),
                          Int(static_cast<std::int64_t>(rng.below(11)) - 5),
                          static_cast<std::uint32_t>(rng.below(4)));
  return m;
}

}  // namespace

TEST_CASE("identity, trace, and equality") {
  ExactMatrix id = ExactMatrix::identity(4);
  CHECK(id.trace() == Dyadic(4));
  CHECK(id == ExactMatrix::identity(4));
  CHECK(id != ExactMatrix(4, 4));
  CHECK(ExactMatrix(2, 4).rows() == 2);
  CHECK(ExactMatrix(2, 4).cols() == 4);
}

TEST_CASE("dimension constraints") {
  CHECK_THROWS_AS(ExactMatrix(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(ExactMatrix(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(ExactMatrix(qrg::max_matrix_dim() * 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(ExactMatrix(2, 4).trace(), std::invalid_argument);
  CHECK_THROWS_AS(mat_mul(ExactMatrix(2, 4), ExactMatrix(2, 4)), std::invalid_argument);
  CHECK_THROWS_AS(ExactMatrix(2, 2) + ExactMatrix(4, 4), std::invalid_argument);
}

TEST_CASE("ring structure on random matrices") {
  Rng rng(23);
  for (int it = 0; it < 20; ++it) {
    ExactMatrix a = random_matrix(rng, 4, 4);
    ExactMatrix b = random_matrix(rng, 4, 4);
    ExactMatrix c = random_matrix(rng, 4, 4);
    CHECK(mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c)));
    CHECK(mat_mul(a, b + c) == mat_mul(a, b) + mat_mul(a, c));
    CHECK(mat_mul(a, ExactMatrix::identity(4)) == a);
    CHECK(mat_mul(ExactMatrix::identity(4), a) == a);
    CHECK(mat_mul(a, b).conj_transpose() ==
          mat_mul(b.conj_transpose(), a.conj_transpose()));
    CHECK(a - a == ExactMatrix(4, 4));
    CHECK(Dyadic(2) * a == a + a);
  }
}

TEST_CASE("rectangular products compose") {
  Rng rng(5);
  ExactMatrix a = random_matrix(rng, 2, 8);
  ExactMatrix b = random_matrix(rng, 8, 4);
  ExactMatrix ab = mat_mul(a, b);
  CHECK(ab.rows() == 2);
  CHECK(ab.cols() == 4);
  Dyadic expect;
  for (std::size_t t = 0; t < 8; ++t) expect += a.at(1, t) * b.at(t, 3);
  CHECK(ab.at(1, 3) == expect);
}

TEST_CASE("hermitian structure") {
  Rng rng(99);
  ExactMatrix a = random_matrix(rng, 4, 4);
  ExactMatrix h = a + a.conj_transpose();
  CHECK(h.is_hermitian());
  CHECK_FALSE((h + Dyadic::i() * ExactMatrix::identity(4)).is_hermitian());
  ExactMatrix g = mat_mul(a, a.conj_transpose());
  CHECK(g.is_hermitian());
}

TEST_CASE("trace powers agree with repeated products") {
  Rng rng(7);
  for (int it = 0; it < 10; ++it) {
    ExactMatrix a = random_matrix(rng, 4, 4);
    ExactMatrix acc = a;
    for (unsigned k = 1; k <= 5; ++k) {
      CHECK(mat_trace_power(a, k) == acc.trace());
      acc = mat_mul(acc, a);
    }
  }
  CHECK_THROWS_AS(mat_trace_power(ExactMatrix::identity(2), 0), std::invalid_argument);
}

TEST_CASE("trace powers of hermitian matrices are real") {
  Rng rng(31);
  for (int it = 0; it < 20; ++it) {
    ExactMatrix a = random_matrix(rng, 4, 4);
    ExactMatrix h = a + a.conj_transpose();
    for (unsigned k = 1; k <= 6; ++k) {
      Dyadic t = mat_trace_power(h, k);
      CHECK(t.is_real());
    }
  }
}

TEST_CASE("kronecker product is multiplicative") {
  Rng rng(13);
  ExactMatrix a = random_matrix(rng, 2, 2);
  ExactMatrix b = random_matrix(rng, 4, 4);
  ExactMatrix c = random_matrix(rng, 2, 2);
  ExactMatrix d = random_matrix(rng, 4, 4);
  CHECK(mat_mul(kron(a, b), kron(c, d)) == kron(mat_mul(a, c), mat_mul(b, d)));
  CHECK(kron(a, b).rows() == 8);
  Dyadic expect = a.at(1, 0) * b.at(2, 3);
  CHECK(kron(a, b).at(1 * 4 + 2, 0 * 4 + 3) == expect);
}

TEST_CASE("kronecker growth past the cap throws") {
  std::size_t n = qrg::max_matrix_dim();
  ExactMatrix big(n, 1);
  CHECK_THROWS_AS(kron(big, ExactMatrix(2, 1)), std::invalid_argument);
}
