#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "qrg/dyadic.hpp"
#include "qrg/rng.hpp"

using qrg::Dyadic;
using qrg::Int;
using qrg::Rng;

namespace {

Dyadic random_dyadic(Rng& rng) {
  auto small = [&rng] {
    return Int(static_cast<std::int64_t>(rng.below(41)) - 20);
  };
  return Dyadic(small(), small(), static_cast<std::uint32_t>(rng.below(6)));
}

}  // namespace

TEST_CASE("canonical form strips common factors of two") {
  CHECK(Dyadic(2, 0, 1) == Dyadic(1));
  CHECK(Dyadic(6, 4, 3) == Dyadic(3, 2, 2));
  CHECK(Dyadic(6, 4, 3).exponent() == 2);
  CHECK(Dyadic(0, 0, 5) == Dyadic());
  CHECK(Dyadic(0, 0, 5).exponent() == 0);
  CHECK(Dyadic(1, 0, 3).exponent() == 3);
  CHECK(Dyadic(4, 8, 0) == Dyadic(4, 8, 0));
  CHECK(Dyadic(4, 8, 0).exponent() == 0);
}

TEST_CASE("accessors and predicates") {
  Dyadic x(3, -5, 2);
  CHECK(x.num_re() == 3);
  CHECK(x.num_im() == -5);
  CHECK(x.exponent() == 2);
  CHECK_FALSE(x.is_zero());
  CHECK_FALSE(x.is_real());
  CHECK_FALSE(x.is_integer());
  CHECK(Dyadic(7).is_integer());
  CHECK(Dyadic(7).is_real());
  CHECK(Dyadic().is_zero());
}

TEST_CASE("field arithmetic") {
  Dyadic half = Dyadic::half_pow(1);
  CHECK(half + half == Dyadic(1));
  CHECK(Dyadic::i() * Dyadic::i() == Dyadic(-1));
  CHECK(Dyadic(3) - Dyadic(5) == Dyadic(-2));
  CHECK(Dyadic(2, 1, 1) * Dyadic(2, -1, 1) == Dyadic(5, 0, 2));
  CHECK(-Dyadic(1, -2, 3) == Dyadic(-1, 2, 3));
  CHECK(Dyadic(1, -2, 3).conj() == Dyadic(1, 2, 3));
}

TEST_CASE("times_two_pow shifts exactly in both directions") {
  Dyadic x(3, 5, 4);
  CHECK(x.times_two_pow(4) == Dyadic(3, 5, 0));
  CHECK(x.times_two_pow(6) == Dyadic(12, 20, 0));
  CHECK(x.times_two_pow(-2) == Dyadic(3, 5, 6));
  CHECK(x.times_two_pow(3).times_two_pow(-3) == x);
  CHECK(Dyadic::half_pow(3).times_two_pow(3) == Dyadic(1));
}

TEST_CASE("ring identities on random values") {
  Rng rng(17);
  for (int it = 0; it < 200; ++it) {
    Dyadic a = random_dyadic(rng), b = random_dyadic(rng), c = random_dyadic(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * b).conj() == a.conj() * b.conj());
    CHECK(a - a == Dyadic());
    Dyadic norm = a * a.conj();
    CHECK(norm.is_real());
    CHECK(norm.num_re() >= 0);
  }
}

TEST_CASE("compound assignment matches the binary operators") {
  Dyadic x(1, 1, 1);
  Dyadic y = x;
  y += Dyadic(1, 0, 2);
  CHECK(y == Dyadic(1, 1, 1) + Dyadic(1, 0, 2));
  y -= Dyadic::i();
  CHECK(y == Dyadic(1, 1, 1) + Dyadic(1, 0, 2) - Dyadic::i());
  y *= Dyadic(2);
  CHECK(y == (Dyadic(1, 1, 1) + Dyadic(1, 0, 2) - Dyadic::i()) * Dyadic(2));
}

TEST_CASE("to_complex is exact for small numerators") {
  std::complex<double> z = Dyadic(3, -5, 2).to_complex();
  CHECK(z.real() == 0.75);
  CHECK(z.imag() == -1.25);
  CHECK(Dyadic(1, 0, 1).to_complex().real() == 0.5);
  CHECK(Dyadic(-7).to_complex() == std::complex<double>(-7.0, 0.0));
}

TEST_CASE("printing") {
  CHECK(Dyadic(3, 2, 2).to_string() == "(3+2i)/2^2");
  CHECK(Dyadic(1, -1, 0).to_string() == "(1-1i)/2^0");
}
