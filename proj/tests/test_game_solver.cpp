#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "qrg/corpus.hpp"
#include "qrg/formats.hpp"
#include "qrg/game_solver.hpp"
#include "qrg/rng.hpp"

using namespace qrg;

namespace {

Referee load_referee(const std::string& name) {
  std::ifstream in(std::string(DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_referee_text(ss.str());
}

void check_report_shape(const GameValueReport& rep) {
  CHECK(rep.primal <= rep.dual + 1e-12);
  CHECK(rep.duality_gap == Catch::Approx(rep.dual - rep.primal).margin(1e-12));
  CHECK(rep.value >= 0.0);
  CHECK(rep.value <= 1.0);
}

}  // namespace

TEST_CASE("effect operators of the equality game") {
  Referee r = load_referee("bits_equal.ref");
  EffectOperatorMap ops = effect_operators(r);
  CHECK(ops.outcome_bits == 1);
  CHECK(ops.bob_bits == 1);
  CHECK(ops.scaling_exponent == 18);
  REQUIRE(ops.exact.size() == 2);

  ExactMatrix s0(2, 2), s1(2, 2);
  s0.at(0, 0) = Dyadic(1);
  s1.at(1, 1) = Dyadic(1);
  CHECK(ops.exact[0] == s0);
  CHECK(ops.exact[1] == s1);

  for (std::size_t y = 0; y < 2; ++y) {
    Eigen::MatrixXcd diff = ops.floating[y] - to_eigen(ops.exact[y]);
    CHECK(diff.cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("effect operators reject fully quantum games") {
  Referee r = load_referee("verifier_embed.ref");
  CHECK_THROWS_AS(effect_operators(r), std::invalid_argument);
}

TEST_CASE("equality game value is one half") {
  GameValueReport rep = cqrg_value(load_referee("bits_equal.ref"));
  check_report_shape(rep);
  CHECK(rep.converged);
  CHECK(rep.duality_gap <= 1e-4);
  CHECK(rep.value == Catch::Approx(0.5).margin(1e-3));

  double total = 0.0;
  for (const auto& [label, p] : rep.alice_distribution.probs) {
    CHECK(label.size() == 1);
    CHECK(p >= -1e-12);
    total += p;
  }
  CHECK(total == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("trivial games saturate") {
  GameValueReport acc = cqrg_value(load_referee("always_accept.ref"));
  check_report_shape(acc);
  CHECK(acc.value == Catch::Approx(1.0).margin(1e-3));

  GameValueReport rej = cqrg_value(load_referee("always_reject.ref"));
  check_report_shape(rej);
  CHECK(rej.value == Catch::Approx(0.0).margin(1e-3));
}

TEST_CASE("single winning answer concentrates the distribution") {
  GameValueReport rep = cqrg_value(load_referee("single_y.ref"));
  check_report_shape(rep);
  CHECK(rep.value == Catch::Approx(1.0).margin(1e-3));
  REQUIRE(rep.alice_distribution.probs.count("1") == 1);
  CHECK(rep.alice_distribution.probs.at("1") >= 0.9);
}

TEST_CASE("extreme eigenvalues match the bisection oracle") {
  Rng rng(808);
  for (int it = 0; it < 12; ++it) {
    std::size_t dim = 2 + rng.below(7);
    Eigen::MatrixXcd a(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        a(i, j) = std::complex<double>(rng.real01() - 0.5, rng.real01() - 0.5);
    Eigen::MatrixXcd h = (a + a.adjoint()) / 2.0;
    CHECK(min_eigen(h).value == Catch::Approx(oracle::min_eig_bisect(h)).margin(1e-8));
    CHECK(max_eigen(h).value == Catch::Approx(oracle::max_eig_bisect(h)).margin(1e-8));
  }
}

TEST_CASE("hermiticity is checked before eigenvalue extraction") {
  Eigen::MatrixXcd m(2, 2);
  m << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(min_eigen(m), std::invalid_argument);
}

TEST_CASE("fully quantum value matches the largest effect eigenvalue") {
  Referee r = load_referee("verifier_embed.ref");
  ExactMatrix accept(2, 2);
  accept.at(1, 1) = Dyadic(1);
  ExactMatrix e = adjoint_apply_circuit(r.q_circuit, accept);
  double lmax = oracle::max_eig_bisect(to_eigen(e));

  GameValueReport rep = qrg_value(r);
  check_report_shape(rep);
  CHECK(rep.converged);
  CHECK(rep.value == Catch::Approx(lmax).margin(1e-3));
}

TEST_CASE("swapping the players flips the game value") {
  std::vector<Referee> games;
  games.push_back(load_referee("verifier_embed.ref"));
  Rng rng(4242);
  for (int it = 0; it < 2; ++it)
    games.push_back(random_referee(rng, GameMode::Qrg, 1, 1, 0, 4));

  for (const Referee& r : games) {
    double a = qrg_value(r).value;
    double b = qrg_value(swap_roles(r)).value;
    CHECK(a + b == Catch::Approx(1.0).margin(2e-4));
  }
}

TEST_CASE("measured equality game value is one half") {
  GameValueReport rep = mqrg_value(load_referee("measured_equal.ref"));
  check_report_shape(rep);
  CHECK(rep.converged);
  CHECK(rep.value == Catch::Approx(0.5).margin(2e-3));
}

TEST_CASE("width caps are enforced") {
  Referee r;
  r.mode = GameMode::Cqrg;
  r.alice = 1;
  r.bob = 7;
  CHECK_THROWS_AS(cqrg_value(r), std::invalid_argument);

  Referee q;
  q.mode = GameMode::Qrg;
  q.alice = 5;
  q.bob = 4;
  CHECK_THROWS_AS(qrg_value(q), std::invalid_argument);

  Referee wrong = load_referee("bits_equal.ref");
  CHECK_THROWS_AS(qrg_value(wrong), std::invalid_argument);
  CHECK_THROWS_AS(mqrg_value(wrong), std::invalid_argument);
}
