#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <complex>

#include "oracles.hpp"
#include "qrg/corpus.hpp"
#include "qrg/natural_rep.hpp"
#include "qrg/rng.hpp"

using namespace qrg;

namespace {

ExactMatrix random_exact(Rng& rng, std::size_t dim) {
  ExactMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      m.at(i, j) = Dyadic(Int(static_cast<std::int64_t>(rng.below(9)) - 4),
                          Int(static_cast<std::int64_t>(rng.below(9)) - 4),
                          static_cast<std::uint32_t>(rng.below(3)));
  return m;
}

Eigen::MatrixXcd to_eigen_local(const ExactMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m.at(i, j).to_complex();
  return out;
}

Circuit random_gate_only(Rng& rng, std::size_t inputs, std::size_t count) {
  Circuit c;
  c.inputs = inputs;
  for (std::size_t g = 0; g < count; ++g) {
    switch (rng.below(inputs >= 3 ? 3 : 2)) {
      case 0: c.gates.push_back(Gate::hadamard(rng.below(inputs))); break;
      case 1: c.gates.push_back(Gate::phase(rng.below(inputs))); break;
      default: {
        std::size_t a = rng.below(inputs), b = a, t = a;
        while (b == a) b = rng.below(inputs);
        while (t == a || t == b) t = rng.below(inputs);
        c.gates.push_back(Gate::toffoli(a, b, t));
      }
    }
  }
  return c;
}

}  // namespace

TEST_CASE("hadamard channel matrix") {
  NaturalRep r = gate_rep(GateKind::Hadamard);
  int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
  for (std::size_t row = 0; row < 4; ++row)
    for (std::size_t col = 0; col < 4; ++col)
      CHECK(r.mat.at(row, col) == Dyadic(sign[row][col], 0, 1));
}

TEST_CASE("phase channel matrix") {
  NaturalRep r = gate_rep(GateKind::Phase);
  ExactMatrix want(4, 4);
  want.at(0, 0) = Dyadic(1);
  want.at(1, 1) = Dyadic(0, -1, 0);
  want.at(2, 2) = Dyadic(0, 1, 0);
  want.at(3, 3) = Dyadic(1);
  CHECK(r.mat == want);
}

TEST_CASE("toffoli channel matrix is the doubled permutation") {
  NaturalRep r = gate_rep(GateKind::Toffoli);
  auto perm = [](std::size_t x) { return x == 6 ? std::size_t{7} : x == 7 ? std::size_t{6} : x; };
  for (std::size_t z = 0; z < 8; ++z)
    for (std::size_t w = 0; w < 8; ++w)
      for (std::size_t u = 0; u < 8; ++u)
        for (std::size_t v = 0; v < 8; ++v) {
          Dyadic want = (u == perm(z) && v == perm(w)) ? Dyadic(1) : Dyadic();
          if (r.mat.at(u * 8 + v, z * 8 + w) != want) {
            FAIL("toffoli entry mismatch");
          }
        }
  SUCCEED();
}

TEST_CASE("ancilla and erasure channel matrices") {
  NaturalRep anc = gate_rep(GateKind::Ancilla);
  CHECK(anc.mat.rows() == 4);
  CHECK(anc.mat.cols() == 1);
  CHECK(anc.mat.at(0, 0) == Dyadic(1));
  CHECK(anc.mat.at(1, 0) == Dyadic());
  CHECK(anc.mat.at(2, 0) == Dyadic());
  CHECK(anc.mat.at(3, 0) == Dyadic());

  NaturalRep er = gate_rep(GateKind::Erasure);
  CHECK(er.mat.rows() == 1);
  CHECK(er.mat.cols() == 4);
  CHECK(er.mat.at(0, 0) == Dyadic(1));
  CHECK(er.mat.at(0, 1) == Dyadic());
  CHECK(er.mat.at(0, 2) == Dyadic());
  CHECK(er.mat.at(0, 3) == Dyadic(1));
}

TEST_CASE("unitary circuits give U tensor conj(U)") {
  Rng rng(41);
  for (int it = 0; it < 25; ++it) {
    std::size_t inputs = 2 + rng.below(2);
    Circuit c = random_gate_only(rng, inputs, 1 + rng.below(6));
    NaturalRep rep = circuit_rep(c);
    oracle::ExactUnitary u = oracle::unitary_matrix(c);
    std::size_t d = u.dim;
    std::uint32_t h = static_cast<std::uint32_t>(u.h);
    bool all = true;
    for (std::size_t uu = 0; uu < d && all; ++uu)
      for (std::size_t z = 0; z < d && all; ++z)
        for (std::size_t v = 0; v < d && all; ++v)
          for (std::size_t w = 0; w < d && all; ++w) {
            const auto& [a, b] = u.u[uu * d + z];
            const auto& [cc, dd] = u.u[v * d + w];
            Dyadic want(a * cc + b * dd, b * cc - a * dd, h);
            if (rep.mat.at(uu * d + v, z * d + w) != want) all = false;
          }
    CHECK(all);
  }
}

TEST_CASE("representation is multiplicative over circuit cuts") {
  CircuitShape shape;
  std::vector<Circuit> corpus = corpus_circuits(311, 30, shape);
  Rng rng(312);
  for (const Circuit& c : corpus) {
    if (c.gates.empty()) continue;
    std::size_t cut = rng.below(c.gates.size() + 1);
    Circuit head, tail;
    head.inputs = c.inputs;
    head.gates.assign(c.gates.begin(), c.gates.begin() + cut);
    tail.inputs = output_count(head);
    tail.gates.assign(c.gates.begin() + cut, c.gates.end());
    ExactMatrix whole = circuit_rep(c).mat;
    ExactMatrix split = mat_mul(circuit_rep(tail).mat, circuit_rep(head).mat);
    CHECK(whole == split);
  }
}

TEST_CASE("adjoint of identity effect is the identity") {
  CircuitShape shape;
  for (const Circuit& c : corpus_circuits(77, 40, shape)) {
    std::size_t dout = std::size_t{1} << output_count(c);
    std::size_t din = std::size_t{1} << c.inputs;
    ExactMatrix back = adjoint_apply_circuit(c, ExactMatrix::identity(dout));
    CHECK(back == ExactMatrix::identity(din));
  }
}

TEST_CASE("channel application matches the density-matrix oracle") {
  CircuitShape shape;
  Rng rng(513);
  for (const Circuit& c : corpus_circuits(514, 40, shape)) {
    std::size_t din = std::size_t{1} << c.inputs;
    Eigen::MatrixXcd rho = oracle::random_density(rng, din);
    ExactMatrix rho_exact(din, din);
    for (std::size_t i = 0; i < din; ++i)
      for (std::size_t j = 0; j < din; ++j) {
        double re = rho(i, j).real(), im = rho(i, j).imag();
        auto fix = [](double v) {
          return Int(static_cast<std::int64_t>(std::llround(v * 4096.0)));
        };
        rho_exact.at(i, j) = Dyadic(fix(re), fix(im), 12);
      }
    Eigen::MatrixXcd rho_rounded = to_eigen_local(rho_exact);
    Eigen::MatrixXcd got = to_eigen_local(apply_circuit(c, rho_exact));
    Eigen::MatrixXcd want = oracle::apply_circuit_density(c, rho_rounded);
    CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("streaming application equals the materialized representation") {
  CircuitShape shape;
  Rng rng(91);
  for (const Circuit& c : corpus_circuits(92, 30, shape)) {
    std::size_t din = std::size_t{1} << c.inputs;
    ExactMatrix rho = random_exact(rng, din);
    ExactMatrix streamed = apply_circuit(c, rho);
    ExactMatrix materialized = apply_channel(circuit_rep(c), rho);
    CHECK(streamed == materialized);
  }
}

TEST_CASE("vec and unvec are inverse") {
  Rng rng(3);
  ExactMatrix m = random_exact(rng, 4);
  CHECK(unvec(vec(m), 2) == m);
}

TEST_CASE("state push cap") {
  std::size_t saved = max_push_qubits();
  max_push_qubits() = 3;
  Circuit c;
  c.inputs = 3;
  c.gates.push_back(Gate::ancilla());
  c.gates.push_back(Gate::erasure(0));
  CHECK_THROWS_AS(apply_circuit(c, ExactMatrix::identity(8)), std::runtime_error);
  max_push_qubits() = saved;
  CHECK_NOTHROW(apply_circuit(c, ExactMatrix::identity(8)));
}
