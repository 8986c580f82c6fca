#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrg/exact_matrix.hpp"
#include "qrg/natural_rep.hpp"
#include "qrg/referee.hpp"

namespace qrg {

inline Eigen::MatrixXcd to_eigen(const ExactMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m.at(i, j).to_complex();
  return out;
}

/// Alice-conditioned accept operators S_y = (<y| (x) I) Q*(|1><1|) (|y> (x) I),
/// kept both exactly and as floating mirrors. `scaling_exponent` is the
/// circuit size r of the decision circuit, so every exact entry of S_y
/// lies in 2^-r Z[i].
struct EffectOperatorMap {
  std::size_t outcome_bits = 0;  ///< n (Cqrg) or k (Mqrg)
  std::size_t bob_bits = 0;      ///< m
  std::size_t scaling_exponent = 0;
  std::vector<ExactMatrix> exact;          ///< indexed by y
  std::vector<Eigen::MatrixXcd> floating;  ///< same order
};

inline EffectOperatorMap effect_operators(const Referee& r) {
  if (r.mode == GameMode::Qrg)
    throw std::invalid_argument(
        "effect_operators: fully quantum games have no classical conditioning register");
  ValidationReport vr = validate_referee(r);
  if (!vr.ok) throw std::invalid_argument("effect_operators: " + vr.message);

  EffectOperatorMap map;
  map.outcome_bits = r.mode == GameMode::Cqrg ? r.alice : r.outcome;
  map.bob_bits = r.bob;
  map.scaling_exponent = circuit_size(r.q_circuit);

  ExactMatrix accept(2, 2);
  accept.at(1, 1) = Dyadic(1);
  ExactMatrix full = adjoint_apply_circuit(r.q_circuit, accept);

  std::size_t dy = std::size_t{1} << map.outcome_bits;
  std::size_t dm = std::size_t{1} << map.bob_bits;
  map.exact.reserve(dy);
  for (std::size_t y = 0; y < dy; ++y) {
    ExactMatrix s(dm, dm);
    for (std::size_t z = 0; z < dm; ++z)
      for (std::size_t w = 0; w < dm; ++w) s.at(z, w) = full.at(y * dm + z, y * dm + w);
    if (!s.is_hermitian())
      throw std::logic_error("effect_operators: non-Hermitian block, engine defect");
    map.floating.push_back(to_eigen(s));
    map.exact.push_back(std::move(s));
  }
  return map;
}

struct EigenResult {
  double value = 0.0;
  Eigen::VectorXcd vector;
};

namespace detail {

inline void check_hermitian(const Eigen::MatrixXcd& m, double tol_h) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigen: matrix not square");
  double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol_h)
    throw std::invalid_argument("eigen: matrix not Hermitian (deviation " +
                                std::to_string(dev) + ")");
}

inline EigenResult extreme_eigen(const Eigen::MatrixXcd& m, bool smallest) {
  check_hermitian(m, 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigen: decomposition failed");
  Eigen::Index idx = smallest ? 0 : m.rows() - 1;
  EigenResult r{es.eigenvalues()(idx), es.eigenvectors().col(idx)};
  double residual = (m * r.vector - r.value * r.vector).norm();
  if (residual > 1e-9 * (1.0 + m.norm()))
    throw std::runtime_error("eigen: residual too large: " + std::to_string(residual));
  return r;
}

}  // namespace detail

inline EigenResult min_eigen(const Eigen::MatrixXcd& m) {
  return detail::extreme_eigen(m, true);
}
inline EigenResult max_eigen(const Eigen::MatrixXcd& m) {
  return detail::extreme_eigen(m, false);
}

/// Probability distribution over outcome strings.
struct Distribution {
  std::map<std::string, double> probs;
};

struct GameValueReport {
  double value = 0.0;
  double primal = 0.0;  ///< guaranteed payoff of the reported Alice strategy
  double dual = 1.0;    ///< best-response bound against the reported Bob strategy
  double duality_gap = 1.0;
  std::size_t iterations = 0;
  bool converged = false;
  Distribution alice_distribution;     ///< Cqrg only
  Eigen::MatrixXcd alice_density;      ///< Qrg / Mqrg only
  Eigen::MatrixXcd bob_density;
};

struct SolveOptions {
  double tol = 1e-4;
  std::size_t max_iterations = 200000;
  double eta = 0.4;
  std::size_t check_every = 128;
};

namespace detail {

/// Entropic (matrix-multiplicative-weights) player state over density
/// operators, kept as Hermitian log-weights.
class DensityMirror {
 public:
  explicit DensityMirror(std::size_t dim)
      : log_(Eigen::MatrixXcd::Zero(dim, dim)) {}

  Eigen::MatrixXcd point_from(const Eigen::MatrixXcd& log_weights) const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(log_weights);
    Eigen::VectorXd ev = es.eigenvalues();
    double top = ev.maxCoeff();
    Eigen::VectorXd w = (ev.array() - top).exp();
    w /= w.sum();
    return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  }

  Eigen::MatrixXcd point() const { return point_from(log_); }
  Eigen::MatrixXcd midpoint(const Eigen::MatrixXcd& grad, double eta) const {
    return point_from(log_ + eta * grad);
  }
  void step(const Eigen::MatrixXcd& grad, double eta) { log_ += eta * grad; }

 private:
  Eigen::MatrixXcd log_;
};

/// Entropic player state over a finite simplex.
class SimplexMirror {
 public:
  explicit SimplexMirror(std::size_t dim) : log_(Eigen::VectorXd::Zero(dim)) {}

  Eigen::VectorXd point_from(const Eigen::VectorXd& log_weights) const {
    Eigen::VectorXd w = (log_weights.array() - log_weights.maxCoeff()).exp();
    return w / w.sum();
  }
  Eigen::VectorXd point() const { return point_from(log_); }
  Eigen::VectorXd midpoint(const Eigen::VectorXd& grad, double eta) const {
    return point_from(log_ + eta * grad);
  }
  void step(const Eigen::VectorXd& grad, double eta) { log_ += eta * grad; }

 private:
  Eigen::VectorXd log_;
};

/// One extragradient saddle-point run. The callable arguments provide the
/// two players' gradients and the certificate bounds; gradients must be
/// bounded in operator/sup norm by 1 for the default step size.
template <class AliceMirror, class APoint, class GradA, class GradB, class Primal,
          class Dual>
GameValueReport mirror_prox(AliceMirror alice, DensityMirror bob, std::size_t bob_dim,
                            GradA grad_a, GradB grad_b, Primal primal_of, Dual dual_of,
                            const SolveOptions& opt, APoint* alice_avg_out,
                            Eigen::MatrixXcd* bob_avg_out) {
  APoint alice_avg{};
  Eigen::MatrixXcd bob_avg = Eigen::MatrixXcd::Zero(bob_dim, bob_dim);
  std::size_t averaged = 0;

  GameValueReport rep;
  rep.dual = 1.0;
  rep.primal = 0.0;
  rep.duality_gap = std::numeric_limits<double>::infinity();

  for (std::size_t t = 1; t <= opt.max_iterations; ++t) {
    APoint pa = alice.point();
    Eigen::MatrixXcd pb = bob.point();
    APoint ma = alice.midpoint(grad_a(pb), opt.eta);
    Eigen::MatrixXcd mb = bob.midpoint(-grad_b(pa), opt.eta);
    alice.step(grad_a(mb), opt.eta);
    bob.step(-grad_b(ma), opt.eta);

    if (averaged == 0) {
      alice_avg = ma;
    } else {
      alice_avg += ma;
    }
    bob_avg += mb;
    ++averaged;

    if (t % opt.check_every == 0 || t == opt.max_iterations) {
      APoint abar = alice_avg / static_cast<double>(averaged);
      Eigen::MatrixXcd bbar = bob_avg / static_cast<double>(averaged);
      double lo = primal_of(abar);
      double hi = dual_of(bbar);
      if (hi - lo < rep.duality_gap) {
        rep.primal = lo;
        rep.dual = hi;
        rep.duality_gap = hi - lo;
        *alice_avg_out = abar;
        *bob_avg_out = bbar;
      }
      rep.iterations = t;
      if (rep.duality_gap <= opt.tol) {
        rep.converged = true;
        break;
      }
    }
  }
  double mid = 0.5 * (rep.primal + rep.dual);
  rep.value = std::min(1.0, std::max(0.0, mid));
  return rep;
}

}  // namespace detail

/// max over distributions p of lambda_min(sum_y p(y) S_y), certified.
inline GameValueReport solve_distribution_vs_density(
    const std::vector<Eigen::MatrixXcd>& s_ops, const SolveOptions& opt = {}) {
  if (s_ops.empty()) throw std::invalid_argument("solver: no effect operators");
  const std::size_t ny = s_ops.size();
  const std::size_t dm = static_cast<std::size_t>(s_ops[0].rows());

  auto grad_a = [&](const Eigen::MatrixXcd& sigma) {
    Eigen::VectorXd g(ny);
    for (std::size_t y = 0; y < ny; ++y) g(y) = (s_ops[y] * sigma).trace().real();
    return g;
  };
  auto grad_b = [&](const Eigen::VectorXd& p) {
    Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(dm, dm);
    for (std::size_t y = 0; y < ny; ++y) n += p(y) * s_ops[y];
    return n;
  };
  auto primal_of = [&](const Eigen::VectorXd& p) { return min_eigen(grad_b(p)).value; };
  auto dual_of = [&](const Eigen::MatrixXcd& sigma) {
    Eigen::VectorXd g = grad_a(sigma);
    return g.maxCoeff();
  };

  Eigen::VectorXd pbar;
  Eigen::MatrixXcd sbar;
  GameValueReport rep = detail::mirror_prox<detail::SimplexMirror, Eigen::VectorXd>(
      detail::SimplexMirror(ny), detail::DensityMirror(dm), dm, grad_a, grad_b,
      primal_of, dual_of, opt, &pbar, &sbar);
  rep.bob_density = sbar;
  for (std::size_t y = 0; y < ny; ++y) {
    std::string label;
    std::size_t bits = 0;
    for (std::size_t t = ny; t > 1; t >>= 1) ++bits;
    for (std::size_t b = 0; b < bits; ++b)
      label.push_back((y >> (bits - 1 - b)) & 1 ? '1' : '0');
    rep.alice_distribution.probs[label] = pbar(y);
  }
  return rep;
}

/// max over densities rho of lambda_min(sum_y Tr(rho D_y) S_y): the
/// measured-Alice game. D_y are the pulled-back outcome effects.
inline GameValueReport solve_channel_vs_density(
    const std::vector<Eigen::MatrixXcd>& d_ops,
    const std::vector<Eigen::MatrixXcd>& s_ops, const SolveOptions& opt = {}) {
  if (d_ops.size() != s_ops.size() || s_ops.empty())
    throw std::invalid_argument("solver: operator family size mismatch");
  const std::size_t ny = s_ops.size();
  const std::size_t da = static_cast<std::size_t>(d_ops[0].rows());
  const std::size_t dm = static_cast<std::size_t>(s_ops[0].rows());

  auto grad_a = [&](const Eigen::MatrixXcd& sigma) {
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(da, da);
    for (std::size_t y = 0; y < ny; ++y) g += (s_ops[y] * sigma).trace().real() * d_ops[y];
    return g;
  };
  auto grad_b = [&](const Eigen::MatrixXcd& rho) {
    Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(dm, dm);
    for (std::size_t y = 0; y < ny; ++y) n += (d_ops[y] * rho).trace().real() * s_ops[y];
    return n;
  };
  auto primal_of = [&](const Eigen::MatrixXcd& rho) { return min_eigen(grad_b(rho)).value; };
  auto dual_of = [&](const Eigen::MatrixXcd& sigma) { return max_eigen(grad_a(sigma)).value; };

  Eigen::MatrixXcd rbar, sbar;
  GameValueReport rep = detail::mirror_prox<detail::DensityMirror, Eigen::MatrixXcd>(
      detail::DensityMirror(da), detail::DensityMirror(dm), dm, grad_a, grad_b,
      primal_of, dual_of, opt, &rbar, &sbar);
  rep.alice_density = rbar;
  rep.bob_density = sbar;
  return rep;
}

/// max_rho min_sigma Tr(E (rho (x) sigma)) for an effect E on the joint
/// register, Alice's block most significant.
inline GameValueReport solve_joint_effect(const Eigen::MatrixXcd& e, std::size_t da,
                                          std::size_t db, const SolveOptions& opt = {}) {
  if (e.rows() != static_cast<Eigen::Index>(da * db) || e.rows() != e.cols())
    throw std::invalid_argument("solver: joint effect dimension mismatch");

  auto grad_a = [&](const Eigen::MatrixXcd& sigma) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(da, da);
    for (std::size_t a = 0; a < da; ++a)
      for (std::size_t ap = 0; ap < da; ++ap) {
        std::complex<double> acc = 0;
        for (std::size_t b = 0; b < db; ++b)
          for (std::size_t bp = 0; bp < db; ++bp)
            acc += e(a * db + b, ap * db + bp) * sigma(bp, b);
        m(a, ap) = acc;
      }
    return m;
  };
  auto grad_b = [&](const Eigen::MatrixXcd& rho) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(db, db);
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t bp = 0; bp < db; ++bp) {
        std::complex<double> acc = 0;
        for (std::size_t a = 0; a < da; ++a)
          for (std::size_t ap = 0; ap < da; ++ap)
            acc += e(a * db + b, ap * db + bp) * rho(ap, a);
        m(b, bp) = acc;
      }
    return m;
  };
  auto primal_of = [&](const Eigen::MatrixXcd& rho) { return min_eigen(grad_b(rho)).value; };
  auto dual_of = [&](const Eigen::MatrixXcd& sigma) { return max_eigen(grad_a(sigma)).value; };

  Eigen::MatrixXcd rbar, sbar;
  GameValueReport rep = detail::mirror_prox<detail::DensityMirror, Eigen::MatrixXcd>(
      detail::DensityMirror(da), detail::DensityMirror(db), db, grad_a, grad_b,
      primal_of, dual_of, opt, &rbar, &sbar);
  rep.alice_density = rbar;
  rep.bob_density = sbar;
  return rep;
}

inline GameValueReport cqrg_value(const Referee& r, const SolveOptions& opt = {}) {
  if (r.mode != GameMode::Cqrg) throw std::invalid_argument("cqrg_value: wrong mode");
  if (r.alice > 10 || r.bob > 6)
    throw std::invalid_argument("cqrg_value: width cap exceeded (n <= 10, m <= 6)");
  EffectOperatorMap ops = effect_operators(r);
  return solve_distribution_vs_density(ops.floating, opt);
}

inline GameValueReport mqrg_value(const Referee& r, const SolveOptions& opt = {}) {
  if (r.mode != GameMode::Mqrg) throw std::invalid_argument("mqrg_value: wrong mode");
  if (r.alice > 10 || r.bob > 6 || r.outcome > 10)
    throw std::invalid_argument("mqrg_value: width cap exceeded (n, k <= 10, m <= 6)");
  EffectOperatorMap ops = effect_operators(r);

  // Pull each dephased outcome effect |y><y| back through the
  // measurement circuit: D_y = P*(|y><y|).
  std::size_t dy = std::size_t{1} << r.outcome;
  std::vector<Eigen::MatrixXcd> d_ops;
  d_ops.reserve(dy);
  for (std::size_t y = 0; y < dy; ++y) {
    ExactMatrix proj(dy, dy);
    proj.at(y, y) = Dyadic(1);
    d_ops.push_back(to_eigen(adjoint_apply_circuit(r.p_circuit, proj)));
  }
  return solve_channel_vs_density(d_ops, ops.floating, opt);
}

inline GameValueReport qrg_value(const Referee& r, const SolveOptions& opt = {}) {
  if (r.mode != GameMode::Qrg) throw std::invalid_argument("qrg_value: wrong mode");
  if (r.alice + r.bob > 8)
    throw std::invalid_argument("qrg_value: width cap exceeded (n + m <= 8)");
  ValidationReport vr = validate_referee(r);
  if (!vr.ok) throw std::invalid_argument("qrg_value: " + vr.message);

  ExactMatrix accept(2, 2);
  accept.at(1, 1) = Dyadic(1);
  ExactMatrix e = adjoint_apply_circuit(r.q_circuit, accept);
  return solve_joint_effect(to_eigen(e), std::size_t{1} << r.alice,
                            std::size_t{1} << r.bob, opt);
}

inline GameValueReport cqrg_value(const Referee& r, double tol) {
  SolveOptions opt;
  opt.tol = tol;
  return cqrg_value(r, opt);
}

inline GameValueReport mqrg_value(const Referee& r, double tol) {
  SolveOptions opt;
  opt.tol = tol;
  return mqrg_value(r, opt);
}

inline GameValueReport qrg_value(const Referee& r, double tol) {
  SolveOptions opt;
  opt.tol = tol;
  return qrg_value(r, opt);
}

}  // namespace qrg
