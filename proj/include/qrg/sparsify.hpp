#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qrg/game_solver.hpp"
#include "qrg/rng.hpp"

namespace qrg {

/// Ordered tuple (y_1, ..., y_N) of equal-length outcome strings.
struct StrategyTuple {
  std::size_t n = 0;  ///< common string length
  std::vector<std::string> strings;
};

struct ExperimentConfig {
  std::size_t trials = 1000;
  std::size_t N = 216;       ///< samples per trial
  double epsilon = 1.0 / 12; ///< deviation
  double eta = 0.0;          ///< reference eigenvalue level (reports only)
  std::size_t dim = 2;       ///< d, operator dimension
  double gamma = 0.25;       ///< conditional-mean bound for dependent tails
  std::uint64_t seed = 0;
};

/// Outcome of one empirical tail experiment against an analytic bound.
struct TailReport {
  double empirical = 0.0;  ///< observed failure/exceedance frequency
  double bound = 0.0;      ///< analytic tail bound
  double threshold = 0.0;  ///< asserted ceiling (bound or 1/3, plus slack)
  double std_error = 0.0;  ///< binomial standard error used for the slack
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  bool exploratory = false;  ///< preconditions not met; nothing asserted
  bool pass = true;          ///< empirical <= threshold (when asserted)
};

inline Distribution tuple_distribution(const StrategyTuple& t) {
  if (t.strings.empty()) throw std::invalid_argument("tuple_distribution: empty tuple");
  Distribution d;
  for (const std::string& s : t.strings) {
    if (s.size() != t.n)
      throw std::invalid_argument("tuple_distribution: inconsistent string length");
    d.probs[s] += 1.0;
  }
  for (auto& [s, v] : d.probs) v /= static_cast<double>(t.strings.size());
  return d;
}

/// N i.i.d. draws from p by inverse CDF in the map's (lexicographic)
/// key order; deterministic for a fixed seed.
inline StrategyTuple sample_tuple(const Distribution& p, std::size_t count,
                                  std::uint64_t seed) {
  if (p.probs.empty()) throw std::invalid_argument("sample_tuple: empty distribution");
  std::vector<std::string> keys;
  std::vector<double> probs;
  for (const auto& [s, v] : p.probs) {
    keys.push_back(s);
    probs.push_back(v);
  }
  Rng rng(seed);
  StrategyTuple t;
  t.n = keys[0].size();
  t.strings.reserve(count);
  for (std::size_t j = 0; j < count; ++j) t.strings.push_back(keys[rng.sample_cdf(probs)]);
  return t;
}

namespace detail {

inline std::size_t outcome_index(const std::string& y, std::size_t n) {
  if (y.size() != n)
    throw std::invalid_argument("outcome string '" + y + "' has length " +
                                std::to_string(y.size()) + ", expected " +
                                std::to_string(n));
  std::size_t idx = 0;
  for (char c : y) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("outcome string '" + y + "' is not binary");
    idx = (idx << 1) | (c == '1');
  }
  return idx;
}

}  // namespace detail

/// lambda_min of (S_{y_1} + ... + S_{y_N}) / N.
inline EigenResult sparsified_min_eig(const EffectOperatorMap& s, const StrategyTuple& t) {
  if (t.strings.empty()) throw std::invalid_argument("sparsified_min_eig: empty tuple");
  std::size_t dm = std::size_t{1} << s.bob_bits;
  Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(dm, dm);
  for (const std::string& y : t.strings)
    avg += s.floating[detail::outcome_index(y, s.outcome_bits)];
  avg /= static_cast<double>(t.strings.size());
  return min_eigen(avg);
}

/// Empirical check of the flat-distribution sparsification lemma:
/// Pr[lambda_min(tuple avg) < lambda_min(sum p(y) S_y) - epsilon] stays
/// below the matrix tail bound 2^m exp(-2 N epsilon^2), and below 1/3
/// once N >= 72(m+2). Asserts the 1/3 claim with 3-sigma slack when the
/// precondition holds; smaller N is reported as exploratory.
inline TailReport check_aly_lemma(const EffectOperatorMap& s, const Distribution& p,
                                  const ExperimentConfig& cfg) {
  std::size_t dm = std::size_t{1} << s.bob_bits;
  Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(dm, dm);
  for (const auto& [y, prob] : p.probs)
    mean += prob * s.floating[detail::outcome_index(y, s.outcome_bits)];
  double target = min_eigen(mean).value - cfg.epsilon;

  std::size_t failures = 0;
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    std::uint64_t trial_seed = mix64(cfg.seed + (trial + 1) * 0x9e3779b97f4a7c15ULL);
    StrategyTuple t = sample_tuple(p, cfg.N, trial_seed);
    if (sparsified_min_eig(s, t).value < target) ++failures;
  }

  TailReport rep;
  rep.trials = cfg.trials;
  rep.seed = cfg.seed;
  rep.empirical = static_cast<double>(failures) / static_cast<double>(cfg.trials);
  rep.bound = static_cast<double>(dm) *
              std::exp(-2.0 * static_cast<double>(cfg.N) * cfg.epsilon * cfg.epsilon);
  rep.exploratory = cfg.N < 72 * (s.bob_bits + 2);
  rep.std_error = std::sqrt((1.0 / 3) * (2.0 / 3) / static_cast<double>(cfg.trials));
  rep.threshold = 1.0 / 3 + 3.0 * rep.std_error;
  rep.pass = rep.exploratory || rep.empirical < rep.threshold;
  return rep;
}

/// Exhaustive search over all |Sigma^n|^N tuples (capped at 10^6) for the
/// one maximizing the sparsified minimum eigenvalue.
inline std::pair<StrategyTuple, EigenResult> brute_force_best_tuple(
    const EffectOperatorMap& s, std::size_t count) {
  if (count == 0) throw std::invalid_argument("brute_force_best_tuple: empty tuple size");
  std::size_t alpha = std::size_t{1} << s.outcome_bits;
  double total = std::pow(static_cast<double>(alpha), static_cast<double>(count));
  if (total > 1e6)
    throw std::runtime_error("brute_force_best_tuple: enumeration cap exceeded: need " +
                             std::to_string(total) + " tuples, cap is 1000000");

  auto string_of = [&](std::size_t y) {
    std::string str(s.outcome_bits, '0');
    for (std::size_t b = 0; b < s.outcome_bits; ++b)
      str[b] = (y >> (s.outcome_bits - 1 - b)) & 1 ? '1' : '0';
    return str;
  };

  StrategyTuple best;
  EigenResult best_eig;
  best_eig.value = -1.0;
  std::size_t tuples = static_cast<std::size_t>(total);
  for (std::size_t code = 0; code < tuples; ++code) {
    std::size_t rem = code;
    StrategyTuple t;
    t.n = s.outcome_bits;
    for (std::size_t j = 0; j < count; ++j) {
      t.strings.push_back(string_of(rem % alpha));
      rem /= alpha;
    }
    EigenResult e = sparsified_min_eig(s, t);
    if (e.value > best_eig.value) {
      best_eig = e;
      best = std::move(t);
    }
  }
  return {best, best_eig};
}

/// Conditional sampler: given the history so far, draws X_k in [0, 1].
using DependentProcess =
    std::function<double(const std::vector<double>& history, Rng& rng)>;

/// Empirical tail of a dependent [0,1] process with conditional means
/// bounded by gamma: Pr[avg >= gamma + epsilon] against exp(-2 N eps^2).
inline TailReport check_dependent_hoeffding(const DependentProcess& process,
                                            const ExperimentConfig& cfg) {
  std::size_t exceed = 0;
  std::vector<double> history;
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    Rng rng = Rng::for_trial(cfg.seed, trial);
    history.clear();
    double sum = 0.0;
    for (std::size_t k = 0; k < cfg.N; ++k) {
      double x = process(history, rng);
      if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("dependent process produced a value outside [0,1]");
      history.push_back(x);
      sum += x;
    }
    if (sum / static_cast<double>(cfg.N) >= cfg.gamma + cfg.epsilon) ++exceed;
  }

  TailReport rep;
  rep.trials = cfg.trials;
  rep.seed = cfg.seed;
  rep.empirical = static_cast<double>(exceed) / static_cast<double>(cfg.trials);
  rep.bound = std::exp(-2.0 * static_cast<double>(cfg.N) * cfg.epsilon * cfg.epsilon);
  double clamped = std::min(std::max(rep.bound, 0.0), 1.0);
  rep.std_error = std::sqrt(clamped * (1.0 - clamped) / static_cast<double>(cfg.trials));
  rep.threshold = rep.bound + 3.0 * rep.std_error;
  rep.pass = rep.empirical <= rep.threshold;
  return rep;
}

}  // namespace qrg
