#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qrg/formats.hpp"
#include "qrg/game_solver.hpp"
#include "qrg/gap_suite.hpp"
#include "qrg/predicates.hpp"
#include "qrg/report.hpp"
#include "qrg/sparsify.hpp"

namespace {

using namespace qrg;
using Clock = std::chrono::steady_clock;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::string tmp = out_path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    os << text;
    if (!os) throw std::runtime_error("cannot write '" + tmp + "'");
  }
  std::filesystem::rename(tmp, out_path);
}

std::uint64_t env_seed() {
  const char* s = std::getenv("QRG_SEED");
  if (!s || !*s) return 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(s, &end, 10);
  if (end == s || *end)
    throw std::invalid_argument("QRG_SEED is not an unsigned integer: '" +
                                std::string(s) + "'");
  return v;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const char* mode_name(GameMode m) {
  switch (m) {
    case GameMode::Qrg: return "qrg";
    case GameMode::Cqrg: return "cqrg";
    case GameMode::Mqrg: return "mqrg";
  }
  return "?";
}

JsonValue matrix_json(const Eigen::MatrixXcd& m) {
  JsonValue rows = JsonValue::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    JsonValue row = JsonValue::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      JsonValue cell = JsonValue::array();
      cell.push(JsonValue::number(m(i, j).real()));
      cell.push(JsonValue::number(m(i, j).imag()));
      row.push(std::move(cell));
    }
    rows.push(std::move(row));
  }
  return rows;
}

JsonValue distribution_json(const Distribution& d) {
  JsonValue obj = JsonValue::object();
  for (const auto& [y, p] : d.probs) obj.set(y, JsonValue::number(p));
  return obj;
}

JsonValue tuple_json(const StrategyTuple& t) {
  JsonValue arr = JsonValue::array();
  for (const std::string& y : t.strings) arr.push(JsonValue::string(y));
  return arr;
}

JsonValue trace_power_json(const TracePowerCertificate& c) {
  JsonValue obj = JsonValue::object();
  obj.set("H", JsonValue::integer(c.H_value));
  obj.set("K", JsonValue::integer(c.K_value));
  obj.set("r", JsonValue::integer(static_cast<std::uint64_t>(c.r)));
  obj.set("m", JsonValue::integer(static_cast<std::uint64_t>(c.m)));
  obj.set("N", JsonValue::integer(static_cast<std::uint64_t>(c.N)));
  obj.set("decision", JsonValue::string(c.accept ? "accept" : "reject"));
  return obj;
}

JsonValue tail_json(const TailReport& t) {
  JsonValue obj = JsonValue::object();
  obj.set("empirical", JsonValue::number(t.empirical));
  obj.set("bound", JsonValue::number(t.bound));
  obj.set("std_error", JsonValue::number(t.std_error));
  obj.set("threshold", JsonValue::number(t.threshold));
  obj.set("trials", JsonValue::integer(static_cast<std::uint64_t>(t.trials)));
  obj.set("exploratory", JsonValue::boolean(t.exploratory));
  obj.set("pass", JsonValue::boolean(t.pass));
  return obj;
}

struct ValueArgs {
  std::string file, mode, out;
  double tol = 1e-4;
  std::size_t max_iterations = 200000;
  bool strategies = false;
  bool timing = false;
};

int cmd_value(const ValueArgs& a) {
  Clock::time_point t0 = Clock::now();
  std::string text = slurp(a.file);
  Referee r = parse_referee_text(text);
  if (!a.mode.empty() && a.mode != mode_name(r.mode))
    throw std::invalid_argument("mode mismatch: file declares '" +
                                std::string(mode_name(r.mode)) + "', --mode says '" +
                                a.mode + "'");
  SolveOptions opts;
  opts.tol = a.tol;
  opts.max_iterations = a.max_iterations;
  GameValueReport rep;
  switch (r.mode) {
    case GameMode::Qrg: rep = qrg_value(r, opts); break;
    case GameMode::Cqrg: rep = cqrg_value(r, opts); break;
    case GameMode::Mqrg: rep = mqrg_value(r, opts); break;
  }

  RunReport rr;
  rr.command = "value";
  rr.inputs = {{a.file, fnv1a64_hex(text)}};
  JsonValue res = JsonValue::object();
  res.set("mode", JsonValue::string(mode_name(r.mode)));
  res.set("value", JsonValue::number(rep.value));
  res.set("primal", JsonValue::number(rep.primal));
  res.set("dual", JsonValue::number(rep.dual));
  res.set("duality_gap", JsonValue::number(rep.duality_gap));
  res.set("iterations", JsonValue::integer(static_cast<std::uint64_t>(rep.iterations)));
  res.set("converged", JsonValue::boolean(rep.converged));
  res.set("tolerance", JsonValue::number(a.tol));
  if (!rep.alice_distribution.probs.empty())
    res.set("alice_distribution", distribution_json(rep.alice_distribution));
  if (a.strategies) {
    if (rep.alice_density.size() > 0)
      res.set("alice_density", matrix_json(rep.alice_density));
    if (rep.bob_density.size() > 0) res.set("bob_density", matrix_json(rep.bob_density));
  }
  rr.results = std::move(res);
  if (a.timing) rr.wall_time_s = seconds_since(t0);
  emit(a.out, rr.render());
  return rep.converged ? 0 : 2;
}

struct SparsifyArgs {
  std::string file, out;
  std::size_t N = 216;
  std::size_t trials = 1000;
  double epsilon = 1.0 / 12;
  double tol = 1e-4;
  std::uint64_t seed = 0;
  bool timing = false;
};

int cmd_sparsify(const SparsifyArgs& a) {
  Clock::time_point t0 = Clock::now();
  std::string text = slurp(a.file);
  Referee r = parse_referee_text(text);
  SolveOptions opts;
  opts.tol = a.tol;
  GameValueReport game =
      r.mode == GameMode::Mqrg ? mqrg_value(r, opts) : cqrg_value(r, opts);
  EffectOperatorMap s = effect_operators(r);

  ExperimentConfig cfg;
  cfg.trials = a.trials;
  cfg.N = a.N;
  cfg.epsilon = a.epsilon;
  cfg.seed = a.seed;
  TailReport tail = check_aly_lemma(s, game.alice_distribution, cfg);

  RunReport rr;
  rr.command = "sparsify";
  rr.inputs = {{a.file, fnv1a64_hex(text)}};
  rr.has_seed = true;
  rr.seed = a.seed;
  JsonValue res = JsonValue::object();
  res.set("mode", JsonValue::string(mode_name(r.mode)));
  res.set("game_value", JsonValue::number(game.value));
  res.set("duality_gap", JsonValue::number(game.duality_gap));
  res.set("N", JsonValue::integer(static_cast<std::uint64_t>(a.N)));
  res.set("epsilon", JsonValue::number(a.epsilon));
  res.set("tail", tail_json(tail));
  rr.results = std::move(res);
  if (a.timing) rr.wall_time_s = seconds_since(t0);
  emit(a.out, rr.render());
  return tail.pass ? 0 : 2;
}

struct PredicateArgs {
  std::string file, tuple, out;
  bool exists = false;
  std::size_t N = 0;
  bool timing = false;
};

int cmd_predicate(const PredicateArgs& a) {
  Clock::time_point t0 = Clock::now();
  if (a.exists == !a.tuple.empty())
    throw std::invalid_argument("pass exactly one of --tuple or --exists");
  std::string text = slurp(a.file);
  Referee r = parse_referee_text(text);

  RunReport rr;
  rr.command = "predicate";
  rr.inputs = {{a.file, fnv1a64_hex(text)}};
  JsonValue res = JsonValue::object();
  int code = 0;
  if (!a.tuple.empty()) {
    StrategyTuple t;
    std::stringstream ss(a.tuple);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) throw std::invalid_argument("empty entry in --tuple");
      t.strings.push_back(item);
    }
    if (t.strings.empty()) throw std::invalid_argument("empty --tuple");
    t.n = t.strings[0].size();
    TracePowerCertificate cert = trace_power_decide(r, t);
    res.set("kind", JsonValue::string("trace_power"));
    res.set("tuple", tuple_json(t));
    res.set("certificate", trace_power_json(cert));
  } else {
    if (a.N == 0) throw std::invalid_argument("--exists needs --N >= 1");
    ExistsPpResult e = exists_pp_decide(r, a.N);
    res.set("kind", JsonValue::string("exists"));
    res.set("N", JsonValue::integer(static_cast<std::uint64_t>(a.N)));
    res.set("examined", JsonValue::integer(static_cast<std::uint64_t>(e.examined)));
    res.set("accept", JsonValue::boolean(e.accept));
    if (e.accept) res.set("witness", tuple_json(e.witness));
    res.set("certificate", trace_power_json(e.certificate));
  }
  rr.results = std::move(res);
  if (a.timing) rr.wall_time_s = seconds_since(t0);
  emit(a.out, rr.render());
  return code;
}

struct GapCheckArgs {
  std::string suite = "default";
  std::string out;
  std::uint64_t seed = 0;
  std::size_t instances = 100;
  std::size_t circuits = 50;
  bool timing = false;
};

int cmd_gap_check(const GapCheckArgs& a) {
  Clock::time_point t0 = Clock::now();
  if (a.suite != "default")
    throw std::invalid_argument("unknown suite '" + a.suite + "'");
  std::vector<SuiteCheck> checks = run_gap_suite(a.seed, a.instances, a.circuits);

  RunReport rr;
  rr.command = "gap-check";
  rr.has_seed = true;
  rr.seed = a.seed;
  JsonValue arr = JsonValue::array();
  bool all = true;
  for (const SuiteCheck& c : checks) {
    JsonValue obj = JsonValue::object();
    obj.set("name", JsonValue::string(c.name));
    obj.set("instances", JsonValue::integer(static_cast<std::uint64_t>(c.instances)));
    obj.set("matches", JsonValue::integer(static_cast<std::uint64_t>(c.matches)));
    obj.set("pass", JsonValue::boolean(c.pass()));
    all = all && c.pass();
    arr.push(std::move(obj));
  }
  JsonValue res = JsonValue::object();
  res.set("suite", JsonValue::string(a.suite));
  res.set("checks", std::move(arr));
  res.set("pass", JsonValue::boolean(all));
  rr.results = std::move(res);
  if (a.timing) rr.wall_time_s = seconds_since(t0);
  emit(a.out, rr.render());
  return all ? 0 : 2;
}

struct TailboundArgs {
  std::string process, file, out;
  std::size_t n = 144;
  double gamma = 0.25;
  bool gamma_given = false;
  double epsilon = 1.0 / 12;
  std::size_t trials = 10000;
  double tol = 1e-4;
  std::uint64_t seed = 0;
  bool timing = false;
};

int cmd_tailbound(const TailboundArgs& a) {
  Clock::time_point t0 = Clock::now();
  ExperimentConfig cfg;
  cfg.trials = a.trials;
  cfg.N = a.n;
  cfg.epsilon = a.epsilon;
  cfg.gamma = a.gamma;
  cfg.seed = a.seed;

  RunReport rr;
  rr.command = "tailbound";
  rr.has_seed = true;
  rr.seed = a.seed;
  JsonValue res = JsonValue::object();
  res.set("process", JsonValue::string(a.process));

  DependentProcess proc;
  if (a.process == "iid") {
    double g = cfg.gamma;
    proc = [g](const std::vector<double>&, Rng& rng) {
      return rng.bernoulli(g) ? 1.0 : 0.0;
    };
  } else if (a.process == "markov") {
    double g = cfg.gamma;
    proc = [g](const std::vector<double>& h, Rng& rng) {
      double p = (!h.empty() && h.back() >= 0.5) ? g * g : g;
      return rng.bernoulli(p) ? 1.0 : 0.0;
    };
  } else if (a.process == "referee") {
    if (a.file.empty())
      throw std::invalid_argument("--process referee needs a referee file");
    std::string text = slurp(a.file);
    Referee r = parse_referee_text(text);
    SolveOptions opts;
    opts.tol = a.tol;
    GameValueReport game =
        r.mode == GameMode::Mqrg ? mqrg_value(r, opts) : cqrg_value(r, opts);
    EffectOperatorMap s = effect_operators(r);
    std::vector<double> probs, zs;
    for (const auto& [y, p] : game.alice_distribution.probs) {
      probs.push_back(p);
      std::complex<double> tr =
          (s.floating[detail::outcome_index(y, s.outcome_bits)] * game.bob_density)
              .trace();
      zs.push_back(std::min(1.0, std::max(0.0, tr.real())));
    }
    if (!a.gamma_given) cfg.gamma = game.dual;
    proc = [probs, zs](const std::vector<double>&, Rng& rng) {
      return zs[rng.sample_cdf(probs)];
    };
    rr.inputs = {{a.file, fnv1a64_hex(text)}};
    res.set("game_value", JsonValue::number(game.value));
    res.set("dual", JsonValue::number(game.dual));
  } else {
    throw std::invalid_argument("unknown process '" + a.process +
                                "' (expected iid, markov, or referee)");
  }

  TailReport tail = check_dependent_hoeffding(proc, cfg);
  res.set("n", JsonValue::integer(static_cast<std::uint64_t>(a.n)));
  res.set("gamma", JsonValue::number(cfg.gamma));
  res.set("epsilon", JsonValue::number(a.epsilon));
  res.set("tail", tail_json(tail));
  rr.results = std::move(res);
  if (a.timing) rr.wall_time_s = seconds_since(t0);
  emit(a.out, rr.render());
  return tail.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact engine for one-turn refereed quantum games"};
  app.require_subcommand(1);

  ValueArgs va;
  SparsifyArgs sa;
  PredicateArgs pa;
  GapCheckArgs ga;
  TailboundArgs ta;

  CLI::App* value = app.add_subcommand("value", "Solve a referee file for the game value");
  value->add_option("file", va.file, "referee file")->required();
  value->add_option("--mode", va.mode, "expected mode (qrg|cqrg|mqrg)");
  value->add_option("--tol", va.tol, "duality-gap tolerance");
  value->add_option("--max-iterations", va.max_iterations, "solver iteration cap");
  value->add_flag("--strategies", va.strategies, "include density operators");
  value->add_option("--out", va.out, "write the report here instead of stdout");
  value->add_flag("--timing", va.timing, "include wall time in the report");

  CLI::App* sparsify =
      app.add_subcommand("sparsify", "Empirical sparsification-lemma experiment");
  sparsify->add_option("file", sa.file, "referee file (cqrg or mqrg)")->required();
  sparsify->add_option("--N", sa.N, "samples per trial");
  sparsify->add_option("--trials", sa.trials, "trial count");
  sparsify->add_option("--epsilon", sa.epsilon, "eigenvalue deviation");
  sparsify->add_option("--tol", sa.tol, "solver tolerance");
  CLI::Option* sseed = sparsify->add_option("--seed", sa.seed, "master seed");
  sparsify->add_option("--out", sa.out, "write the report here instead of stdout");
  sparsify->add_flag("--timing", sa.timing, "include wall time in the report");

  CLI::App* predicate =
      app.add_subcommand("predicate", "Exact trace-power decision certificates");
  predicate->add_option("file", pa.file, "referee file (cqrg or mqrg)")->required();
  predicate->add_option("--tuple", pa.tuple, "comma-separated outcome strings");
  predicate->add_flag("--exists", pa.exists, "search all tuples of length --N");
  predicate->add_option("--N", pa.N, "tuple length for --exists");
  predicate->add_option("--out", pa.out, "write the report here instead of stdout");
  predicate->add_flag("--timing", pa.timing, "include wall time in the report");

  CLI::App* gapcheck =
      app.add_subcommand("gap-check", "Combinator/semantic equivalence suite");
  gapcheck->add_option("--suite", ga.suite, "suite name");
  CLI::Option* gseed = gapcheck->add_option("--seed", ga.seed, "suite seed");
  gapcheck->add_option("--instances", ga.instances, "instances per combinator check");
  gapcheck->add_option("--circuits", ga.circuits, "circuits for the entry check");
  gapcheck->add_option("--out", ga.out, "write the report here instead of stdout");
  gapcheck->add_flag("--timing", ga.timing, "include wall time in the report");

  CLI::App* tailbound =
      app.add_subcommand("tailbound", "Dependent-process tail-bound experiment");
  tailbound->add_option("--process", ta.process, "iid | markov | referee")->required();
  tailbound->add_option("--file", ta.file, "referee file for --process referee");
  tailbound->add_option("--n", ta.n, "steps per trial");
  CLI::Option* tgamma = tailbound->add_option("--gamma", ta.gamma, "conditional-mean bound");
  tailbound->add_option("--epsilon", ta.epsilon, "deviation");
  tailbound->add_option("--trials", ta.trials, "trial count");
  tailbound->add_option("--tol", ta.tol, "solver tolerance (referee process)");
  CLI::Option* tseed = tailbound->add_option("--seed", ta.seed, "master seed");
  tailbound->add_option("--out", ta.out, "write the report here instead of stdout");
  tailbound->add_flag("--timing", ta.timing, "include wall time in the report");

  try {
    app.parse(argc, argv);
    std::uint64_t fallback = env_seed();
    if (!*sseed) sa.seed = fallback;
    if (!*gseed) ga.seed = fallback;
    if (!*tseed) ta.seed = fallback;
    ta.gamma_given = static_cast<bool>(*tgamma);

    if (*value) return cmd_value(va);
    if (*sparsify) return cmd_sparsify(sa);
    if (*predicate) return cmd_predicate(pa);
    if (*gapcheck) return cmd_gap_check(ga);
    return cmd_tailbound(ta);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
