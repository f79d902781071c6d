// Experiment front end: run single solves, print parameter selections,
// sweep weak-MVI estimates, and emit tolerance-vs-cost comparison traces.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wmvipd/wmvipd.hpp"

using namespace wmvipd;

namespace {

enum class Experiment { Logistic, Perceptron, LeastSquares };

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::Logistic: return "logistic";
    case Experiment::Perceptron: return "perceptron";
    case Experiment::LeastSquares: return "least-squares";
  }
  return "?";
}

Experiment experiment_from_string(const std::string& s) {
  if (s == "logistic") return Experiment::Logistic;
  if (s == "perceptron") return Experiment::Perceptron;
  if (s == "least-squares" || s == "least_squares" || s == "ls") return Experiment::LeastSquares;
  throw CLI::ValidationError("--experiment", "unknown experiment '" + s + "'");
}

struct RunSpec {
  Experiment experiment = Experiment::Logistic;
  std::string algo = "ncpdhg";
  double rho = -2e-3;
  std::optional<double> c;
  double tau = 1e-7;
  std::uint64_t max_iter = 10'000'000;
  std::uint64_t seed = 0;
  std::string data_path;
  std::string out_path;
  std::uint64_t kkt_every = 10;
  bool expect_pyrim = false;
  double mu = 0.5;
  double eps_ceg = 0.01;
  std::uint64_t budget = 0;
  std::uint64_t seeds = 10;
  std::vector<double> rhos;
  std::vector<std::string> algos;
};

// Table-calibrated defaults for the residual-balancing knob c.
double default_c(Experiment e, const std::string& algo) {
  if (e == Experiment::Logistic) return algo == "ncspdhg" || algo == "failed" ? 0.1 : 0.4;
  if (e == Experiment::Perceptron) return algo == "ncspdhg" || algo == "failed" ? 0.14 : 0.55;
  return 0.05;
}

std::string default_data_path() {
  if (const char* env = std::getenv("WMVIPD_DATA")) return std::string(env) + "/pyrim_scale";
  return "data/pyrim_scale";
}

Dataset load_data(const RunSpec& spec) {
  const std::string path = spec.data_path.empty() ? default_data_path() : spec.data_path;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open data file '" + path + "'");
  Dataset d = parse_libsvm(in);
  if (spec.expect_pyrim && (d.B.rows() != 74 || d.B.cols() != 27))
    throw std::runtime_error("--expect-pyrim: expected 74x27, got " + std::to_string(d.B.rows()) + "x" + std::to_string(d.B.cols()));
  return d;
}

struct ProblemBundle {
  Dataset data;
  SaddleProblem problem;
  double op_norm = 0.0;
  double sup_block_norm = 0.0;
};

ProblemBundle make_bundle(const RunSpec& spec) {
  ProblemBundle b{load_data(spec), {}, 0.0, 0.0};
  switch (spec.experiment) {
    case Experiment::Logistic: b.problem = build_logistic(b.data); break;
    case Experiment::Perceptron: b.problem = build_perceptron(b.data); break;
    case Experiment::LeastSquares: b.problem = build_least_squares(b.data); break;
  }
  b.op_norm = operator_norm(b.problem.coupling);
  const auto norms = block_operator_norms(b.problem.coupling, b.problem.blocks);
  b.sup_block_norm = *std::max_element(norms.begin(), norms.end());
  return b;
}

AlmProblem make_alm(const RunSpec& spec, const ProblemBundle& b) {
  switch (spec.experiment) {
    case Experiment::Logistic: return build_logistic_alm(b.data, b.problem);
    case Experiment::Perceptron: return build_perceptron_alm(b.problem);
    case Experiment::LeastSquares: {
      // min ½‖u-b‖² over (w,u) s.t. [B,-I](w,u) = 0; the quadratic is smooth,
      // so the inner solver is plain GD with base gradient (0, u-b).
      AlmProblem ap;
      ap.parent = &b.problem;
      ap.inner_is_primal = true;
      ap.inner_dim = b.problem.primal_dim;
      ap.mult_dim = b.problem.dual_dim;
      ap.constraint = b.problem.coupling;
      ap.rhs.assign(b.problem.dual_dim, 0.0);
      ap.base_is_zero = false;
      const std::size_t n = b.data.B.cols();
      const auto bvec = b.data.b;
      ap.smooth_grad_base = [n, bvec](std::span<const double> x, std::span<double> out) {
        for (std::size_t j = 0; j < n; ++j) out[j] = 0.0;
        for (std::size_t i = 0; i < bvec.size(); ++i) out[n + i] = x[n + i] - bvec[i];
      };
      ap.has_prox = false;
      return ap;
    }
  }
  throw std::logic_error("unreachable");
}

double alm_base_lipschitz(const RunSpec& spec, const ProblemBundle& b) {
  switch (spec.experiment) {
    case Experiment::Logistic: return b.problem.lip_g2;
    case Experiment::Perceptron: return 0.0;
    case Experiment::LeastSquares: return 1.0;
  }
  return 0.0;
}

void check_compat(const RunSpec& spec) {
  if (spec.algo == "saga" && spec.experiment != Experiment::LeastSquares)
    throw std::runtime_error("saga is only defined for the least-squares experiment");
}

void append_common_metadata(Trace& tr, const RunSpec& spec, const ProblemBundle& b, double c_used) {
  tr.metadata.emplace_back("experiment", to_string(spec.experiment));
  tr.metadata.emplace_back("rho", detail::format_g17(spec.rho));
  tr.metadata.emplace_back("c", detail::format_g17(c_used));
  tr.metadata.emplace_back("tau", detail::format_g17(spec.tau));
  tr.metadata.emplace_back("max_iter", std::to_string(spec.max_iter));
  tr.metadata.emplace_back("kkt_every", std::to_string(spec.kkt_every));
  tr.metadata.emplace_back("budget_prox_evals", std::to_string(spec.budget));
  tr.metadata.emplace_back("op_norm_coupling", detail::format_g17(b.op_norm));
  tr.metadata.emplace_back("sup_block_norm", detail::format_g17(b.sup_block_norm));
  tr.metadata.emplace_back("lip_g2", detail::format_g17(b.problem.lip_g2));
  tr.metadata.emplace_back("z0", "zero");
}

Trace run_algo(const RunSpec& spec, const ProblemBundle& b) {
  check_compat(spec);
  const double c = spec.c.value_or(default_c(spec.experiment, spec.algo));
  const WeakMviEstimate rho{spec.rho};
  RunOptions opt;
  opt.tau = spec.tau;
  opt.max_iter = spec.max_iter;
  opt.kkt_every = spec.kkt_every;
  opt.max_prox_evals = spec.budget;

  Trace tr;
  if (spec.algo == "ncpdhg") {
    tr = run(b.problem, Algo::NcPdhg, ncpdhg_params(rho, b.op_norm, b.problem.lip_g2, c), opt, spec.seed);
  } else if (spec.algo == "ncspdhg" || spec.algo == "failed") {
    auto cfg = ncspdhg_params(rho, b.op_norm, b.sup_block_norm, b.problem.blocks.count(), b.problem.lip_g2, c);
    tr = run(b.problem, spec.algo == "failed" ? Algo::Failed : Algo::NcSpdhg, cfg, opt, spec.seed);
  } else if (spec.algo == "cegplus") {
    tr = run(b.problem, Algo::CegPlus, ceg_params(rho, b.op_norm, b.problem.lip_g2, spec.eps_ceg), opt, spec.seed);
  } else if (spec.algo == "alm") {
    AlmProblem ap = make_alm(spec, b);
    AlmConfig cfg;
    cfg.mu = spec.mu;
    cfg.inner_gamma = alm_step_size(alm_base_lipschitz(spec, b), spec.mu, gram_norm(ap.constraint));
    tr = run_alm(ap, cfg, opt);
  } else if (spec.algo == "saga") {
    tr = run_saga(b.data.B, b.data.b, SagaConfig{saga_step_size(b.data.B)}, opt, spec.seed);
  } else {
    throw std::runtime_error("unknown algorithm '" + spec.algo + "'");
  }
  append_common_metadata(tr, spec, b, c);
  return tr;
}

int cmd_run(const RunSpec& spec) {
  ProblemBundle b = make_bundle(spec);
  Trace tr = run_algo(spec, b);
  if (!spec.out_path.empty()) {
    std::ofstream out(spec.out_path);
    if (!out) throw std::runtime_error("cannot open output file '" + spec.out_path + "'");
    write_trace_csv(tr, out);
  }
  const auto& last = tr.final_record();
  std::cout << "status=" << to_string(tr.status) << " iterations=" << last.iteration
            << " prox_evals=" << last.prox_evals << " final_kkt=" << detail::format_g17(last.kkt)
            << " elapsed_seconds=" << detail::format_g17(last.elapsed_seconds) << "\n";
  switch (tr.status) {
    case RunStatus::Converged: return 0;
    case RunStatus::Diverged: return 2;
    case RunStatus::MaxIterReached: return 3;
  }
  return 1;
}

int cmd_params(const RunSpec& spec) {
  ProblemBundle b = make_bundle(spec);
  const double c = spec.c.value_or(default_c(spec.experiment, spec.algo));
  const WeakMviEstimate rho{spec.rho};
  std::cout << "experiment=" << to_string(spec.experiment) << " algo=" << spec.algo
            << " rho=" << detail::format_g17(spec.rho) << "\n";
  std::cout << "op_norm=" << detail::format_g17(b.op_norm)
            << " sup_block_norm=" << detail::format_g17(b.sup_block_norm)
            << " lip_g2=" << detail::format_g17(b.problem.lip_g2)
            << " n_blocks=" << b.problem.blocks.count() << "\n";
  if (spec.algo == "ncpdhg") {
    auto p = ncpdhg_params(rho, b.op_norm, b.problem.lip_g2, c);
    const double gmin = std::min(p.gamma_x, p.gamma_y);
    std::cout << "c=" << c << " gamma_x=" << detail::format_g17(p.gamma_x)
              << " gamma_y=" << detail::format_g17(p.gamma_y)
              << " alpha=" << detail::format_g17(p.alpha)
              << " epsilon=" << detail::format_g17(p.epsilon) << "\n";
    std::cout << "alpha_margin=" << detail::format_g17(1.0 + 2.0 * spec.rho / gmin - p.alpha)
              << " step_cond=" << detail::format_g17(2.0 * p.gamma_x * p.gamma_y * b.op_norm * b.op_norm)
              << " gamma_y_bound=" << detail::format_g17(b.problem.lip_g2 > 0 ? 1.0 / (std::sqrt(2.0) * b.problem.lip_g2) : std::numeric_limits<double>::infinity())
              << "\n";
  } else if (spec.algo == "ncspdhg" || spec.algo == "failed") {
    auto p = ncspdhg_params(rho, b.op_norm, b.sup_block_norm, b.problem.blocks.count(), b.problem.lip_g2, c);
    auto t2 = theorem2_constants(p, rho, b.op_norm, b.sup_block_norm, b.problem.blocks.count());
    std::cout << "c=" << c << " gamma_x=" << detail::format_g17(p.gamma_x)
              << " gamma_y=" << detail::format_g17(p.gamma_y)
              << " alpha=" << detail::format_g17(p.alpha) << " theta=" << p.theta
              << " epsilon=" << detail::format_g17(p.epsilon) << "\n";
    std::cout << "C_x=" << detail::format_g17(t2.c_x) << " C_y=" << detail::format_g17(t2.c_y)
              << " C=" << detail::format_g17(t2.c) << "\n";
  } else if (spec.algo == "cegplus") {
    auto p = ceg_params(rho, b.op_norm, b.problem.lip_g2, spec.eps_ceg);
    std::cout << "gamma_ceg=" << detail::format_g17(p.gamma) << " delta=" << detail::format_g17(p.delta)
              << " alpha_ceg=" << detail::format_g17(p.alpha)
              << " eps_ceg=" << detail::format_g17(p.epsilon) << "\n";
  } else if (spec.algo == "alm") {
    AlmProblem ap = make_alm(spec, ProblemBundle{b.data, b.problem, b.op_norm, b.sup_block_norm});
    const double g = alm_step_size(alm_base_lipschitz(spec, b), spec.mu, gram_norm(ap.constraint));
    std::cout << "gamma_alm=" << detail::format_g17(g) << " mu=" << detail::format_g17(spec.mu) << "\n";
  } else if (spec.algo == "saga") {
    check_compat(spec);
    std::cout << "gamma_saga=" << detail::format_g17(saga_step_size(b.data.B)) << "\n";
  } else {
    throw std::runtime_error("unknown algorithm '" + spec.algo + "'");
  }
  return 0;
}

struct SweepCell {
  RunStatus status;
  std::uint64_t prox_evals;
  std::uint64_t iterations;
  double final_kkt;
  std::string reason;
  bool converged() const { return status == RunStatus::Converged && reason.empty(); }
};

int cmd_sweep(const RunSpec& spec_in) {
  RunSpec spec = spec_in;
  if (spec.rhos.empty()) throw CLI::ValidationError("--rhos", "empty rho list");
  ProblemBundle b = make_bundle(spec);
  const std::vector<std::string> algos = {"ncpdhg", "ncspdhg", "cegplus", "alm"};

  std::map<std::string, std::vector<SweepCell>> cells;
  for (const std::string& algo : algos) {
    for (double rho : spec.rhos) {
      RunSpec cell_spec = spec;
      cell_spec.algo = algo;
      cell_spec.rho = rho;
      cell_spec.budget = spec.budget ? spec.budget : 5'000'000;
      cell_spec.max_iter = algo == "alm" ? 2'000
                         : algo == "ncspdhg" ? cell_spec.budget + 1
                                             : 1'000'000;
      SweepCell cell{};
      try {
        if (algo == "ncspdhg") {
          // randomized: a cell passes when >= 80% of seeds converge
          std::uint64_t ok = 0, evals = 0, iters = 0;
          double worst_kkt = 0.0;
          RunStatus last = RunStatus::MaxIterReached;
          for (std::uint64_t s = 0; s < spec.seeds; ++s) {
            cell_spec.seed = spec.seed + s;
            Trace tr = run_algo(cell_spec, b);
            if (tr.status == RunStatus::Converged) {
              ++ok;
              evals += tr.final_record().prox_evals;
              iters += tr.final_record().iteration;
            }
            worst_kkt = std::max(worst_kkt, tr.final_record().kkt);
            last = tr.status;
          }
          if (5 * ok >= 4 * spec.seeds) {
            cell.status = RunStatus::Converged;
            cell.prox_evals = ok ? evals / ok : 0;
            cell.iterations = ok ? iters / ok : 0;
          } else {
            cell.status = last;
            cell.reason = std::to_string(ok) + "/" + std::to_string(spec.seeds) + " seeds converged";
          }
          cell.final_kkt = worst_kkt;
        } else {
          Trace tr = run_algo(cell_spec, b);
          cell.status = tr.status;
          cell.prox_evals = tr.final_record().prox_evals;
          cell.iterations = tr.final_record().iteration;
          cell.final_kkt = tr.final_record().kkt;
        }
      } catch (const std::exception& e) {
        cell.status = RunStatus::Diverged;
        cell.reason = e.what();
      }
      cells[algo].push_back(cell);
    }
  }

  // "(s)" tag: converged with prox cost above 10x the algorithm's median
  std::map<std::string, double> med;
  for (const auto& [algo, row] : cells) {
    std::vector<double> costs;
    for (const auto& c : row)
      if (c.converged()) costs.push_back(static_cast<double>(algo == "alm" ? c.iterations : c.prox_evals));
    if (!costs.empty()) {
      std::sort(costs.begin(), costs.end());
      med[algo] = costs[costs.size() / 2];
    }
  }

  std::ostringstream table;
  table << "rho      ";
  for (double r : spec.rhos) table << "\t" << r;
  table << "\n";
  std::ofstream csv;
  if (!spec.out_path.empty()) {
    csv.open(spec.out_path);
    if (!csv) throw std::runtime_error("cannot open output file '" + spec.out_path + "'");
    csv << "# experiment=" << to_string(spec.experiment) << " tau=" << spec.tau
        << " budget_prox_evals=" << (spec.budget ? spec.budget : 5'000'000)
        << " seeds=" << spec.seeds << "\n";
    csv << "algo,rho,converged,slow,status,prox_evals,iterations,final_kkt,reason\n";
  }
  for (const std::string& algo : algos) {
    table << algo << std::string(algo.size() < 9 ? 9 - algo.size() : 1, ' ');
    for (std::size_t i = 0; i < spec.rhos.size(); ++i) {
      const SweepCell& c = cells[algo][i];
      const double cost = static_cast<double>(algo == "alm" ? c.iterations : c.prox_evals);
      const bool slow = c.converged() && med.count(algo) && cost > 10.0 * med[algo];
      table << "\t" << (c.converged() ? (slow ? "ok(s)" : "ok") : "X");
      if (csv.is_open())
        csv << algo << "," << detail::format_g17(spec.rhos[i]) << "," << (c.converged() ? 1 : 0)
            << "," << (slow ? 1 : 0) << "," << to_string(c.status) << "," << c.prox_evals << ","
            << c.iterations << "," << detail::format_g17(c.final_kkt) << ",\""
            << c.reason << "\"\n";
    }
    table << "\n";
  }
  std::cout << table.str();
  return 0;
}

int cmd_compare(const RunSpec& spec_in) {
  RunSpec spec = spec_in;
  if (spec.algos.empty()) spec.algos = {"ncpdhg", "ncspdhg", "cegplus", "alm"};
  ProblemBundle b = make_bundle(spec);
  const std::string prefix = spec.out_path.empty() ? "compare" : spec.out_path;

  std::ofstream csv(prefix + "_checkpoints.csv");
  if (!csv) throw std::runtime_error("cannot open output file '" + prefix + "_checkpoints.csv'");
  csv << "algo,seed,tolerance,prox_evals,iterations\n";

  auto emit = [&csv](const std::string& algo, std::uint64_t seed, const Trace& tr) {
    for (int e = 1; e <= 7; ++e) {
      const double tol = std::pow(10.0, -e);
      for (const auto& r : tr.records) {
        if (r.kkt <= tol) {
          csv << algo << "," << seed << "," << detail::format_g17(tol) << "," << r.prox_evals
              << "," << r.iteration << "\n";
          break;
        }
      }
    }
  };

  for (const std::string& algo : spec.algos) {
    RunSpec s = spec;
    s.algo = algo;
    const std::uint64_t n_seeds = (algo == "ncspdhg" || algo == "failed" || algo == "saga") ? spec.seeds : 1;
    for (std::uint64_t k = 0; k < n_seeds; ++k) {
      s.seed = spec.seed + k;
      Trace tr = run_algo(s, b);
      emit(algo, s.seed, tr);
      std::ofstream tf(prefix + "_" + algo + (n_seeds > 1 ? "_seed" + std::to_string(s.seed) : "") + ".csv");
      write_trace_csv(tr, tf);
      std::cout << "algo=" << algo << " seed=" << s.seed << " status=" << to_string(tr.status)
                << " prox_evals=" << tr.final_record().prox_evals
                << " final_kkt=" << detail::format_g17(tr.final_record().kkt) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primal-dual solvers for nonconvex-nonconcave saddle point problems"};
  app.require_subcommand(1);

  RunSpec spec;
  std::string experiment = "logistic";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--experiment", experiment, "logistic | perceptron | least-squares");
    sub->add_option("--algo", spec.algo, "ncpdhg | ncspdhg | failed | cegplus | alm | saga");
    sub->add_option("--rho", spec.rho, "weak-MVI estimate (default -2e-3)");
    sub->add_option("--c", [&spec](const std::vector<std::string>& v) {
      spec.c = std::stod(v[0]);
      return true;
    }, "residual-balancing knob in (0,1); default per experiment/algo");
    sub->add_option("--tau", spec.tau, "stationarity tolerance (default 1e-7)");
    sub->add_option("--max-iter", spec.max_iter, "iteration cap");
    sub->add_option("--seed", spec.seed, "RNG seed (default 0)");
    sub->add_option("--data", spec.data_path, "dataset path (default $WMVIPD_DATA/pyrim_scale)");
    sub->add_option("--out", spec.out_path, "output CSV path (or prefix for compare)");
    sub->add_option("--kkt-every", spec.kkt_every, "KKT evaluation stride (default 10)");
    sub->add_option("--mu", spec.mu, "ALM penalty (default 0.5)");
    sub->add_option("--eps-ceg", spec.eps_ceg, "CEG+ alpha slack (default 0.01)");
    sub->add_option("--budget", spec.budget, "prox-evaluation budget (0 = unlimited)");
    sub->add_flag("--expect-pyrim", spec.expect_pyrim, "assert the dataset is 74x27");
  };

  CLI::App* c_run = app.add_subcommand("run", "run one solver to tau-stationarity");
  add_common(c_run);
  CLI::App* c_params = app.add_subcommand("params", "print computed parameters without solving");
  add_common(c_params);
  CLI::App* c_sweep = app.add_subcommand("sweep-rho", "convergence table over rho estimates");
  add_common(c_sweep);
  c_sweep->add_option("--rhos", spec.rhos, "rho values")
      ->default_val(std::vector<double>{0.0, -1e-5, -1e-4, -1e-3, -2e-3, -5e-3, -9e-3});
  c_sweep->add_option("--seeds", spec.seeds, "seeds per randomized cell (default 10)");
  CLI::App* c_compare = app.add_subcommand("compare", "per-algorithm cost at tolerance checkpoints");
  add_common(c_compare);
  c_compare->add_option("--algos", spec.algos, "algorithms to compare");
  c_compare->add_option("--seeds", spec.seeds, "seeds for randomized algorithms (default 10)");

  CLI11_PARSE(app, argc, argv);

  try {
    spec.experiment = experiment_from_string(experiment);
    if (c_run->parsed()) return cmd_run(spec);
    if (c_params->parsed()) return cmd_params(spec);
    if (c_sweep->parsed()) return cmd_sweep(spec);
    if (c_compare->parsed()) return cmd_compare(spec);
  } catch (const InfeasibleRhoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
