#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "wmvipd/params.hpp"
#include "wmvipd/problem.hpp"
#include "wmvipd/prox.hpp"
#include "wmvipd/rng.hpp"

namespace wmvipd {

enum class RunStatus { Converged, Diverged, MaxIterReached };

inline const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Converged: return "Converged";
    case RunStatus::Diverged: return "Diverged";
    case RunStatus::MaxIterReached: return "MaxIterReached";
  }
  return "?";
}

inline RunStatus status_from_string(std::string_view s) {
  if (s == "Converged") return RunStatus::Converged;
  if (s == "Diverged") return RunStatus::Diverged;
  if (s == "MaxIterReached") return RunStatus::MaxIterReached;
  throw std::invalid_argument("unknown run status: " + std::string(s));
}

struct TraceRow {
  std::uint64_t iteration;
  std::uint64_t prox_evals;
  double kkt;
  double elapsed_seconds;
};

struct Trace {
  std::vector<TraceRow> records;
  RunStatus status = RunStatus::MaxIterReached;
  std::vector<std::pair<std::string, std::string>> metadata;

  const TraceRow& final_record() const {
    if (records.empty()) throw std::logic_error("Trace: no records");
    return records.back();
  }
};

inline constexpr std::uint64_t kCachedAxRefreshInterval = 1000;

struct SolverState {
  PrimalDualPoint z;
  DVec cached_ax;  // coupling·x, kept incrementally by the coordinate methods
  std::uint64_t iteration = 0;
  std::uint64_t prox_evals = 0;
  Xorshift64Star rng{0};
  // SAGA only
  std::vector<DVec> gradient_table;
  DVec table_mean;
};

namespace detail {

inline std::size_t count_nonidentity_blocks(const SaddleProblem& p) {
  std::size_t n = 0;
  for (bool id : p.identity_block)
    if (!id) ++n;
  return n;
}

inline void apply_prox_f(const SaddleProblem& p, std::span<const double> in, double gamma,
                         std::span<double> out, std::uint64_t& prox_evals) {
  std::size_t off = 0;
  for (std::size_t b = 0; b < p.blocks.count(); ++b) {
    const std::size_t w = p.blocks.sizes[b];
    p.prox_f_block(b, in.subspan(off, w), gamma, out.subspan(off, w));
    if (!p.identity_block[b]) ++prox_evals;
    off += w;
  }
}

inline void apply_prox_g(const SaddleProblem& p, std::span<const double> in, double gamma,
                         std::span<double> out, std::uint64_t& prox_evals) {
  if (p.g_is_zero) {
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i];
  } else {
    p.prox_g(in, gamma, out);
    ++prox_evals;
  }
}

}  // namespace detail

inline SolverState make_state(const SaddleProblem& p, std::optional<PrimalDualPoint> z0 = {},
                              std::uint64_t seed = 0) {
  SolverState s;
  s.z = z0 ? std::move(*z0) : p.zero_point();
  p.check_point(s.z);
  s.cached_ax = matvec(p.coupling, s.z.x);
  s.rng = Xorshift64Star(seed);
  return s;
}

/// One NC-PDHG iteration (dual forward/prox, primal forward/prox, two
/// extrapolated updates). Returns the Lemma-1 residual of the step.
inline ResidualPoint ncpdhg_step(const SaddleProblem& p, SolverState& s, const NcPdhgParams& cfg) {
  const DVec& x = s.z.x;
  const DVec& y = s.z.y;

  DVec g2_y = p.eval_grad_g2(y);
  DVec ax = matvec(p.coupling, x);
  DVec y_hat(p.dual_dim);
  for (std::size_t i = 0; i < p.dual_dim; ++i) y_hat[i] = y[i] + cfg.gamma_y * (ax[i] - g2_y[i]);
  DVec y_bar(p.dual_dim);
  detail::apply_prox_g(p, y_hat, cfg.gamma_y, y_bar, s.prox_evals);

  DVec at_ybar = matvec_transpose(p.coupling, y_bar);
  DVec f2_x = p.eval_grad_f2(x);
  DVec x_hat(p.primal_dim);
  for (std::size_t i = 0; i < p.primal_dim; ++i) x_hat[i] = x[i] - cfg.gamma_x * (f2_x[i] + at_ybar[i]);
  DVec x_bar(p.primal_dim);
  detail::apply_prox_f(p, x_hat, cfg.gamma_x, x_bar, s.prox_evals);

  ResidualPoint res = residual(p, x, y, x_bar, y_bar, cfg.gamma_x, cfg.gamma_y);

  DVec f2_xbar = p.eval_grad_f2(x_bar);
  DVec g2_ybar = p.eval_grad_g2(y_bar);
  DVec a_xbar = matvec(p.coupling, x_bar);

  DVec x_next(p.primal_dim), y_next(p.dual_dim);
  for (std::size_t i = 0; i < p.primal_dim; ++i)
    x_next[i] = x[i] + cfg.alpha * (x_bar[i] - x_hat[i] - cfg.gamma_x * (f2_xbar[i] + at_ybar[i]));
  for (std::size_t i = 0; i < p.dual_dim; ++i)
    y_next[i] = y[i] + cfg.alpha * (y_bar[i] - y_hat[i] + cfg.gamma_y * (a_xbar[i] - g2_ybar[i]));

  s.z.x = std::move(x_next);
  s.z.y = std::move(y_next);
  ++s.iteration;
  return res;
}

namespace detail {

/// Shared body of NC-SPDHG and the failed variant; they differ only in the
/// factor on the random dual extrapolation term.
inline void spdhg_step_impl(const SaddleProblem& p, SolverState& s, const NcSpdhgParams& cfg,
                            bool extra_alpha_factor) {
  if (static_cast<std::size_t>(cfg.theta) != p.blocks.count())
    throw std::invalid_argument("spdhg step: theta must equal the number of primal blocks");

  DVec& x = s.z.x;
  DVec& y = s.z.y;

  DVec g2_y = p.eval_grad_g2(y);
  DVec y_hat(p.dual_dim);
  for (std::size_t i = 0; i < p.dual_dim; ++i) y_hat[i] = y[i] + cfg.gamma_y * (s.cached_ax[i] - g2_y[i]);
  DVec y_bar(p.dual_dim);
  apply_prox_g(p, y_hat, cfg.gamma_y, y_bar, s.prox_evals);

  const std::size_t i_blk = static_cast<std::size_t>(s.rng.next_below(p.blocks.count()));
  const std::size_t off = p.blocks.offset(i_blk);
  const std::size_t w = p.blocks.sizes[i_blk];

  // x̂ and x̄ only on the drawn block: (A_iᵀ ȳ)_j over the block columns
  DVec x_hat_blk(w);
  for (std::size_t j = 0; j < w; ++j) {
    double acc = 0.0;
    for (std::size_t r = 0; r < p.dual_dim; ++r) acc += p.coupling(r, off + j) * y_bar[r];
    x_hat_blk[j] = x[off + j] - cfg.gamma_x * acc;
  }
  DVec x_bar_blk(w);
  p.prox_f_block(i_blk, x_hat_blk, cfg.gamma_x, x_bar_blk);
  if (!p.identity_block[i_blk]) ++s.prox_evals;

  DVec delta(w);
  for (std::size_t j = 0; j < w; ++j) {
    const double x_new = (1.0 - cfg.alpha) * x[off + j] + cfg.alpha * x_bar_blk[j];
    delta[j] = x_new - x[off + j];
    x[off + j] = x_new;
  }

  DVec a_delta(p.dual_dim, 0.0);
  for (std::size_t j = 0; j < w; ++j) {
    const double dj = delta[j];
    if (dj == 0.0) continue;
    for (std::size_t r = 0; r < p.dual_dim; ++r) a_delta[r] += p.coupling(r, off + j) * dj;
  }

  DVec g2_ybar = p.eval_grad_g2(y_bar);
  const double extrap = extra_alpha_factor ? cfg.alpha * cfg.gamma_y * cfg.theta : cfg.gamma_y * cfg.theta;
  for (std::size_t r = 0; r < p.dual_dim; ++r) {
    y[r] = (1.0 - cfg.alpha) * y[r] + cfg.alpha * y_bar[r] + extrap * a_delta[r] +
           cfg.alpha * cfg.gamma_y * (g2_y[r] - g2_ybar[r]);
    s.cached_ax[r] += a_delta[r];
  }

  ++s.iteration;
  if (s.iteration % kCachedAxRefreshInterval == 0) matvec_into(p.coupling, x, s.cached_ax);
}

}  // namespace detail

/// One NC-SPDHG iteration: draw a uniform block, update that primal block and
/// the full dual with the random extrapolation γyθ·A(x_{k+1} - x_k).
inline void ncspdhg_step(const SaddleProblem& p, SolverState& s, const NcSpdhgParams& cfg) {
  detail::spdhg_step_impl(p, s, cfg, /*extra_alpha_factor=*/false);
}

/// The non-convergent control variant: identical except the dual
/// extrapolation term carries an extra factor α.
inline void failed_spdhg_step(const SaddleProblem& p, SolverState& s, const NcSpdhgParams& cfg) {
  detail::spdhg_step_impl(p, s, cfg, /*extra_alpha_factor=*/true);
}

/// Full x̄_{k+1} of the current NC-SPDHG state (all blocks), for residual
/// logging and the expectation-identity tests. Does not advance the state.
inline std::pair<DVec, DVec> ncspdhg_bar_point(const SaddleProblem& p, const SolverState& s,
                                               const NcSpdhgParams& cfg) {
  DVec g2_y = p.eval_grad_g2(s.z.y);
  DVec y_hat(p.dual_dim);
  for (std::size_t i = 0; i < p.dual_dim; ++i) y_hat[i] = s.z.y[i] + cfg.gamma_y * (s.cached_ax[i] - g2_y[i]);
  DVec y_bar(p.dual_dim);
  std::uint64_t scratch = 0;
  detail::apply_prox_g(p, y_hat, cfg.gamma_y, y_bar, scratch);

  DVec at_ybar = matvec_transpose(p.coupling, y_bar);
  DVec x_hat(p.primal_dim);
  for (std::size_t i = 0; i < p.primal_dim; ++i) x_hat[i] = s.z.x[i] - cfg.gamma_x * at_ybar[i];
  DVec x_bar(p.primal_dim);
  detail::apply_prox_f(p, x_hat, cfg.gamma_x, x_bar, scratch);
  return {std::move(x_bar), std::move(y_bar)};
}

/// One CEG+ iteration: z̄ = T(z - γF(z)), z⁺ = T(z - αγF(z̄)), where F is the
/// smooth saddle operator (Aᵀy + ∇f2(x), ∇g2(y) - Ax) and T applies the
/// proximal maps of f and g at step γ.
inline void ceg_plus_step(const SaddleProblem& p, SolverState& s, const CegParams& cfg) {
  auto field = [&p](const DVec& x, const DVec& y, DVec& fx, DVec& fy) {
    fx = matvec_transpose(p.coupling, y);
    if (!p.f2_is_zero) {
      DVec g = p.eval_grad_f2(x);
      for (std::size_t i = 0; i < p.primal_dim; ++i) fx[i] += g[i];
    }
    fy = matvec(p.coupling, x);
    DVec g2 = p.eval_grad_g2(y);
    for (std::size_t i = 0; i < p.dual_dim; ++i) fy[i] = g2[i] - fy[i];
  };
  auto apply_t = [&p, &s](const DVec& x, const DVec& y, DVec& tx, DVec& ty, double gamma) {
    tx.resize(p.primal_dim);
    ty.resize(p.dual_dim);
    detail::apply_prox_f(p, x, gamma, tx, s.prox_evals);
    detail::apply_prox_g(p, y, gamma, ty, s.prox_evals);
  };

  DVec fx, fy;
  field(s.z.x, s.z.y, fx, fy);
  DVec ux(p.primal_dim), uy(p.dual_dim);
  for (std::size_t i = 0; i < p.primal_dim; ++i) ux[i] = s.z.x[i] - cfg.gamma * fx[i];
  for (std::size_t i = 0; i < p.dual_dim; ++i) uy[i] = s.z.y[i] - cfg.gamma * fy[i];
  DVec xb, yb;
  apply_t(ux, uy, xb, yb, cfg.gamma);

  field(xb, yb, fx, fy);
  const double step = cfg.alpha * cfg.gamma;
  for (std::size_t i = 0; i < p.primal_dim; ++i) ux[i] = s.z.x[i] - step * fx[i];
  for (std::size_t i = 0; i < p.dual_dim; ++i) uy[i] = s.z.y[i] - step * fy[i];
  apply_t(ux, uy, s.z.x, s.z.y, cfg.gamma);

  ++s.iteration;
}

/// Augmented-Lagrangian inner problem: minimize over the inner variable
///   base(inner) + <C·inner - rhs, mult> + (μ/2)‖C·inner - rhs‖²
/// by (proximal) gradient descent, then ascend the multiplier at rate μ.
struct AlmProblem {
  const SaddleProblem* parent = nullptr;
  DenseMatrix constraint;  // C
  DVec rhs;
  std::function<void(std::span<const double>, std::span<double>)> smooth_grad_base;
  bool base_is_zero = true;
  bool has_prox = false;
  BlockPartition inner_blocks;
  std::function<void(std::size_t, std::span<const double>, double, std::span<double>)> prox_inner_block;
  std::vector<bool> identity_inner_block;
  bool inner_is_primal = false;  // false: inner = z.y, multiplier = z.x
  std::size_t inner_dim = 0;
  std::size_t mult_dim = 0;
};

struct AlmConfig {
  double mu = 0.5;
  double inner_gamma = 0.0;
  std::uint64_t inner_max = 10000;
  double inner_tol = 1e-9;
};

inline void alm_step(const AlmProblem& ap, SolverState& s, const AlmConfig& cfg) {
  if (!(cfg.mu > 0.0) || !(cfg.inner_gamma > 0.0)) throw std::invalid_argument("alm_step: mu and inner_gamma must be positive");
  DVec& inner = ap.inner_is_primal ? s.z.x : s.z.y;
  DVec& mult = ap.inner_is_primal ? s.z.y : s.z.x;

  DVec c_inner(ap.mult_dim), grad(ap.inner_dim), trial(ap.inner_dim);
  for (std::uint64_t it = 0; it < cfg.inner_max; ++it) {
    matvec_into(ap.constraint, inner, c_inner);
    DVec lin(ap.mult_dim);
    for (std::size_t r = 0; r < ap.mult_dim; ++r) lin[r] = mult[r] + cfg.mu * (c_inner[r] - ap.rhs[r]);
    matvec_transpose_into(ap.constraint, lin, grad);
    if (!ap.base_is_zero) {
      DVec g(ap.inner_dim);
      ap.smooth_grad_base(inner, g);
      for (std::size_t j = 0; j < ap.inner_dim; ++j) grad[j] += g[j];
    }

    if (!ap.has_prox) {
      if (norm(grad) <= cfg.inner_tol) break;
      for (std::size_t j = 0; j < ap.inner_dim; ++j) inner[j] -= cfg.inner_gamma * grad[j];
    } else {
      for (std::size_t j = 0; j < ap.inner_dim; ++j) trial[j] = inner[j] - cfg.inner_gamma * grad[j];
      std::size_t off = 0;
      for (std::size_t b = 0; b < ap.inner_blocks.count(); ++b) {
        const std::size_t w = ap.inner_blocks.sizes[b];
        ap.prox_inner_block(b, std::span<const double>(trial.data() + off, w), cfg.inner_gamma,
                            std::span<double>(trial.data() + off, w));
        if (!ap.identity_inner_block[b]) ++s.prox_evals;
        off += w;
      }
      double gm_sq = 0.0;
      for (std::size_t j = 0; j < ap.inner_dim; ++j) {
        const double d = (inner[j] - trial[j]) / cfg.inner_gamma;
        gm_sq += d * d;
      }
      inner.swap(trial);
      if (std::sqrt(gm_sq) <= cfg.inner_tol) break;
    }
    if (!all_finite(inner)) break;
  }

  matvec_into(ap.constraint, inner, c_inner);
  for (std::size_t r = 0; r < ap.mult_dim; ++r) mult[r] += cfg.mu * (c_inner[r] - ap.rhs[r]);
  ++s.iteration;
}

struct SagaConfig {
  double gamma;
};

inline void saga_init_table(const DenseMatrix& b_mat, std::span<const double> b_vec, SolverState& s) {
  const std::size_t m = b_mat.rows(), n = b_mat.cols();
  s.gradient_table.assign(m, DVec(n, 0.0));
  s.table_mean.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = dot(b_mat.row(i), s.z.x) - b_vec[i];
    for (std::size_t j = 0; j < n; ++j) {
      s.gradient_table[i][j] = b_mat(i, j) * r;
      s.table_mean[j] += b_mat(i, j) * r / static_cast<double>(m);
    }
  }
}

/// One SAGA iteration on min_w ½Σ(B_iᵀw - b_i)².
inline void saga_step(const DenseMatrix& b_mat, std::span<const double> b_vec, SolverState& s,
                      const SagaConfig& cfg) {
  const std::size_t m = b_mat.rows(), n = b_mat.cols();
  DVec& w = s.z.x;
  const std::size_t j = static_cast<std::size_t>(s.rng.next_below(m));
  const double r = dot(b_mat.row(j), w) - b_vec[j];
  DVec g_new(n);
  for (std::size_t k = 0; k < n; ++k) g_new[k] = b_mat(j, k) * r;
  for (std::size_t k = 0; k < n; ++k) {
    w[k] -= cfg.gamma * (g_new[k] - s.gradient_table[j][k] + s.table_mean[k]);
    s.table_mean[k] += (g_new[k] - s.gradient_table[j][k]) / static_cast<double>(m);
    s.gradient_table[j][k] = g_new[k];
  }
  ++s.iteration;
}

struct RunOptions {
  double tau = 1e-7;
  std::uint64_t max_iter = 0;
  std::uint64_t kkt_every = 10;
  std::uint64_t max_prox_evals = 0;  // 0 = unlimited
  double divergence_threshold = 1e12;
};

/// Iterate `step`, evaluating `kkt` at iteration 0 and then every kkt_every
/// iterations (and at termination), recording each evaluation. Stops on
/// τ-stationarity, divergence (non-finite iterate or KKT above the
/// threshold), the iteration cap, or the prox budget.
template <class StepFn, class KktFn>
Trace run_loop(SolverState& s, StepFn&& step, KktFn&& kkt, const RunOptions& opt) {
  if (!(opt.tau > 0.0)) throw std::invalid_argument("run: tau must be positive");
  if (opt.kkt_every == 0) throw std::invalid_argument("run: kkt_every must be >= 1");
  Trace tr;
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&start] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  for (;;) {
    const bool at_checkpoint = (s.iteration % opt.kkt_every == 0);
    const bool out_of_iters = s.iteration >= opt.max_iter;
    const bool out_of_budget = opt.max_prox_evals != 0 && s.prox_evals >= opt.max_prox_evals;
    if (at_checkpoint || out_of_iters || out_of_budget) {
      const bool finite = s.z.finite();
      const double k = finite ? kkt(s.z) : std::numeric_limits<double>::infinity();
      tr.records.push_back({s.iteration, s.prox_evals, k, elapsed()});
      if (!finite || !(k <= opt.divergence_threshold)) {
        tr.status = RunStatus::Diverged;
        return tr;
      }
      if (k <= opt.tau) {
        tr.status = RunStatus::Converged;
        return tr;
      }
      if (out_of_iters || out_of_budget) {
        tr.status = RunStatus::MaxIterReached;
        return tr;
      }
    }
    step(s);
  }
}

enum class Algo { NcPdhg, NcSpdhg, Failed, CegPlus };

inline const char* to_string(Algo a) {
  switch (a) {
    case Algo::NcPdhg: return "ncpdhg";
    case Algo::NcSpdhg: return "ncspdhg";
    case Algo::Failed: return "failed";
    case Algo::CegPlus: return "cegplus";
  }
  return "?";
}

using AlgoConfig = std::variant<NcPdhgParams, NcSpdhgParams, CegParams>;

/// Run one of the primal-dual algorithms on `p` from z0 (default 0).
inline Trace run(const SaddleProblem& p, Algo algo, const AlgoConfig& cfg, const RunOptions& opt,
                 std::uint64_t seed = 0, std::optional<PrimalDualPoint> z0 = {}) {
  SolverState s = make_state(p, std::move(z0), seed);
  auto kkt = [&p](const PrimalDualPoint& z) { return p.kkt(z); };

  Trace tr;
  switch (algo) {
    case Algo::NcPdhg: {
      const auto& c = std::get<NcPdhgParams>(cfg);
      tr = run_loop(s, [&](SolverState& st) { ncpdhg_step(p, st, c); }, kkt, opt);
      tr.metadata.emplace_back("gamma_x", std::to_string(c.gamma_x));
      tr.metadata.emplace_back("gamma_y", std::to_string(c.gamma_y));
      tr.metadata.emplace_back("alpha", std::to_string(c.alpha));
      break;
    }
    case Algo::NcSpdhg:
    case Algo::Failed: {
      const auto& c = std::get<NcSpdhgParams>(cfg);
      if (static_cast<std::size_t>(c.theta) != p.blocks.count())
        throw std::invalid_argument("run: theta must equal the number of primal blocks");
      const bool failed = algo == Algo::Failed;
      tr = run_loop(
          s,
          [&](SolverState& st) {
            failed ? failed_spdhg_step(p, st, c) : ncspdhg_step(p, st, c);
          },
          kkt, opt);
      tr.metadata.emplace_back("gamma_x", std::to_string(c.gamma_x));
      tr.metadata.emplace_back("gamma_y", std::to_string(c.gamma_y));
      tr.metadata.emplace_back("alpha", std::to_string(c.alpha));
      tr.metadata.emplace_back("theta", std::to_string(c.theta));
      break;
    }
    case Algo::CegPlus: {
      const auto& c = std::get<CegParams>(cfg);
      tr = run_loop(s, [&](SolverState& st) { ceg_plus_step(p, st, c); }, kkt, opt);
      tr.metadata.emplace_back("gamma", std::to_string(c.gamma));
      tr.metadata.emplace_back("delta", std::to_string(c.delta));
      tr.metadata.emplace_back("alpha", std::to_string(c.alpha));
      tr.metadata.emplace_back("variant", "eg-plus-two-prox");
      break;
    }
  }
  tr.metadata.emplace_back("algo", to_string(algo));
  tr.metadata.emplace_back("seed", std::to_string(seed));
  tr.metadata.emplace_back("prox_accounting", "block-prox+nontrivial-dual;identity-excluded");
  return tr;
}

inline Trace run_alm(const AlmProblem& ap, const AlmConfig& cfg, const RunOptions& opt,
                     std::optional<PrimalDualPoint> z0 = {}) {
  SolverState s = make_state(*ap.parent, std::move(z0));
  auto kkt = [&ap](const PrimalDualPoint& z) { return ap.parent->kkt(z); };
  Trace tr = run_loop(s, [&](SolverState& st) { alm_step(ap, st, cfg); }, kkt, opt);
  tr.metadata.emplace_back("algo", "alm");
  tr.metadata.emplace_back("mu", std::to_string(cfg.mu));
  tr.metadata.emplace_back("inner_gamma", std::to_string(cfg.inner_gamma));
  tr.metadata.emplace_back("inner_tol", std::to_string(cfg.inner_tol));
  tr.metadata.emplace_back("inner_max", std::to_string(cfg.inner_max));
  return tr;
}

inline Trace run_saga(const DenseMatrix& b_mat, const DVec& b_vec, const SagaConfig& cfg,
                      const RunOptions& opt, std::uint64_t seed = 0, std::optional<DVec> w0 = {}) {
  SolverState s;
  s.z.x = w0 ? std::move(*w0) : DVec(b_mat.cols(), 0.0);
  s.rng = Xorshift64Star(seed);
  saga_init_table(b_mat, b_vec, s);
  auto kkt = [&](const PrimalDualPoint& z) {
    DVec r = matvec(b_mat, z.x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b_vec[i];
    return norm_sq(matvec_transpose(b_mat, r));
  };
  Trace tr = run_loop(s, [&](SolverState& st) { saga_step(b_mat, b_vec, st, cfg); }, kkt, opt);
  tr.metadata.emplace_back("algo", "saga");
  tr.metadata.emplace_back("gamma", std::to_string(cfg.gamma));
  tr.metadata.emplace_back("seed", std::to_string(seed));
  return tr;
}

}  // namespace wmvipd
