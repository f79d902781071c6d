#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wmvipd/linalg.hpp"

namespace wmvipd {

/// Primal-dual iterate z = (x, y).
struct PrimalDualPoint {
  DVec x;
  DVec y;

  bool finite() const { return all_finite(x) && all_finite(y); }
};

/// The residual pair D̄ = (F̄, Ḡ), an explicit element of the Lagrangian's
/// subdifferential at the intermediate iterate.
struct ResidualPoint {
  DVec f_bar;
  DVec g_bar;

  double squared_norm() const { return norm_sq(f_bar) + norm_sq(g_bar); }
};

/// Weak-MVI modulus estimate; may be negative.
struct WeakMviEstimate {
  double rho;
};

/// min-max problem  f(x) + f2(x) + <coupling·x, y> - g2(y) - g(y)
/// as a bundle of callbacks and constants. `coupling` maps the primal space
/// into the dual space (rows = dual_dim, cols = primal_dim). Callbacks must
/// be pure; the struct is immutable after construction by a builder.
struct SaddleProblem {
  std::size_t primal_dim = 0;
  std::size_t dual_dim = 0;
  BlockPartition blocks;
  DenseMatrix coupling;

  /// (block index, block input, gamma, block output); out may alias in.
  std::function<void(std::size_t, std::span<const double>, double, std::span<double>)> prox_f_block;
  /// Per-block flag: true when the block prox is the identity (never counted
  /// in prox_eval_count).
  std::vector<bool> identity_block;

  /// prox of g; unused when g_is_zero.
  std::function<void(std::span<const double>, double, std::span<double>)> prox_g;
  bool g_is_zero = true;

  std::function<void(std::span<const double>, std::span<double>)> grad_g2;
  bool g2_is_zero = true;
  std::function<void(std::span<const double>, std::span<double>)> grad_f2;
  bool f2_is_zero = true;

  double lip_g2 = 0.0;
  double lip_f2 = 0.0;

  std::function<double(const PrimalDualPoint&)> kkt;

  void check_point(const PrimalDualPoint& z) const {
    if (z.x.size() != primal_dim || z.y.size() != dual_dim)
      throw std::invalid_argument("SaddleProblem: point dimensions do not match problem");
  }

  PrimalDualPoint zero_point() const { return {DVec(primal_dim, 0.0), DVec(dual_dim, 0.0)}; }

  DVec eval_grad_g2(std::span<const double> y) const {
    DVec g(dual_dim, 0.0);
    if (!g2_is_zero) grad_g2(y, g);
    return g;
  }

  DVec eval_grad_f2(std::span<const double> x) const {
    DVec g(primal_dim, 0.0);
    if (!f2_is_zero) grad_f2(x, g);
    return g;
  }
};

/// Lemma-1 residual:
///   F̄ = (x_prev - x_bar)/γx + ∇f2(x_bar) - ∇f2(x_prev)
///   Ḡ = (y_prev - y_bar)/γy + ∇g2(y_bar) - ∇g2(y_prev) + A(x_prev - x_bar)
inline ResidualPoint residual(const SaddleProblem& p, std::span<const double> x_prev,
                              std::span<const double> y_prev, std::span<const double> x_bar,
                              std::span<const double> y_bar, double gamma_x, double gamma_y) {
  if (!(gamma_x > 0.0) || !(gamma_y > 0.0)) throw std::invalid_argument("residual: step sizes must be positive");
  if (x_prev.size() != p.primal_dim || x_bar.size() != p.primal_dim || y_prev.size() != p.dual_dim || y_bar.size() != p.dual_dim)
    throw std::invalid_argument("residual: dimension mismatch");

  ResidualPoint r;
  r.f_bar.resize(p.primal_dim);
  for (std::size_t i = 0; i < p.primal_dim; ++i) r.f_bar[i] = (x_prev[i] - x_bar[i]) / gamma_x;
  if (!p.f2_is_zero) {
    DVec gb = p.eval_grad_f2(x_bar), gp = p.eval_grad_f2(x_prev);
    for (std::size_t i = 0; i < p.primal_dim; ++i) r.f_bar[i] += gb[i] - gp[i];
  }

  DVec dx(p.primal_dim);
  for (std::size_t i = 0; i < p.primal_dim; ++i) dx[i] = x_prev[i] - x_bar[i];
  r.g_bar = matvec(p.coupling, dx);
  for (std::size_t i = 0; i < p.dual_dim; ++i) r.g_bar[i] += (y_prev[i] - y_bar[i]) / gamma_y;
  if (!p.g2_is_zero) {
    DVec gb = p.eval_grad_g2(y_bar), gp = p.eval_grad_g2(y_prev);
    for (std::size_t i = 0; i < p.dual_dim; ++i) r.g_bar[i] += gb[i] - gp[i];
  }
  return r;
}

inline double kkt_error(const SaddleProblem& p, const PrimalDualPoint& z) {
  p.check_point(z);
  if (!z.finite()) throw std::domain_error("kkt_error: point has non-finite entries");
  return p.kkt(z);
}

inline bool is_tau_stationary(const SaddleProblem& p, const PrimalDualPoint& z, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("is_tau_stationary: tau must be positive");
  return kkt_error(p, z) <= tau;
}

/// wx·‖x - x_ref‖² + wy·‖y - y_ref‖².
inline double weighted_distance_sq(const PrimalDualPoint& z, const PrimalDualPoint& z_ref,
                                   double wx, double wy) {
  if (!(wx > 0.0) || !(wy > 0.0)) throw std::invalid_argument("weighted_distance_sq: weights must be positive");
  if (z.x.size() != z_ref.x.size() || z.y.size() != z_ref.y.size())
    throw std::invalid_argument("weighted_distance_sq: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < z.x.size(); ++i) {
    const double d = z.x[i] - z_ref.x[i];
    s += wx * d * d;
  }
  for (std::size_t i = 0; i < z.y.size(); ++i) {
    const double d = z.y[i] - z_ref.y[i];
    s += wy * d * d;
  }
  return s;
}

}  // namespace wmvipd
