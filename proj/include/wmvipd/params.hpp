#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wmvipd/linalg.hpp"
#include "wmvipd/problem.hpp"

namespace wmvipd {

inline constexpr double kAlphaGuard = 1e-6;  // keeps strict theorem inequalities strict

struct NcPdhgParams {
  double gamma_x;
  double gamma_y;
  double alpha;
  double c;
  double epsilon;
};

struct NcSpdhgParams {
  double gamma_x;
  double gamma_y;
  double alpha;
  double theta;
  double c;
  double epsilon;
};

struct CegParams {
  double gamma;
  double delta;
  double alpha;
  double epsilon;
};

struct BaselineParams {
  double ceg_gamma;
  double ceg_delta;
  double ceg_alpha;
  double ceg_epsilon;
  double alm_mu;
  double alm_gamma;
  double saga_gamma;
};

struct Theorem2Constants {
  double c_x;
  double c_y;
  double c;
};

struct InfeasibleRhoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// ρ² < max{ 1/(8‖A‖²), 1/(8 L²) }, the L term read as +∞ when L = 0.
inline bool check_rho_feasible(WeakMviEstimate rho, double op_norm_a, double lip_g2) {
  if (!(op_norm_a > 0.0)) throw std::invalid_argument("check_rho_feasible: op_norm_a must be positive");
  if (lip_g2 == 0.0) return true;
  const double bound = std::max(1.0 / (8.0 * op_norm_a * op_norm_a), 1.0 / (8.0 * lip_g2 * lip_g2));
  return rho.rho * rho.rho < bound;
}

namespace detail {

/// ε = c · min( 1/‖A‖, (1 − 8‖A‖²ρ²)/(4‖A‖²|ρ|), 1/(√2 L) − 2|ρ| ),
/// with the |ρ|- and L-denominated terms read as +∞ at ρ = 0 and L = 0.
inline double epsilon_term(double rho, double op_norm_a, double lip_g2, double c) {
  const double inf = std::numeric_limits<double>::infinity();
  const double abs_rho = std::abs(rho);
  const double a_sq = op_norm_a * op_norm_a;
  const double t1 = 1.0 / op_norm_a;
  const double t2 = abs_rho == 0.0 ? inf : (1.0 - 8.0 * a_sq * rho * rho) / (4.0 * a_sq * abs_rho);
  const double t3 = lip_g2 == 0.0 ? inf : 1.0 / (std::sqrt(2.0) * lip_g2) - 2.0 * abs_rho;
  return c * std::min({t1, t2, t3});
}

inline void check_inputs(WeakMviEstimate rho, double op_norm_a, double lip_g2, double c) {
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("params: c must lie in (0,1)");
  if (!check_rho_feasible(rho, op_norm_a, lip_g2))
    throw InfeasibleRhoError("infeasible rho: rho^2 >= max{1/(8|A|^2), 1/(8 L^2)} with |A|=" + std::to_string(op_norm_a) + ", L=" + std::to_string(lip_g2) + ", rho=" + std::to_string(rho.rho));
}

}  // namespace detail

/// Step sizes and extrapolation for NC-PDHG (f2 = 0 setting):
/// γy = 2|ρ| + ε, γx = 1/(2 γy ‖A‖²), α = 1 + 2ρ/min(γx, γy) clamped to 1.
/// For ρ < 0 the α boundary is strict in the theorem, so the returned value
/// sits a relative kAlphaGuard inside it.
inline NcPdhgParams ncpdhg_params(WeakMviEstimate rho, double op_norm_a, double lip_g2, double c) {
  detail::check_inputs(rho, op_norm_a, lip_g2, c);
  const double eps = detail::epsilon_term(rho.rho, op_norm_a, lip_g2, c);
  if (!(eps > 0.0)) throw InfeasibleRhoError("infeasible rho: the epsilon rule gives eps <= 0 (rho too negative for this operator norm)");
  const double gy = 2.0 * std::abs(rho.rho) + eps;
  const double gx = 1.0 / (2.0 * gy * op_norm_a * op_norm_a);
  const double gmin = std::min(gx, gy);
  double alpha;
  if (rho.rho < 0.0) {
    alpha = (1.0 + 2.0 * rho.rho / gmin) * (1.0 - kAlphaGuard);
  } else {
    alpha = 1.0;
  }
  if (!(alpha > 0.0)) throw InfeasibleRhoError("ncpdhg_params: nonpositive alpha; constants defeat the selection rule");
  return {gx, gy, alpha, c, eps};
}

/// Step sizes, extrapolation and θ for NC-SPDHG:
/// γy = 2|ρ| + ε, γx = 1/(2 γy ‖A‖²),
/// α = min( 1 − 2|ρ|/γy,
///          2(γx − γx²γy‖A‖² − |ρ|) / (γx + γx²γy(m·sup_ℓ‖A_ℓ‖² − ‖A‖²)) ),
/// shaved by kAlphaGuard so C_x > 0 and C_y > 0 hold strictly. θ = m.
inline NcSpdhgParams ncspdhg_params(WeakMviEstimate rho, double op_norm_a, double sup_block_norm,
                                    std::size_t n_blocks, double lip_g2, double c) {
  if (n_blocks == 0) throw std::invalid_argument("ncspdhg_params: n_blocks must be >= 1");
  detail::check_inputs(rho, op_norm_a, lip_g2, c);
  const double eps = detail::epsilon_term(rho.rho, op_norm_a, lip_g2, c);
  if (!(eps > 0.0)) throw InfeasibleRhoError("infeasible rho: the epsilon rule gives eps <= 0 (rho too negative for this operator norm)");
  const double abs_rho = std::abs(rho.rho);
  const double a_sq = op_norm_a * op_norm_a;
  const double gy = 2.0 * abs_rho + eps;
  const double gx = 1.0 / (2.0 * gy * a_sq);
  const double m = static_cast<double>(n_blocks);
  const double sup_sq = sup_block_norm * sup_block_norm;
  const double term1 = 1.0 - 2.0 * abs_rho / gy;
  const double term2 = 2.0 * (gx - gx * gx * gy * a_sq - abs_rho) /
                       (gx + gx * gx * gy * (m * sup_sq - a_sq));
  const double alpha = std::min({term1, term2, 1.0}) * (1.0 - kAlphaGuard);
  if (!(alpha > 0.0))
    throw InfeasibleRhoError("ncspdhg_params: nonpositive alpha; the problem constants defeat the selection rule");
  return {gx, gy, alpha, m, c, eps};
}

/// CEG+ constants: γ = 1/(√2(L + ‖A‖)), δ = ρ, α = 1 + 2δ/γ − ε.
inline CegParams ceg_params(WeakMviEstimate rho, double op_norm_a, double lip_g2, double eps_ceg = 0.01) {
  if (!(eps_ceg > 0.0)) throw std::invalid_argument("ceg_params: eps_ceg must be positive");
  const double gamma = 1.0 / (std::sqrt(2.0) * (lip_g2 + op_norm_a));
  const double delta = rho.rho;
  const double alpha = 1.0 + 2.0 * delta / gamma - eps_ceg;
  if (!(alpha > 0.0)) throw InfeasibleRhoError("ceg_params: nonpositive alpha");
  return {gamma, delta, alpha, eps_ceg};
}

/// γ_alm = 1/(L_{∇g2} + μ‖AᵀA‖).
inline double alm_step_size(double lip_g2, double mu, double gram_norm_a) {
  if (!(mu > 0.0)) throw std::invalid_argument("alm_step_size: mu must be positive");
  const double denom = lip_g2 + mu * gram_norm_a;
  if (denom == 0.0) throw std::invalid_argument("alm_step_size: zero denominator");
  return 1.0 / denom;
}

/// γ_saga = 1 / max_i ‖B_i‖² over the rows of B.
inline double saga_step_size(const DenseMatrix& b) {
  double max_sq = 0.0;
  for (std::size_t i = 0; i < b.rows(); ++i) max_sq = std::max(max_sq, norm_sq(b.row(i)));
  if (max_sq == 0.0) throw std::invalid_argument("saga_step_size: zero matrix");
  return 1.0 / max_sq;
}

inline Theorem2Constants theorem2_constants(const NcSpdhgParams& p, WeakMviEstimate rho,
                                            double op_norm_a, double sup_block_norm,
                                            std::size_t n_blocks) {
  const double a_sq = op_norm_a * op_norm_a;
  const double sup_sq = sup_block_norm * sup_block_norm;
  const double m = static_cast<double>(n_blocks);
  const double cx = rho.rho + p.gamma_x * (1.0 - p.alpha / 2.0) -
                    p.gamma_x * p.gamma_x * p.gamma_y *
                        ((1.0 - p.alpha / 2.0) * a_sq + p.alpha * m * sup_sq / 2.0);
  const double cy = rho.rho + p.gamma_y / 2.0 * (1.0 - p.alpha);
  return {cx, cy, std::min(cx, cy)};
}

}  // namespace wmvipd
