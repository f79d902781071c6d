#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

#include "wmvipd/dataio.hpp"
#include "wmvipd/problem.hpp"
#include "wmvipd/prox.hpp"
#include "wmvipd/solvers.hpp"

namespace wmvipd {

/// Numerically stable logistic function.
inline double sigmoid(double u) {
  if (u >= 0.0) {
    const double e = std::exp(-u);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(u);
  return e / (1.0 + e);
}

inline double relu(double u) { return u > 0.0 ? u : 0.0; }

/// d/dν of (σ(ν) - ½)².
inline double sigmoid_sq_loss_grad(double nu) {
  const double s = sigmoid(nu);
  return 2.0 * s * (s - 0.5) * (1.0 - s);
}

/// Saddle reformulation of  min_μ Σ (σ(B_iᵀμ - b_i) - ½)²  on the lifted
/// space y = (μ, ν) with the constraint Ay = b, A = [B, -I]. The solver's
/// primal is the 74-dim multiplier with f_i(x_i) = b_i·x_i; the coupling is
/// stored explicitly as M = -Aᵀ (so ‖M‖ = ‖A‖).
inline SaddleProblem build_logistic(const Dataset& d) {
  const auto data = std::make_shared<Dataset>(d);
  const std::size_t m = data->B.rows();
  const std::size_t n = data->B.cols();

  SaddleProblem p;
  p.primal_dim = m;
  p.dual_dim = n + m;
  p.blocks = BlockPartition::singletons(m);
  p.identity_block.assign(m, false);

  p.coupling = DenseMatrix(n + m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) p.coupling(j, i) = -data->B(i, j);
    p.coupling(n + i, i) = 1.0;
  }

  p.prox_f_block = [data](std::size_t i, std::span<const double> in, double gamma,
                          std::span<double> out) {
    out[0] = prox_linear(in[0], ProxStep(gamma), data->b[i]);
  };

  p.g_is_zero = true;
  p.g2_is_zero = false;
  p.lip_g2 = 0.125;
  p.grad_g2 = [n, m](std::span<const double> y, std::span<double> out) {
    for (std::size_t j = 0; j < n; ++j) out[j] = 0.0;
    for (std::size_t i = 0; i < m; ++i) out[n + i] = sigmoid_sq_loss_grad(y[n + i]);
  };

  // K(x,y) = ‖-Aᵀx - ∇g2(y)‖² + ‖Ay - b‖², with -Aᵀx = (-Bᵀx; x).
  p.kkt = [data, n, m](const PrimalDualPoint& z) {
    double err = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double btx = 0.0;
      for (std::size_t i = 0; i < m; ++i) btx += data->B(i, j) * z.x[i];
      err += btx * btx;
    }
    for (std::size_t i = 0; i < m; ++i) {
      const double r = z.x[i] - sigmoid_sq_loss_grad(z.y[n + i]);
      err += r * r;
    }
    for (std::size_t i = 0; i < m; ++i) {
      double row = -z.y[n + i] - data->b[i];
      for (std::size_t j = 0; j < n; ++j) row += data->B(i, j) * z.y[j];
      err += row * row;
    }
    return err;
  };
  return p;
}

/// Saddle reformulation of  min_w ‖b - ReLU(Bw)‖²  on x = (w, (u_j,l_j)
/// pairs, λ) with constraints u = Bw and λ = l. Blocks: n singleton w's,
/// m two-dimensional (u_j, l_j) pairs, m singleton λ's.
inline SaddleProblem build_perceptron(const Dataset& d) {
  const auto data = std::make_shared<Dataset>(d);
  const std::size_t m = data->B.rows();
  const std::size_t n = data->B.cols();

  SaddleProblem p;
  p.primal_dim = n + 3 * m;
  p.dual_dim = 2 * m;

  std::vector<std::size_t> sizes(n, 1);
  sizes.insert(sizes.end(), m, 2);
  sizes.insert(sizes.end(), m, 1);
  p.blocks = BlockPartition(std::move(sizes));
  p.identity_block.assign(n, true);
  p.identity_block.insert(p.identity_block.end(), 2 * m, false);
  p.identity_block.resize(n + 2 * m);

  p.coupling = DenseMatrix(2 * m, n + 3 * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) p.coupling(i, j) = data->B(i, j);
    p.coupling(i, n + 2 * i) = -1.0;        // -u_i
    p.coupling(m + i, n + 2 * i + 1) = 1.0;  // +l_i
    p.coupling(m + i, n + 2 * m + i) = -1.0; // -λ_i
  }

  p.prox_f_block = [data, n, m](std::size_t b, std::span<const double> in, double gamma,
                                std::span<double> out) {
    if (b < n) {
      out[0] = in[0];
    } else if (b < n + m) {
      auto [ut, lt] = proj_relu_graph(in[0], in[1]);
      out[0] = ut;
      out[1] = lt;
    } else {
      out[0] = prox_quadratic_shift(in[0], ProxStep(gamma), data->b[b - n - m]);
    }
  };

  // K(x,y) = ‖A_wᵀy‖² + Σ_j case(u_j) + ‖2(λ-b) + A_λᵀy‖² + ‖Ax‖², where the
  // (u_j,l_j) term is the infimal norm over the ReLU-graph normal cone:
  // u<0: ⟨A_{u_j}ᵀ,y⟩², u=0: 0, u>0: ½⟨A_{u_j}ᵀ+A_{l_j}ᵀ, y⟩².
  p.kkt = [data, n, m](const PrimalDualPoint& z) {
    const double* w = z.x.data();
    const double* lam = z.x.data() + n + 2 * m;
    const double* mu = z.y.data();
    const double* nu = z.y.data() + m;
    double err = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double btmu = 0.0;
      for (std::size_t i = 0; i < m; ++i) btmu += data->B(i, j) * mu[i];
      err += btmu * btmu;
    }
    for (std::size_t j = 0; j < m; ++j) {
      const double u = z.x[n + 2 * j];
      if (u < 0.0) {
        err += mu[j] * mu[j];  // A_{u_j}ᵀy = -μ_j
      } else if (u > 0.0) {
        const double v = -mu[j] + nu[j];
        err += 0.5 * v * v;
      }
    }
    for (std::size_t j = 0; j < m; ++j) {
      const double r = 2.0 * (lam[j] - data->b[j]) - nu[j];  // A_λᵀy = -ν
      err += r * r;
    }
    for (std::size_t i = 0; i < m; ++i) {
      double row = -z.x[n + 2 * i];
      for (std::size_t j = 0; j < n; ++j) row += data->B(i, j) * w[j];
      err += row * row;
      const double row2 = z.x[n + 2 * i + 1] - lam[i];
      err += row2 * row2;
    }
    return err;
  };
  return p;
}

/// Saddle reformulation of  min_w ½‖Bw - b‖²  on x = (w, u) with u = Bw,
/// coupling A = [B, -I]. Convex; used for the SAGA comparison and the
/// Lyapunov tests.
inline SaddleProblem build_least_squares(const Dataset& d) {
  const auto data = std::make_shared<Dataset>(d);
  const std::size_t m = data->B.rows();
  const std::size_t n = data->B.cols();

  SaddleProblem p;
  p.primal_dim = n + m;
  p.dual_dim = m;
  p.blocks = BlockPartition::singletons(n + m);
  p.identity_block.assign(n, true);
  p.identity_block.insert(p.identity_block.end(), m, false);

  p.coupling = DenseMatrix(m, n + m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) p.coupling(i, j) = data->B(i, j);
    p.coupling(i, n + i) = -1.0;
  }

  p.prox_f_block = [data, n](std::size_t b, std::span<const double> in, double gamma,
                             std::span<double> out) {
    out[0] = b < n ? in[0] : prox_half_square(in[0], ProxStep(gamma), data->b[b - n]);
  };

  // K(w) = ‖Bᵀ(Bw - b)‖²; reads only the w part of the iterate.
  p.kkt = [data, n, m](const PrimalDualPoint& z) {
    DVec r(m);
    for (std::size_t i = 0; i < m; ++i) {
      double acc = -data->b[i];
      for (std::size_t j = 0; j < n; ++j) acc += data->B(i, j) * z.x[j];
      r[i] = acc;
    }
    double err = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double btr = 0.0;
      for (std::size_t i = 0; i < m; ++i) btr += data->B(i, j) * r[i];
      err += btr * btr;
    }
    return err;
  };
  return p;
}

/// ALM formulation of the logistic experiment: inner minimization over the
/// lifted y = (μ, ν) of g2(ν) + <Ay - b, x> + (μ/2)‖Ay - b‖², multiplier x.
inline AlmProblem build_logistic_alm(const Dataset& d, const SaddleProblem& parent) {
  const auto data = std::make_shared<Dataset>(d);
  const std::size_t m = data->B.rows();
  const std::size_t n = data->B.cols();

  AlmProblem ap;
  ap.parent = &parent;
  ap.inner_is_primal = false;
  ap.inner_dim = n + m;
  ap.mult_dim = m;
  ap.constraint = DenseMatrix(m, n + m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) ap.constraint(i, j) = data->B(i, j);
    ap.constraint(i, n + i) = -1.0;
  }
  ap.rhs = data->b;
  ap.base_is_zero = false;
  ap.smooth_grad_base = [n, m](std::span<const double> y, std::span<double> out) {
    for (std::size_t j = 0; j < n; ++j) out[j] = 0.0;
    for (std::size_t i = 0; i < m; ++i) out[n + i] = sigmoid_sq_loss_grad(y[n + i]);
  };
  ap.has_prox = false;
  return ap;
}

/// ALM formulation of the perceptron experiment: inner proximal gradient
/// descent over x with the nonsmooth part ‖λ-b‖² + ı_{gp(ReLU)}(u,l),
/// constraint Ax = 0, multiplier y.
inline AlmProblem build_perceptron_alm(const SaddleProblem& parent) {
  AlmProblem ap;
  ap.parent = &parent;
  ap.inner_is_primal = true;
  ap.inner_dim = parent.primal_dim;
  ap.mult_dim = parent.dual_dim;
  ap.constraint = parent.coupling;
  ap.rhs.assign(parent.dual_dim, 0.0);
  ap.base_is_zero = true;
  ap.has_prox = true;
  ap.inner_blocks = parent.blocks;
  ap.prox_inner_block = parent.prox_f_block;
  ap.identity_inner_block = parent.identity_block;
  return ap;
}

}  // namespace wmvipd
