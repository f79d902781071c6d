#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>

#include "wmvipd/linalg.hpp"

namespace wmvipd {

/// Step size of a proximal operator.
struct ProxStep {
  double gamma;
  explicit ProxStep(double g) : gamma(g) {
    if (!(g > 0.0)) throw std::invalid_argument("ProxStep: gamma must be positive");
  }
};

/// prox of f(t) = b·t.
inline double prox_linear(double x, ProxStep gamma, double b) { return x - gamma.gamma * b; }

/// prox of h(t) = (t - target)².
inline double prox_quadratic_shift(double lambda, ProxStep gamma, double target) {
  return (lambda + 2.0 * gamma.gamma * target) / (1.0 + 2.0 * gamma.gamma);
}

/// prox of f(t) = ½(t - b)².
inline double prox_half_square(double u, ProxStep gamma, double b) {
  return (u + gamma.gamma * b) / (1.0 + gamma.gamma);
}

/// Projection onto {(t, max(0,t))}, the graph of ReLU. The graph is not
/// convex, so the nearest point is picked by the four-case rule; ties on the
/// boundary lines resolve to the first matching case, and at u < 0 with
/// (1+√2)u + l = 0 the point (u, 0) is the closer one.
inline std::pair<double, double> proj_relu_graph(double u, double l) {
  static const double kSlope = 1.0 + std::sqrt(2.0);
  double u_tilde;
  if (u >= 0.0) {
    u_tilde = (u + l <= 0.0) ? 0.0 : 0.5 * (u + l);
  } else {
    u_tilde = (kSlope * u + l > 0.0) ? 0.5 * (u + l) : u;
  }
  return {u_tilde, std::max(0.0, u_tilde)};
}

/// prox of the zero function.
inline DVec prox_identity(DVec x) { return x; }

inline void prox_identity_inplace(std::span<double>) {}

/// Vectorized appliers for the scalar proxes, used by the block builders.
inline void prox_linear_block(std::span<const double> x, ProxStep gamma, std::span<const double> b, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = prox_linear(x[i], gamma, b[i]);
}

inline void prox_half_square_block(std::span<const double> u, ProxStep gamma, std::span<const double> b, std::span<double> out) {
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = prox_half_square(u[i], gamma, b[i]);
}

inline void proj_relu_graph_block(std::span<const double> ul, std::span<double> out) {
  for (std::size_t i = 0; i + 1 < ul.size(); i += 2) {
    auto [ut, lt] = proj_relu_graph(ul[i], ul[i + 1]);
    out[i] = ut;
    out[i + 1] = lt;
  }
}

}  // namespace wmvipd
