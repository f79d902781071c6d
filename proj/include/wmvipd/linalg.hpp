#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wmvipd {

using DVec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm_sq(std::span<const double> v) { return dot(v, v); }

inline double norm(std::span<const double> v) { return std::sqrt(norm_sq(v)); }

inline bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

/// Row-major dense matrix. Large enough for this project (the biggest
/// operator is 148x249), so no sparsity or views.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const DVec& values() const { return values_; }
  DVec& values() { return values_; }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values_.data() + i * cols_, cols_);
  }

  bool is_zero() const {
    for (double x : values_)
      if (x != 0.0) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  DVec values_;
};

/// Partition of a vector space into contiguous blocks.
struct BlockPartition {
  std::vector<std::size_t> sizes;

  BlockPartition() = default;
  explicit BlockPartition(std::vector<std::size_t> block_sizes) : sizes(std::move(block_sizes)) {
    for (std::size_t s : sizes)
      if (s == 0) throw std::invalid_argument("BlockPartition: block size must be >= 1");
  }

  static BlockPartition singletons(std::size_t n) {
    return BlockPartition(std::vector<std::size_t>(n, 1));
  }

  std::size_t count() const { return sizes.size(); }
  std::size_t dim() const { return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}); }

  std::size_t offset(std::size_t block) const {
    std::size_t off = 0;
    for (std::size_t i = 0; i < block; ++i) off += sizes[i];
    return off;
  }
};

inline void matvec_into(const DenseMatrix& a, std::span<const double> v, std::span<double> out) {
  if (v.size() != a.cols()) throw std::invalid_argument("matvec: expected length " + std::to_string(a.cols()) + ", got " + std::to_string(v.size()));
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), v);
}

inline DVec matvec(const DenseMatrix& a, std::span<const double> v) {
  DVec out(a.rows());
  matvec_into(a, v, out);
  return out;
}

inline void matvec_transpose_into(const DenseMatrix& a, std::span<const double> v, std::span<double> out) {
  if (v.size() != a.rows()) throw std::invalid_argument("matvec_transpose: expected length " + std::to_string(a.rows()) + ", got " + std::to_string(v.size()));
  for (std::size_t j = 0; j < a.cols(); ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double vi = v[i];
    auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += r[j] * vi;
  }
}

inline DVec matvec_transpose(const DenseMatrix& a, std::span<const double> v) {
  DVec out(a.cols());
  matvec_transpose_into(a, v, out);
  return out;
}

/// Thrown when power iteration runs out of iterations; carries the last
/// singular-value estimate so callers can still report something useful.
struct PowerIterationError : std::runtime_error {
  double estimate;
  explicit PowerIterationError(double est)
      : std::runtime_error("operator_norm: power iteration did not converge, last estimate " + std::to_string(est)),
        estimate(est) {}
};

/// Largest singular value of `a` via power iteration on AᵀA.
/// Start vector is the normalized all-ones vector; if an iterate collapses
/// (start orthogonal to the top singular space through the null space), it is
/// perturbed deterministically so the run stays reproducible without RNG.
inline double operator_norm(const DenseMatrix& a, double tol = 1e-10, std::size_t max_iter = 10000) {
  if (a.rows() == 0 || a.cols() == 0 || a.is_zero()) throw std::invalid_argument("operator_norm: matrix must be nonzero");
  if (tol <= 0) throw std::invalid_argument("operator_norm: tol must be positive");

  const std::size_t n = a.cols();
  DVec v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  DVec av(a.rows()), w(n);
  double lambda = 0.0;

  for (std::size_t it = 0; it < max_iter; ++it) {
    matvec_into(a, v, av);
    matvec_transpose_into(a, av, w);  // w = AᵀA v
    lambda = dot(w, v);               // Rayleigh quotient, v normalized
    double res_sq = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double r = w[j] - lambda * v[j];
      res_sq += r * r;
    }
    if (std::sqrt(res_sq) <= tol * std::max(lambda, 1e-300)) return std::sqrt(lambda);

    double wn = norm(w);
    if (wn <= 1e-300) {
      // stagnation guard: v fell into the null space; deterministic restart
      for (std::size_t j = 0; j < n; ++j) w[j] = v[j] + 1.0 / static_cast<double>(j + 2);
      wn = norm(w);
    }
    for (std::size_t j = 0; j < n; ++j) v[j] = w[j] / wn;
  }
  throw PowerIterationError(std::sqrt(lambda));
}

/// Operator norm of each column sub-matrix A_ℓ defined by the partition.
inline std::vector<double> block_operator_norms(const DenseMatrix& a, const BlockPartition& p) {
  if (p.dim() != a.cols()) throw std::invalid_argument("block_operator_norms: partition does not match matrix columns");
  std::vector<double> norms;
  norms.reserve(p.count());
  std::size_t off = 0;
  for (std::size_t b = 0; b < p.count(); ++b) {
    const std::size_t w = p.sizes[b];
    DenseMatrix sub(a.rows(), w);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < w; ++j) sub(i, j) = a(i, off + j);
    norms.push_back(sub.is_zero() ? 0.0 : operator_norm(sub));
    off += w;
  }
  return norms;
}

/// ‖AᵀA‖ = ‖A‖².
inline double gram_norm(const DenseMatrix& a, double tol = 1e-10, std::size_t max_iter = 10000) {
  const double s = operator_norm(a, tol, max_iter);
  return s * s;
}

}  // namespace wmvipd
