#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "lewis/weights.hpp"

namespace lewis::linalg {

using Index = Eigen::Index;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using SquareMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense tall matrix A (n x d, n >= d) stored row-major.
///
/// Construction rejects non-finite entries, all-zero rows and column-rank
/// deficiency, so every downstream Gram matrix is positive definite.
class RowMatrix {
 public:
  explicit RowMatrix(Matrix entries);

  Index rows() const noexcept { return a_.rows(); }
  Index cols() const noexcept { return a_.cols(); }
  const Matrix& entries() const noexcept { return a_; }
  auto row(Index i) const { return a_.row(i); }

  /// A * R for a square R; the result is validated like any other input.
  RowMatrix times(const SquareMatrix& r) const;

 private:
  Matrix a_;
};

/// Per-row quadratic-form scaling c > 0; A^T Diag(c) A is the weighted Gram matrix.
class ScalingVector {
 public:
  explicit ScalingVector(std::vector<double> values);
  static ScalingVector ones(Index n);

  Index size() const noexcept { return static_cast<Index>(c_.size()); }
  double operator[](Index i) const { return c_[static_cast<std::size_t>(i)]; }
  std::span<const double> values() const noexcept { return c_; }

 private:
  std::vector<double> c_;
};

enum class SketchRoute {
  automatic,          ///< explicit signs when affordable, implicit Gaussian otherwise
  explicit_signs,     ///< materialized Rademacher projection (bit-sliced)
  implicit_gaussian,  ///< Gaussian projection Gram drawn directly via Bartlett
};

inline constexpr double kDefaultRowsPerInvEps2 = 40.0;

struct SketchConfig {
  double eps = 0.1;
  double delta = 0.01;
  std::uint64_t seed = 0;
  double rows_per_inv_eps2 = kDefaultRowsPerInvEps2;
  SketchRoute route = SketchRoute::automatic;

  void validate() const;
  /// ceil(C * ln(n / delta) / eps^2).
  double sketch_rows(Index n) const;
  /// Route actually taken for an n x d input.
  SketchRoute resolve_route(Index n, Index d) const;
};

/// A^T Diag(c) A. Throws ConditioningError if it is singular to working precision.
SquareMatrix gram(const RowMatrix& a, const ScalingVector& c);

/// sigma_i(Diag(c)^{1/2} A), clamped to [0, 1].
WeightVector weighted_leverage_exact(const RowMatrix& a, const ScalingVector& c);

/// Multiplicative (1 +- eps) estimates of the weighted leverage scores that hold
/// for all rows simultaneously with probability >= 1 - delta. Deterministic in the seed.
WeightVector weighted_leverage_sketched(const RowMatrix& a, const ScalingVector& c,
                                        const SketchConfig& cfg);

/// Cholesky solve with iterative refinement; ||Mx - b|| <= 1e-10 ||b||.
Vector solve_spd(const SquareMatrix& m, const Vector& b);

}  // namespace lewis::linalg
