#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lewis/errors.hpp"
#include "lewis/kernels.hpp"
#include "lewis/linalg.hpp"
#include "detail.hpp"

namespace lewis::linalg {

namespace {

constexpr double kExcessTolerance = 1e-8;

void check_shapes(const RowMatrix& a, const ScalingVector& c) {
  if (c.size() != a.rows()) {
    throw InputError("scaling vector has length " + std::to_string(c.size()) + ", expected " +
                     std::to_string(a.rows()));
  }
}

void check_pivots(const SquareMatrix& r, Index n) {
  const Eigen::VectorXd diag = r.diagonal().cwiseAbs();
  const double largest = diag.maxCoeff();
  const double smallest = diag.minCoeff();
  const double tol = static_cast<double>(n * r.cols()) * std::numeric_limits<double>::epsilon();
  if (!(smallest > tol * largest)) {
    std::ostringstream msg;
    msg << "weighted matrix is singular to working precision: smallest R pivot " << smallest
        << " vs largest " << largest;
    throw ConditioningError(msg.str(), smallest);
  }
}

}  // namespace

SquareMatrix gram(const RowMatrix& a, const ScalingVector& c) {
  check_shapes(a, c);
  SquareMatrix g = kernels::gram_parallel(a.entries(), c.values());

  const Index d = g.rows();
  Eigen::LLT<SquareMatrix> llt(g);
  const double scale = g.diagonal().maxCoeff();
  const double tol = static_cast<double>(d) * std::numeric_limits<double>::epsilon() * scale;
  double smallest = 0.0;
  if (llt.info() == Eigen::Success) {
    smallest = llt.matrixL().toDenseMatrix().diagonal().array().square().minCoeff();
  }
  if (llt.info() != Eigen::Success || !(smallest > tol)) {
    std::ostringstream msg;
    msg << "weighted Gram matrix is singular to working precision: smallest Cholesky pivot "
        << smallest << " (scale " << scale << ")";
    throw ConditioningError(msg.str(), smallest);
  }
  return g;
}

namespace detail {

Matrix orthonormal_factor_rows(const RowMatrix& a, const ScalingVector& c) {
  check_shapes(a, c);
  const Matrix& entries = a.entries();
  const SquareMatrix r = kernels::r_factor_tsqr(entries, c.values());
  check_pivots(r, a.rows());
  return kernels::orthonormal_rows(entries, c.values(), r);
}

}  // namespace detail

WeightVector weighted_leverage_exact(const RowMatrix& a, const ScalingVector& c) {
  const Matrix y = detail::orthonormal_factor_rows(a, c);
  std::vector<double> sigma(static_cast<std::size_t>(a.rows()));
  for (Index i = 0; i < a.rows(); ++i) {
    const double s = y.row(i).squaredNorm();
    if (s > 1.0 + kExcessTolerance) {
      std::ostringstream msg;
      msg << "leverage score of row " << i << " exceeds one by " << (s - 1.0)
          << "; the weighted matrix is too ill-conditioned";
      throw ConditioningError(msg.str(), s);
    }
    sigma[static_cast<std::size_t>(i)] = std::clamp(s, 0.0, 1.0);
  }
  return WeightVector(std::move(sigma));
}

}  // namespace lewis::linalg
