#include <cmath>
#include <sstream>
#include <string>

#include "lewis/errors.hpp"
#include "lewis/linalg.hpp"

namespace lewis::linalg {

RowMatrix::RowMatrix(Matrix entries) : a_(std::move(entries)) {
  const Index n = a_.rows();
  const Index d = a_.cols();
  if (n == 0 || d == 0) throw InputError("matrix must have at least one row and one column");
  if (n < d) {
    throw InputError("matrix has fewer rows than columns (n = " + std::to_string(n) +
                     ", d = " + std::to_string(d) + ")");
  }
  if (!a_.allFinite()) {
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < d; ++j) {
        if (!std::isfinite(a_(i, j))) {
          throw InputError("non-finite entry at row " + std::to_string(i) + ", column " +
                           std::to_string(j));
        }
      }
    }
  }

  std::ostringstream zero_rows;
  Index zeros = 0;
  for (Index i = 0; i < n; ++i) {
    if (a_.row(i).isZero(0.0)) {
      if (zeros < 10) zero_rows << (zeros ? ", " : "") << i;
      ++zeros;
    }
  }
  if (zeros > 0) {
    throw InputError("matrix has " + std::to_string(zeros) + " all-zero row(s) at 0-based index " +
                     zero_rows.str() + (zeros > 10 ? ", ..." : ""));
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a_);
  if (qr.rank() < d) {
    throw InputError("matrix is column-rank deficient: numerical rank " +
                     std::to_string(qr.rank()) + " < d = " + std::to_string(d));
  }
}

RowMatrix RowMatrix::times(const SquareMatrix& r) const {
  if (r.rows() != cols() || r.cols() != cols()) {
    throw InputError("right factor must be d x d");
  }
  return RowMatrix(Matrix(a_ * r));
}

ScalingVector::ScalingVector(std::vector<double> values) : c_(std::move(values)) {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!std::isfinite(c_[i]) || c_[i] <= 0.0) {
      throw InputError("scaling entry " + std::to_string(i) + " is not strictly positive and finite");
    }
  }
}

ScalingVector ScalingVector::ones(Index n) {
  return ScalingVector(std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

}  // namespace lewis::linalg
