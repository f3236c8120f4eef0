#include "lewis/errors.hpp"
#include "lewis/linalg.hpp"

namespace lewis::linalg {

namespace {
constexpr int kMaxRefinements = 10;
constexpr double kResidualTarget = 1e-10;
}  // namespace

Vector solve_spd(const SquareMatrix& m, const Vector& b) {
  if (m.rows() != m.cols() || m.rows() != b.size()) {
    throw InputError("solve_spd: dimension mismatch");
  }
  if (!m.isApprox(m.transpose(), 1e-12)) throw InputError("solve_spd: matrix is not symmetric");

  const double bnorm = b.norm();
  if (bnorm == 0.0) return Vector::Zero(b.size());

  Eigen::LLT<SquareMatrix> llt(m);
  if (llt.info() != Eigen::Success) throw Error("solve_spd: matrix is not positive definite");

  Vector x = llt.solve(b);
  double res = (b - m * x).norm();
  for (int it = 0; it < kMaxRefinements && res > kResidualTarget * bnorm; ++it) {
    x += llt.solve(b - m * x);
    res = (b - m * x).norm();
  }
  if (!(res <= kResidualTarget * bnorm)) {
    throw ConvergenceError("solve_spd: iterative refinement did not reach the residual target",
                           res / bnorm);
  }
  return x;
}

}  // namespace lewis::linalg
