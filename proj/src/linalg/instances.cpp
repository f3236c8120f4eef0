#include "lewis/instances.hpp"

#include <random>

namespace lewis::instances {

linalg::RowMatrix gaussian(linalg::Index n, linalg::Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  linalg::Matrix a(n, d);
  for (linalg::Index i = 0; i < n; ++i) {
    for (linalg::Index j = 0; j < d; ++j) a(i, j) = normal(rng);
  }
  return linalg::RowMatrix(std::move(a));
}

linalg::RowMatrix stacked_identity(linalg::Index k, linalg::Index d) {
  linalg::Matrix a = linalg::Matrix::Zero(k * d, d);
  for (linalg::Index c = 0; c < k; ++c) a.middleRows(c * d, d).setIdentity();
  return linalg::RowMatrix(std::move(a));
}

linalg::SquareMatrix conditioned_factor(linalg::Index d, double max_cond, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> log_sv(0.0, std::log(max_cond));
  auto random_orthogonal = [&] {
    Eigen::MatrixXd g(d, d);
    for (linalg::Index i = 0; i < d; ++i) {
      for (linalg::Index j = 0; j < d; ++j) g(i, j) = normal(rng);
    }
    return Eigen::MatrixXd(Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ());
  };
  Eigen::VectorXd sv(d);
  for (linalg::Index j = 0; j < d; ++j) sv(j) = std::exp(log_sv(rng));
  sv(0) = 1.0;
  return random_orthogonal() * sv.asDiagonal() * random_orthogonal().transpose();
}

}  // namespace lewis::instances
