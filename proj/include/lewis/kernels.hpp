#pragma once

// Inner kernels behind the linalg operations. Each data-parallel kernel has a
// serial reference twin; the parallel versions partition work into blocks that
// depend only on the problem size, so results do not depend on thread count.

#include <cstdint>
#include <span>

#include "lewis/linalg.hpp"

namespace lewis::linalg::kernels {

/// Rows per TSQR leaf block.
Index tsqr_block_rows(Index n, Index d);

SquareMatrix gram_serial(const Matrix& a, std::span<const double> c);
SquareMatrix gram_parallel(const Matrix& a, std::span<const double> c);

/// Upper-triangular R of Diag(sqrt(c)) A.
SquareMatrix r_factor_serial(const Matrix& a, std::span<const double> c);
SquareMatrix r_factor_tsqr(const Matrix& a, std::span<const double> c);

/// Rows y_i = R^{-T} sqrt(c_i) a_i, i.e. the rows of the orthonormal factor.
Matrix orthonormal_rows(const Matrix& a, std::span<const double> c, const SquareMatrix& r);

/// Squared row norms of the explicitly formed thin Q. Slow; test reference.
Vector leverage_reference(const Matrix& a, std::span<const double> c);

/// sum_r s_ra s_rb over k Rademacher rows s_r. Entries are exact integers.
Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> sign_gram_serial(
    std::uint64_t k, Index d, std::uint64_t seed);
Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> sign_gram_parallel(
    std::uint64_t k, Index d, std::uint64_t seed);

/// Quadratic forms y_i^T S y_i for every row of `y`.
Vector row_quadratic_forms(const Matrix& y, const SquareMatrix& s);

/// Counter-based 64-bit mixer (splitmix64 finalizer over seed and counter).
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter);

}  // namespace lewis::linalg::kernels
