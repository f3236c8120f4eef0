#include "lewis/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

namespace lewis::linalg::kernels {

namespace {

constexpr Index kGramBlockRows = 1024;
constexpr Index kSolveBlockRows = 2048;
constexpr std::uint64_t kSignBlocksPerChunk = 256;

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Eigen::MatrixXd scaled_block(const Matrix& a, std::span<const double> c, Index begin, Index rows) {
  Eigen::MatrixXd b(rows, a.cols());
  for (Index i = 0; i < rows; ++i) {
    b.row(i) = std::sqrt(c[static_cast<std::size_t>(begin + i)]) * a.row(begin + i);
  }
  return b;
}

// R factor with a non-negative diagonal, so serial and blocked paths agree.
SquareMatrix upper_factor(const Eigen::MatrixXd& b) {
  const Index d = b.cols();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(b);
  SquareMatrix r = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    if (r(j, j) < 0.0) r.row(j) *= -1.0;
  }
  return r;
}

// Each 64-row block contributes one hashed word per column; the signs of
// rows [64b, 64b+63] in column j are the bits of counter_hash(seed, b*d + j).
void accumulate_sign_block(std::uint64_t block, std::uint64_t k, Index d, std::uint64_t seed,
                           std::vector<std::uint64_t>& words, IntMatrix& disagree) {
  const std::uint64_t first = block * 64;
  const std::uint64_t valid = std::min<std::uint64_t>(64, k - first);
  const std::uint64_t mask = valid == 64 ? ~0ULL : ((1ULL << valid) - 1);
  for (Index j = 0; j < d; ++j) {
    words[static_cast<std::size_t>(j)] =
        counter_hash(seed, block * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(j));
  }
  for (Index a = 0; a < d; ++a) {
    for (Index b = a + 1; b < d; ++b) {
      disagree(a, b) += std::popcount((words[static_cast<std::size_t>(a)] ^
                                       words[static_cast<std::size_t>(b)]) & mask);
    }
  }
}

IntMatrix finish_sign_gram(const IntMatrix& disagree, std::uint64_t k, Index d) {
  IntMatrix m(d, d);
  const auto kk = static_cast<std::int64_t>(k);
  for (Index a = 0; a < d; ++a) {
    m(a, a) = kk;
    for (Index b = a + 1; b < d; ++b) {
      m(a, b) = kk - 2 * disagree(a, b);
      m(b, a) = m(a, b);
    }
  }
  return m;
}

}  // namespace

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter) {
  return mix64(mix64(seed ^ 0x243F6A8885A308D3ULL) + counter * 0x9E3779B97F4A7C15ULL);
}

Index tsqr_block_rows(Index n, Index d) {
  (void)n;
  return std::max<Index>(512, 8 * d);
}

SquareMatrix gram_serial(const Matrix& a, std::span<const double> c) {
  const Index d = a.cols();
  SquareMatrix g = SquareMatrix::Zero(d, d);
  for (Index i = 0; i < a.rows(); ++i) {
    const double ci = c[static_cast<std::size_t>(i)];
    for (Index j = 0; j < d; ++j) {
      const double s = ci * a(i, j);
      for (Index k = j; k < d; ++k) g(j, k) += s * a(i, k);
    }
  }
  g.triangularView<Eigen::StrictlyLower>() = g.transpose();
  return g;
}

SquareMatrix gram_parallel(const Matrix& a, std::span<const double> c) {
  const Index n = a.rows();
  const Index d = a.cols();
  const Index blocks = (n + kGramBlockRows - 1) / kGramBlockRows;
  std::vector<SquareMatrix> partial(static_cast<std::size_t>(blocks));

#pragma omp parallel for schedule(static)
  for (Index blk = 0; blk < blocks; ++blk) {
    const Index begin = blk * kGramBlockRows;
    const Index rows = std::min(kGramBlockRows, n - begin);
    const Eigen::MatrixXd b = scaled_block(a, c, begin, rows);
    SquareMatrix g = SquareMatrix::Zero(d, d);
    g.selfadjointView<Eigen::Lower>().rankUpdate(b.transpose());
    partial[static_cast<std::size_t>(blk)] = g;
  }

  SquareMatrix g = SquareMatrix::Zero(d, d);
  for (const auto& p : partial) g += p;
  g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
  return g;
}

SquareMatrix r_factor_serial(const Matrix& a, std::span<const double> c) {
  return upper_factor(scaled_block(a, c, 0, a.rows()));
}

SquareMatrix r_factor_tsqr(const Matrix& a, std::span<const double> c) {
  const Index n = a.rows();
  const Index d = a.cols();
  const Index block = tsqr_block_rows(n, d);
  const Index leaves = n / block;
  if (leaves < 2) return r_factor_serial(a, c);

  Eigen::MatrixXd stacked(leaves * d, d);
#pragma omp parallel for schedule(static)
  for (Index leaf = 0; leaf < leaves; ++leaf) {
    const Index begin = leaf * block;
    const Index rows = leaf + 1 == leaves ? n - begin : block;
    stacked.middleRows(leaf * d, d) = upper_factor(scaled_block(a, c, begin, rows));
  }
  return upper_factor(stacked);
}

Matrix orthonormal_rows(const Matrix& a, std::span<const double> c, const SquareMatrix& r) {
  const Index n = a.rows();
  const Index d = a.cols();
  Matrix y(n, d);
  const Index blocks = (n + kSolveBlockRows - 1) / kSolveBlockRows;
  const auto rt = r.transpose().triangularView<Eigen::Lower>();

#pragma omp parallel for schedule(static)
  for (Index blk = 0; blk < blocks; ++blk) {
    const Index begin = blk * kSolveBlockRows;
    const Index rows = std::min(kSolveBlockRows, n - begin);
    Eigen::MatrixXd rhs = scaled_block(a, c, begin, rows).transpose();
    rt.solveInPlace(rhs);
    y.middleRows(begin, rows) = rhs.transpose();
  }
  return y;
}

Vector leverage_reference(const Matrix& a, std::span<const double> c) {
  const Eigen::MatrixXd b = scaled_block(a, c, 0, a.rows());
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(b);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(b.rows(), b.cols());
  return q.rowwise().squaredNorm();
}

IntMatrix sign_gram_serial(std::uint64_t k, Index d, std::uint64_t seed) {
  IntMatrix disagree = IntMatrix::Zero(d, d);
  std::vector<std::uint64_t> words(static_cast<std::size_t>(d));
  const std::uint64_t blocks = (k + 63) / 64;
  for (std::uint64_t blk = 0; blk < blocks; ++blk) {
    accumulate_sign_block(blk, k, d, seed, words, disagree);
  }
  return finish_sign_gram(disagree, k, d);
}

IntMatrix sign_gram_parallel(std::uint64_t k, Index d, std::uint64_t seed) {
  const std::uint64_t blocks = (k + 63) / 64;
  const auto chunks =
      static_cast<std::int64_t>((blocks + kSignBlocksPerChunk - 1) / kSignBlocksPerChunk);
  IntMatrix disagree = IntMatrix::Zero(d, d);

#pragma omp parallel
  {
    IntMatrix local = IntMatrix::Zero(d, d);
    std::vector<std::uint64_t> words(static_cast<std::size_t>(d));
#pragma omp for schedule(static)
    for (std::int64_t chunk = 0; chunk < chunks; ++chunk) {
      const std::uint64_t begin = static_cast<std::uint64_t>(chunk) * kSignBlocksPerChunk;
      const std::uint64_t end = std::min(blocks, begin + kSignBlocksPerChunk);
      for (std::uint64_t blk = begin; blk < end; ++blk) {
        accumulate_sign_block(blk, k, d, seed, words, local);
      }
    }
    // integer sums are exact, so merge order does not matter
#pragma omp critical
    disagree += local;
  }
  return finish_sign_gram(disagree, k, d);
}

Vector row_quadratic_forms(const Matrix& y, const SquareMatrix& s) {
  const Index n = y.rows();
  Vector out(n);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    const Eigen::VectorXd yi = y.row(i).transpose();
    out(i) = yi.dot(s * yi);
  }
  return out;
}

}  // namespace lewis::linalg::kernels
