#include <algorithm>
#include <cmath>
#include <random>

#include "lewis/errors.hpp"
#include "lewis/kernels.hpp"
#include "lewis/linalg.hpp"
#include "detail.hpp"

namespace lewis::linalg {

namespace {

constexpr double kSketchFloor = 1e-300;
// Bit-sliced sign sketches cost about k/64 * d^2 / 2 popcounts.
constexpr double kExplicitWorkBudget = 1 << 26;

// Gram of a k x d standard Gaussian matrix, drawn via the Bartlett
// decomposition: W = L L^T, L_jj^2 ~ chi^2_{k-j}, L_ij ~ N(0,1) below the diagonal.
SquareMatrix wishart_gram(double k, Index d, std::uint64_t seed) {
  std::mt19937_64 rng(kernels::counter_hash(seed, 0x57495348ULL));
  std::normal_distribution<double> normal(0.0, 1.0);
  SquareMatrix l = SquareMatrix::Zero(d, d);
  for (Index j = 0; j < d; ++j) {
    std::gamma_distribution<double> chi2((k - static_cast<double>(j)) / 2.0, 2.0);
    l(j, j) = std::sqrt(chi2(rng));
    for (Index i = j + 1; i < d; ++i) l(i, j) = normal(rng);
  }
  return l * l.transpose();
}

}  // namespace

void SketchConfig::validate() const {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("sketch eps must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("sketch delta must lie in (0, 1)");
  if (!(rows_per_inv_eps2 > 0.0) || !std::isfinite(rows_per_inv_eps2)) {
    throw InputError("sketch row constant must be positive");
  }
}

double SketchConfig::sketch_rows(Index n) const {
  return std::ceil(rows_per_inv_eps2 * std::log(static_cast<double>(n) / delta) / (eps * eps));
}

SketchRoute SketchConfig::resolve_route(Index n, Index d) const {
  if (route != SketchRoute::automatic) return route;
  const double k = sketch_rows(n);
  const double dd = static_cast<double>(d);
  return k / 64.0 * dd * (dd + 1.0) / 2.0 <= kExplicitWorkBudget ? SketchRoute::explicit_signs
                                                                  : SketchRoute::implicit_gaussian;
}

WeightVector weighted_leverage_sketched(const RowMatrix& a, const ScalingVector& c,
                                        const SketchConfig& cfg) {
  cfg.validate();
  const Index n = a.rows();
  const Index d = a.cols();
  const double k = cfg.sketch_rows(n);
  if (k > 4.0e18) throw InputError("sketch dimension overflows; increase eps or delta");

  const Matrix y = detail::orthonormal_factor_rows(a, c);

  SquareMatrix s;
  if (cfg.resolve_route(n, d) == SketchRoute::explicit_signs) {
    const auto rows = static_cast<std::uint64_t>(k);
    s = kernels::sign_gram_parallel(rows, d, cfg.seed).cast<double>() / k;
  } else {
    s = wishart_gram(k, d, cfg.seed) / k;
  }

  const Vector est = kernels::row_quadratic_forms(y, s);
  std::vector<double> sigma(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    sigma[static_cast<std::size_t>(i)] = std::clamp(est(i), kSketchFloor, 1.0);
  }
  return WeightVector(std::move(sigma));
}

}  // namespace lewis::linalg
