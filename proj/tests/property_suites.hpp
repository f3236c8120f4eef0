#pragma once

// Randomized property suites shared by the unit tests and the acceptance binary.
// Each suite returns how many trials ran, how many violated the inequality, and
// the smallest observed margin (bound minus measured quantity).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "lewis/instances.hpp"
#include "lewis/lewis.hpp"
#include "lewis/oracle.hpp"

namespace lewis::testing {

struct SuiteOutcome {
  int trials = 0;
  int failures = 0;
  double worst_margin = std::numeric_limits<double>::infinity();

  void record(double margin) {
    ++trials;
    worst_margin = std::min(worst_margin, margin);
    if (!(margin >= 0.0)) ++failures;
  }
  bool pass() const { return trials > 0 && failures == 0; }
};

/// x, y >= 0 with y <= (1+delta) x and |x|_1 <= (1+delta) |y|_1 imply
/// |x - y|_1 <= 3 delta |y|_1. Half of the triples sit on the boundary of both
/// hypotheses, the rest are rejection-sampled.
inline SuiteOutcome l1_closeness_suite(int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> len(1, 20);
  SuiteOutcome out;
  while (out.trials < trials) {
    const double delta = std::pow(10.0, -6.0 * unit(rng));
    const auto n = static_cast<std::size_t>(len(rng));
    std::vector<double> x(n);
    std::vector<double> y(n);
    for (double& xi : x) xi = unit(rng) < 0.1 ? 0.0 : unit(rng);
    double sx = 0.0;
    for (double xi : x) sx += xi;
    if (sx == 0.0) continue;

    if (out.trials % 2 == 0) {
      // Rows in the top set are pushed to (1+delta) x, the rest are scaled so
      // that |x|_1 = (1+delta) |y|_1 holds with equality.
      double top = 0.0;
      double rest = 0.0;
      std::vector<bool> in_top(n);
      for (std::size_t i = 0; i < n; ++i) {
        in_top[i] = unit(rng) < 0.5;
        (in_top[i] ? top : rest) += x[i];
      }
      const double target = sx / (1 + delta) - (1 + delta) * top;
      if (rest == 0.0 || target < 0.0) continue;
      const double t = target / rest;
      for (std::size_t i = 0; i < n; ++i) y[i] = in_top[i] ? (1 + delta) * x[i] : t * x[i];
    } else {
      for (std::size_t i = 0; i < n; ++i) y[i] = x[i] * (1 - delta + 2 * delta * unit(rng));
    }

    double sy = 0.0;
    double diff = 0.0;
    bool conforming = true;
    for (std::size_t i = 0; i < n; ++i) {
      conforming = conforming && y[i] <= (1 + delta) * x[i];
      sy += y[i];
      diff += std::abs(x[i] - y[i]);
    }
    if (!conforming || !(sx <= (1 + delta) * sy)) continue;
    out.record(3 * delta * sy - diff);
  }
  return out;
}

/// |1 - x^c| <= c max(1, x)^{c-1} |1 - x| for x >= 0 and c >= 1, up to an
/// additive 1e-12.
inline SuiteOutcome power_difference_suite(int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SuiteOutcome out;
  for (int t = 0; t < trials; ++t) {
    double x;
    switch (t % 4) {
      case 0: x = 3.0 * unit(rng); break;
      case 1: x = 1.0 + 1e-3 * (2 * unit(rng) - 1); break;
      case 2: x = unit(rng) < 0.5 ? 0.0 : 1.0; break;
      default: x = std::pow(10.0, 4 * unit(rng) - 2); break;
    }
    const double c = t % 7 == 0 ? 1.0 : 1.0 + 9.0 * unit(rng);
    const double lhs = std::abs(1.0 - std::pow(x, c));
    const double rhs = c * std::pow(std::max(1.0, x), c - 1) * std::abs(1.0 - x);
    out.record(rhs + 1e-12 - lhs);
  }
  return out;
}

/// Extreme generalized eigenvalues of the pencil for v = T_p(w) lie within
/// [1 - alpha, 1 + alpha], alpha = |T_p(w) - sigma(W^{1/2-1/p} A)|_1, up to 1e-8.
/// Half of the weight vectors are small perturbations of the Lewis weights,
/// where alpha is small and the bound is sharp.
inline SuiteOutcome quadratic_form_suite(int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SuiteOutcome out;
  for (int t = 0; t < trials; ++t) {
    const auto n = static_cast<linalg::Index>(4 + rng() % 27);
    const auto d = static_cast<linalg::Index>(1 + rng() % std::min<std::uint64_t>(5, static_cast<std::uint64_t>(n)));
    const double p = 2.0 + 8.0 * unit(rng);
    const RowMatrix a = instances::gaussian(n, d, seed * 7919 + static_cast<std::uint64_t>(t));
    std::vector<double> w(static_cast<std::size_t>(n));
    if (t % 2 == 0) {
      for (double& wi : w) wi = (0.05 + 2.0 * unit(rng)) * static_cast<double>(d) / static_cast<double>(n);
    } else {
      const auto ref = oracle::lewis_reference(a, p, 1e-10);
      const double eta = std::pow(10.0, -3.0 * unit(rng));
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = ref.w_star[i] * std::exp(eta * (2 * unit(rng) - 1));
    }
    const WeightVector wv(w);
    const WeightVector v = fixed_point_map(a, wv, p);
    const WeightVector sigma = reweighted_leverage(a, wv, p);
    double alpha = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) alpha += std::abs(v[i] - sigma[i]);
    const PencilBounds b = quadratic_form_sandwich(a, wv, v, p);
    out.record(std::min(b.lambda_min - (1 - alpha - 1e-8), (1 + alpha + 1e-8) - b.lambda_max));
  }
  return out;
}

/// gamma^{-1} v~ <= v <= gamma v~ implies every ratio sigma_i(V^{1/2-1/p} A) / v_i
/// is within a factor gamma of the corresponding ratio for v~. The margin is
/// measured in log space, with 1e-12 relative rounding allowance.
inline SuiteOutcome ratio_stability_suite(int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SuiteOutcome out;
  for (int t = 0; t < trials; ++t) {
    const auto n = static_cast<linalg::Index>(3 + rng() % 38);
    const auto d = static_cast<linalg::Index>(1 + rng() % std::min<std::uint64_t>(6, static_cast<std::uint64_t>(n)));
    const double p = 2.0 + 10.0 * unit(rng);
    const double gamma = 1.0 + unit(rng);
    const RowMatrix a = instances::gaussian(n, d, seed * 104729 + static_cast<std::uint64_t>(t));
    std::vector<double> base(static_cast<std::size_t>(n));
    std::vector<double> moved(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      base[i] = 0.01 + unit(rng);
      // Many coordinates sit at an endpoint of the allowed band.
      const double u = unit(rng) < 0.5 ? (unit(rng) < 0.5 ? -1.0 : 1.0) : 2 * unit(rng) - 1;
      moved[i] = base[i] * std::pow(gamma, u);
    }
    const WeightVector vt(base);
    const WeightVector v(moved);
    const WeightVector st = reweighted_leverage(a, vt, p);
    const WeightVector s = reweighted_leverage(a, v, p);
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < base.size(); ++i) {
      const double gap = std::abs(std::log((s[i] / v[i]) / (st[i] / vt[i])));
      margin = std::min(margin, std::log(gamma) + 1e-12 - gap);
    }
    out.record(margin);
  }
  return out;
}

/// Builds w that passes the one-sided check at eps with no slack: a perturbation
/// of the Lewis weights rescaled so that either the ratio clause or the l1 clause
/// is tight.
inline WeightVector one_sided_witness(const RowMatrix& a, double p, double eps, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto ref = oracle::lewis_reference(a, p, 1e-11);
  const auto n = static_cast<std::size_t>(a.rows());
  const double d = static_cast<double>(a.cols());
  for (double eta = eps; eta > 1e-12; eta /= 2) {
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = ref.w_star[i] * std::exp(eta * (2 * unit(rng) - 1));
    const WeightVector uv(u);
    const WeightVector sigma = reweighted_leverage(a, uv, p);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, sigma[i] / u[i]);
    const double ratio_tight = worst / (1 + eps) * (1 + 1e-14);
    const double l1_tight = (1 + eps) * d / uv.l1() * (1 - 1e-14);
    const double scale = (unit(rng) < 0.5 && l1_tight >= ratio_tight) ? l1_tight : ratio_tight;
    const WeightVector w = uv.scaled(scale);
    if (check_one_sided(a, w, p, eps, 0.0).pass()) return w;
  }
  return ref.w_star;
}

}  // namespace lewis::testing
