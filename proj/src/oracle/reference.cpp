#include "lewis/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "lewis/errors.hpp"

namespace lewis::oracle {

namespace {

using linalg::Index;
using Logs = std::vector<double>;

constexpr std::uint64_t kIterationCap = 1'000'000;
constexpr std::uint64_t kAscentCap = 100'000;

// c_i = w_i^q / max_j w_j^q, from log-weights.
linalg::ScalingVector scaling_from_logs(const Logs& lw, double q) {
  const double top = *std::max_element(lw.begin(), lw.end());
  std::vector<double> c(lw.size());
  for (std::size_t i = 0; i < lw.size(); ++i) c[i] = std::max(std::exp(q * (lw[i] - top)), 1e-300);
  return linalg::ScalingVector(std::move(c));
}

double residual_of(const WeightVector& sigma, const Logs& lw) {
  double r = 0.0;
  for (std::size_t i = 0; i < lw.size(); ++i) {
    r = std::max(r, std::abs(std::exp(std::log(sigma[i]) - lw[i]) - 1.0));
  }
  return r;
}

Logs initial_logs(const linalg::RowMatrix& a, const ReferenceOptions& opts) {
  const auto n = static_cast<std::size_t>(a.rows());
  if (opts.start) {
    if (opts.start->size() != n) throw InputError("oracle start vector has the wrong length");
    Logs lw(n);
    for (std::size_t i = 0; i < n; ++i) lw[i] = std::log((*opts.start)[i]);
    return lw;
  }
  return Logs(n, std::log(static_cast<double>(a.cols()) / static_cast<double>(n)));
}

WeightVector exp_weights(const Logs& lw) {
  std::vector<double> w(lw.size());
  std::transform(lw.begin(), lw.end(), w.begin(), [](double x) { return std::exp(x); });
  return WeightVector(std::move(w));
}

[[noreturn]] void fail(Method m, std::uint64_t iters, double best) {
  std::ostringstream msg;
  msg << "Lewis weight reference (" << to_string(m) << ") did not converge in " << iters
      << " iterations; best residual " << best;
  throw ConvergenceError(msg.str(), best);
}

// theta = 1: plain T_p iteration; theta = 2/p reduces to w <- sigma(W^{1/2-1/p} A).
ReferenceWeights iterate(const linalg::RowMatrix& a, double p, double tol, double theta,
                         Method method, const ReferenceOptions& opts) {
  const double q = 1.0 - 2.0 / p;
  const double half_p = p / 2.0;
  const std::uint64_t cap = opts.max_iterations ? opts.max_iterations : kIterationCap;
  Logs lw = initial_logs(a, opts);
  double best = std::numeric_limits<double>::infinity();

  for (std::uint64_t it = 0; it <= cap; ++it) {
    const WeightVector sigma = linalg::weighted_leverage_exact(a, scaling_from_logs(lw, q));
    const double r = residual_of(sigma, lw);
    best = std::min(best, r);
    if (r <= tol) return {exp_weights(lw), r, it, method};
    if (it == cap) break;
    for (std::size_t i = 0; i < lw.size(); ++i) {
      const double log_t = (1.0 - half_p) * lw[i] + half_p * std::log(sigma[i]);
      lw[i] = (1.0 - theta) * lw[i] + theta * log_t;
    }
  }
  fail(method, cap, best);
}

// Scores and logdet through the Cholesky factor of the Gram matrix, independent
// of the QR route used elsewhere.
struct GramEval {
  std::vector<double> sigma;
  double logdet;
};

GramEval gram_eval(const linalg::RowMatrix& a, const Logs& lw, double q) {
  const double top = *std::max_element(lw.begin(), lw.end());
  const linalg::ScalingVector c = scaling_from_logs(lw, q);
  const linalg::SquareMatrix g = linalg::gram(a, c);
  Eigen::LLT<linalg::SquareMatrix> llt(g);
  const Index n = a.rows();
  const Index d = a.cols();

  Eigen::MatrixXd rhs = a.entries().transpose();
  llt.matrixL().solveInPlace(rhs);
  GramEval out;
  out.sigma.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    out.sigma[static_cast<std::size_t>(i)] = c[i] * rhs.col(i).squaredNorm();
  }
  const auto diag = llt.matrixLLT().diagonal();
  out.logdet = 2.0 * diag.array().log().sum() + static_cast<double>(d) * q * top;
  return out;
}

void normalize_to(Logs& lw, double total) {
  const double top = *std::max_element(lw.begin(), lw.end());
  double s = 0.0;
  for (double x : lw) s += std::exp(x - top);
  const double shift = std::log(total) - (top + std::log(s));
  for (double& x : lw) x += shift;
}

ReferenceWeights simplex_ascent(const linalg::RowMatrix& a, double p, double tol,
                                const ReferenceOptions& opts) {
  if (!(p > 2.0)) throw InputError("simplex_logdet route requires p > 2 (objective is constant at p = 2)");
  const double q = 1.0 - 2.0 / p;
  const double d = static_cast<double>(a.cols());
  const std::uint64_t cap = opts.max_iterations ? opts.max_iterations : kAscentCap;

  Logs lw = initial_logs(a, opts);
  normalize_to(lw, d);
  GramEval cur = gram_eval(a, lw, q);
  // Linearized optimum of the step; halved whenever the objective would drop.
  double step = 2.0 / (q * (4.0 / p + q));
  double best = std::numeric_limits<double>::infinity();

  for (std::uint64_t it = 0; it <= cap; ++it) {
    Logs ratio(lw.size());
    double r = 0.0;
    for (std::size_t i = 0; i < lw.size(); ++i) {
      ratio[i] = std::exp(std::log(cur.sigma[i]) - lw[i]);
      r = std::max(r, std::abs(ratio[i] - 1.0));
    }
    best = std::min(best, r);
    if (r <= 0.25 * tol) {
      const WeightVector w = exp_weights(lw);
      const double exact = fixed_point_residual(a, w, p);
      if (exact <= tol) return {w, exact, it, Method::simplex_logdet};
    }
    if (it == cap) break;

    for (int tries = 0; tries < 60; ++tries) {
      Logs next(lw);
      for (std::size_t i = 0; i < lw.size(); ++i) next[i] += step * q * (ratio[i] - 1.0);
      normalize_to(next, d);
      GramEval cand = gram_eval(a, next, q);
      if (cand.logdet >= cur.logdet - 1e-13 * std::max(1.0, std::abs(cur.logdet))) {
        lw = std::move(next);
        cur = std::move(cand);
        break;
      }
      step *= 0.5;
    }
  }
  fail(Method::simplex_logdet, cap, best);
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::automatic:
      return "automatic";
    case Method::contractive:
      return "contractive";
    case Method::damped:
      return "damped";
    case Method::simplex_logdet:
      return "simplex_logdet";
  }
  return "unknown";
}

double fixed_point_residual(const linalg::RowMatrix& a, const WeightVector& w, double p) {
  if (!(p >= 2.0)) throw InputError("p must be >= 2");
  if (static_cast<Index>(w.size()) != a.rows()) throw InputError("weight vector has the wrong length");
  Logs lw(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) lw[i] = std::log(w[i]);
  const WeightVector sigma = linalg::weighted_leverage_exact(a, scaling_from_logs(lw, 1.0 - 2.0 / p));
  return residual_of(sigma, lw);
}

ReferenceWeights lewis_reference(const linalg::RowMatrix& a, double p, double tol,
                                 const ReferenceOptions& opts) {
  if (!(p >= 2.0) || !std::isfinite(p)) throw InputError("p must be a finite real >= 2");
  if (!(tol > 1e-12 && tol < 1e-2)) throw InputError("oracle tolerance must lie in (1e-12, 1e-2)");

  Method method = opts.method;
  if (method == Method::automatic) method = p < 4.0 ? Method::contractive : Method::damped;

  switch (method) {
    case Method::contractive:
      if (p >= 4.0) throw InputError("contractive route requires p < 4");
      return iterate(a, p, tol, 1.0, method, opts);
    case Method::damped:
      return iterate(a, p, tol, 2.0 / p, method, opts);
    case Method::simplex_logdet:
      return simplex_ascent(a, p, tol, opts);
    case Method::automatic:
      break;
  }
  throw InputError("unknown oracle method");
}

}  // namespace lewis::oracle
