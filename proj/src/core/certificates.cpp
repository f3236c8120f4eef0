#include <cmath>
#include <sstream>

#include "lewis/errors.hpp"
#include "lewis/lewis.hpp"

namespace lewis {

namespace {

struct RatioRange {
  double lo;
  double hi;
};

RatioRange ratio_range(const WeightVector& num, const WeightVector& den) {
  RatioRange r{num[0] / den[0], num[0] / den[0]};
  for (std::size_t i = 1; i < num.size(); ++i) {
    const double x = num[i] / den[i];
    r.lo = std::min(r.lo, x);
    r.hi = std::max(r.hi, x);
  }
  return r;
}

void require_eps(double eps, double slack) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw InputError("certificate eps must be >= 0");
  if (!(slack >= 0.0) || !std::isfinite(slack)) throw InputError("certificate slack must be >= 0");
}

linalg::ScalingVector power_scaling(const WeightVector& w, double q) {
  std::vector<double> c(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) c[i] = std::pow(w[i], q);
  return linalg::ScalingVector(std::move(c));
}

}  // namespace

std::string_view to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::one_sided:
      return "one_sided";
    case CertificateKind::two_sided:
      return "two_sided";
    case CertificateKind::estimate:
      return "estimate";
  }
  return "unknown";
}

bool Certificate::pass() const {
  const double upper = (1.0 + eps_target) * (1.0 + slack);
  if (kind == CertificateKind::one_sided) {
    const bool ratio_ok = max_ratio <= upper;
    const bool l1_ok = !l1_norm || !l1_limit || *l1_norm <= upper * *l1_limit;
    return ratio_ok && l1_ok;
  }
  const double lower = (1.0 - eps_target) * (1.0 - slack);
  return min_ratio >= lower && max_ratio <= upper;
}

Certificate check_one_sided(const RowMatrix& a, const WeightVector& w, double p, double eps,
                            double slack) {
  require_eps(eps, slack);
  const WeightVector sigma = reweighted_leverage(a, w, p);
  const RatioRange r = ratio_range(sigma, w);
  Certificate cert;
  cert.kind = CertificateKind::one_sided;
  cert.min_ratio = r.lo;
  cert.max_ratio = r.hi;
  cert.l1_norm = w.l1();
  cert.l1_limit = static_cast<double>(a.cols());
  cert.eps_target = eps;
  cert.slack = slack;
  cert.degenerate = w.touches_floor(kWeightFloor);
  return cert;
}

Certificate check_two_sided(const RowMatrix& a, const WeightVector& v, double p, double eps,
                            double slack) {
  require_eps(eps, slack);
  const WeightVector sigma = reweighted_leverage(a, v, p);
  const RatioRange r = ratio_range(v, sigma);
  Certificate cert;
  cert.kind = CertificateKind::two_sided;
  cert.min_ratio = r.lo;
  cert.max_ratio = r.hi;
  cert.eps_target = eps;
  cert.slack = slack;
  cert.degenerate = v.touches_floor(kWeightFloor);
  return cert;
}

Certificate check_estimate(const WeightVector& v, const WeightVector& w_ref, double eps,
                           double slack) {
  require_eps(eps, slack);
  if (v.size() != w_ref.size()) {
    throw InputError("check_estimate: length mismatch (" + std::to_string(v.size()) + " vs " +
                     std::to_string(w_ref.size()) + ")");
  }
  const RatioRange r = ratio_range(v, w_ref);
  Certificate cert;
  cert.kind = CertificateKind::estimate;
  cert.min_ratio = r.lo;
  cert.max_ratio = r.hi;
  cert.eps_target = eps;
  cert.slack = slack;
  cert.degenerate = v.touches_floor(kWeightFloor);
  return cert;
}

double alpha_bound(double eps, double p, double d) {
  if (!(eps >= 0.0) || !(p >= 2.0) || !(d >= 1.0)) {
    throw InputError("alpha_bound requires eps >= 0, p >= 2, d >= 1");
  }
  const double e = p / 2.0 - 1.0;
  return 3.0 * eps * e * std::pow(1.0 + eps, e) * d;
}

PencilBounds quadratic_form_sandwich(const RowMatrix& a, const WeightVector& w,
                                     const WeightVector& v, double p) {
  if (!(p >= 2.0)) throw InputError("p must be >= 2");
  const double q = 1.0 - 2.0 / p;
  const linalg::SquareMatrix hw = linalg::gram(a, power_scaling(w, q));
  const linalg::SquareMatrix hv = linalg::gram(a, power_scaling(v, q));
  Eigen::GeneralizedSelfAdjointEigenSolver<linalg::SquareMatrix> solver(
      hv, hw, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) {
    throw ConditioningError("generalized eigenvalue solve failed", 0.0);
  }
  const auto& ev = solver.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

}  // namespace lewis
