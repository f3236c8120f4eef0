#include <algorithm>
#include <cmath>
#include <sstream>

#include "lewis/errors.hpp"
#include "lewis/lewis.hpp"

namespace lewis {

namespace {

void require_p(double p) {
  if (!(p >= 2.0) || !std::isfinite(p)) {
    std::ostringstream msg;
    msg << "p must be finite and >= 2 (got " << p << ")";
    throw InputError(msg.str());
  }
}

void require_length(const RowMatrix& a, const WeightVector& w) {
  if (static_cast<linalg::Index>(w.size()) != a.rows()) {
    throw InputError("weight vector has length " + std::to_string(w.size()) + ", expected " +
                     std::to_string(a.rows()));
  }
}

}  // namespace

WeightVector reweighted_leverage(const RowMatrix& a, const WeightVector& w, double p,
                                 const LeverageBackend& backend) {
  require_p(p);
  require_length(a, w);
  const double q = 1.0 - 2.0 / p;
  const std::size_t n = w.size();

  std::vector<double> logw(n);
  for (std::size_t i = 0; i < n; ++i) logw[i] = std::log(std::max(w[i], kWeightFloor));
  const double top = *std::max_element(logw.begin(), logw.end());
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = std::max(std::exp(q * (logw[i] - top)), kWeightFloor);
  }
  const linalg::ScalingVector scaling(std::move(c));

  return std::visit(
      [&](const auto& b) -> WeightVector {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, ExactBackend>) {
          return linalg::weighted_leverage_exact(a, scaling);
        } else {
          return linalg::weighted_leverage_sketched(a, scaling, b.config);
        }
      },
      backend);
}

WeightVector power_correction(const WeightVector& w, const WeightVector& s, double p) {
  require_p(p);
  if (w.size() != s.size()) throw InputError("power_correction: length mismatch");
  const double half_p = p / 2.0;
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double lw = std::log(std::max(w[i], kWeightFloor));
    const double ls = std::log(std::max(s[i], kWeightFloor));
    const double value = std::exp(lw + half_p * (ls - lw));
    if (!std::isfinite(value)) {
      throw Error("fixed-point map overflowed at row " + std::to_string(i));
    }
    out[i] = std::max(value, kWeightFloor);
  }
  return WeightVector(std::move(out));
}

WeightVector fixed_point_map(const RowMatrix& a, const WeightVector& w, double p,
                             const LeverageBackend& backend) {
  return power_correction(w, reweighted_leverage(a, w, p, backend), p);
}

}  // namespace lewis
