#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "lewis/linalg.hpp"
#include "lewis/weights.hpp"

// Desk-scale ground truth for l_p Lewis weights. Uses linalg directly and none
// of the approximation driver, so it can validate that driver.
namespace lewis::oracle {

enum class Method {
  automatic,       ///< contractive for p < 4, damped otherwise
  contractive,     ///< w <- T_p(w); contracts for 2 <= p < 4
  damped,          ///< w <- w^{1-theta} T_p(w)^theta, theta = 2/p
  simplex_logdet,  ///< entropic mirror ascent of logdet(A^T W^{1-2/p} A) on {w >= 0, sum w = d}
};

std::string_view to_string(Method m);

struct ReferenceOptions {
  Method method = Method::automatic;
  std::optional<WeightVector> start;  ///< default: uniform d/n
  std::uint64_t max_iterations = 0;   ///< 0: 10^6 for iterations, 10^5 for ascent
};

struct ReferenceWeights {
  WeightVector w_star;
  double residual;  ///< max_i |sigma_i(W*^{1/2-1/p} A) / w*_i - 1|
  std::uint64_t iterations;
  Method method;
};

/// Throws ConvergenceError (carrying the best residual) at the iteration cap.
ReferenceWeights lewis_reference(const linalg::RowMatrix& a, double p, double tol,
                                 const ReferenceOptions& opts = {});

/// max_i |sigma_i(W^{1/2-1/p} A) / w_i - 1| with exact scores.
double fixed_point_residual(const linalg::RowMatrix& a, const WeightVector& w, double p);

}  // namespace lewis::oracle
