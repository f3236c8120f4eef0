#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

#include "lewis/linalg.hpp"
#include "lewis/weights.hpp"

namespace lewis {

using linalg::RowMatrix;

/// Weights are clamped below at this value before any exponentiation.
inline constexpr double kWeightFloor = 1e-300;
/// Default numeric slack on certificates computed with exact scores.
inline constexpr double kExactSlack = 1e-6;

// ---------------------------------------------------------------------------
// Leverage-score backends

struct ExactBackend {};
struct SketchBackend {
  linalg::SketchConfig config;
};
using LeverageBackend = std::variant<ExactBackend, SketchBackend>;

/// sigma(W^{1/2 - 1/p} A). The scaling w^{1-2/p} is formed in log space and
/// normalized by its maximum, which leaves the scores unchanged.
WeightVector reweighted_leverage(const RowMatrix& a, const WeightVector& w, double p,
                                 const LeverageBackend& backend = ExactBackend{});

/// One fixed-point step: T_p(w)_i = w_i^{1 - p/2} * sigma_i^{p/2}, with sigma the
/// leverage scores of W^{1/2 - 1/p} A. Evaluated in log space.
WeightVector fixed_point_map(const RowMatrix& a, const WeightVector& w, double p,
                             const LeverageBackend& backend = ExactBackend{});

/// w_i * (s_i / w_i)^{p/2} in log space; `w` is floored at kWeightFloor first.
WeightVector power_correction(const WeightVector& w, const WeightVector& s, double p);

// ---------------------------------------------------------------------------
// Configuration and schedule

enum class Mode { faithful, adaptive };

/// Sketched backend at the driver level. Every estimate call gets its own seed
/// and the failure budget delta_total is split evenly over the T + 1 calls.
struct SketchOptions {
  double delta_total = 1e-2;
  std::uint64_t seed = 0;
  double rows_per_inv_eps2 = linalg::kDefaultRowsPerInvEps2;
  /// Replaces the per-call accuracies eps1/4 and eps2. Voids the guarantee.
  std::optional<double> eps_override;
};

using AlgoBackend = std::variant<ExactBackend, SketchOptions>;

struct AlgoConfig {
  double p = 2.0;
  double alpha = 0.5;
  AlgoBackend backend = ExactBackend{};
  Mode mode = Mode::faithful;
  std::uint64_t adaptive_check_stride = 100;

  void validate() const;
};

inline constexpr std::uint64_t kMaxIterations = std::uint64_t{1} << 31;

/// eps1 = alpha / (100 p d), eps2 = alpha / (3 p), T = max(1, ceil(2 ln(n/d) / eps1)).
struct Schedule {
  double eps1;
  double eps2;
  std::uint64_t T;
};

/// Throws InputError when T would exceed kMaxIterations.
Schedule schedule_for(const AlgoConfig& cfg, linalg::Index n, linalg::Index d);

// ---------------------------------------------------------------------------
// Certificates

enum class CertificateKind { one_sided, two_sided, estimate };

std::string_view to_string(CertificateKind kind);

/// Measured coordinate-wise ratios against one approximation notion.
///
/// one_sided: ratio sigma_i / w_i, passes iff max_ratio <= (1+eps)(1+slack) and
///            l1_norm <= (1+eps)(1+slack) * l1_limit.
/// two_sided: ratio v_i / sigma_i(V^{1/2-1/p} A).
/// estimate:  ratio v_i / w_ref_i.
/// The last two pass iff every ratio lies in [(1-eps)(1-slack), (1+eps)(1+slack)].
struct Certificate {
  CertificateKind kind = CertificateKind::two_sided;
  double min_ratio = 1.0;
  double max_ratio = 1.0;
  std::optional<double> l1_norm;
  std::optional<double> l1_limit;
  double eps_target = 0.0;
  double slack = 0.0;
  bool degenerate = false;

  bool pass() const;
};

Certificate check_one_sided(const RowMatrix& a, const WeightVector& w, double p, double eps,
                            double slack = kExactSlack);
Certificate check_two_sided(const RowMatrix& a, const WeightVector& v, double p, double eps,
                            double slack = kExactSlack);
Certificate check_estimate(const WeightVector& v, const WeightVector& w_ref, double eps,
                           double slack = 0.0);

/// 3 eps (p/2 - 1) (1 + eps)^{p/2 - 1} d: the two-sided accuracy reached by one
/// fixed-point step from a one-sided eps-approximation.
double alpha_bound(double eps, double p, double d);

struct PencilBounds {
  double lambda_min;
  double lambda_max;
};

/// Extreme generalized eigenvalues of (A^T V^{1-2/p} A, A^T W^{1-2/p} A).
PencilBounds quadratic_form_sandwich(const RowMatrix& a, const WeightVector& w,
                                     const WeightVector& v, double p);

// ---------------------------------------------------------------------------
// Driver

struct PhaseStats {
  std::uint64_t iterates = 0;        ///< K, number of iterates averaged
  std::uint64_t estimate_calls = 0;  ///< leverage estimates made by the backend
  std::uint64_t adaptive_checks = 0; ///< exact one-sided checks (adaptive mode only)
};

struct OneSidedResult {
  WeightVector w;
  PhaseStats stats;
};

/// Averages K iterates w^{(k+1)} = sigma((W^{(k)})^{1/2-1/p} A) started from d/n,
/// each an eps1/4-accurate estimate. K = T in faithful mode; adaptive mode stops
/// at the first multiple of the check stride where the average passes the
/// one-sided check at 2 eps1.
OneSidedResult one_sided_phase(const RowMatrix& a, const AlgoConfig& cfg);

struct PhaseTimings {
  double one_sided_ms = 0.0;
  double post_process_ms = 0.0;
  double certificate_ms = 0.0;
};

struct LewisResult {
  WeightVector v;
  Certificate two_sided;
  WeightVector averaged;  ///< one-sided phase output w
  Schedule schedule;
  PhaseStats stats;       ///< estimate_calls includes the final eps2 estimate
  /// All leverage computations of the run: estimates plus the final exact
  /// certificate evaluation. Adaptive checks are counted separately.
  std::uint64_t leverage_calls = 0;
  PhaseTimings timings;
};

/// Two-sided alpha-approximate l_p Lewis weights of `a`.
LewisResult two_sided_lewis(const RowMatrix& a, const AlgoConfig& cfg);

}  // namespace lewis
