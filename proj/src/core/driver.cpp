#include <chrono>
#include <cmath>
#include <sstream>

#include "lewis/errors.hpp"
#include "lewis/kernels.hpp"
#include "lewis/lewis.hpp"

namespace lewis {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Backend for the call with the given index; `accuracy` is eps1/4 or eps2.
LeverageBackend backend_for_call(const AlgoConfig& cfg, const Schedule& sched, double accuracy,
                                 std::uint64_t call) {
  if (std::holds_alternative<ExactBackend>(cfg.backend)) return ExactBackend{};
  const auto& opts = std::get<SketchOptions>(cfg.backend);
  linalg::SketchConfig sc;
  sc.eps = opts.eps_override.value_or(accuracy);
  sc.delta = opts.delta_total / (static_cast<double>(sched.T) + 1.0);
  sc.seed = linalg::kernels::counter_hash(opts.seed, call);
  sc.rows_per_inv_eps2 = opts.rows_per_inv_eps2;
  return SketchBackend{sc};
}

WeightVector average(const std::vector<double>& sum, std::uint64_t count) {
  std::vector<double> out(sum);
  const double inv = 1.0 / static_cast<double>(count);
  for (double& x : out) x = std::max(x * inv, kWeightFloor);
  return WeightVector(std::move(out));
}

}  // namespace

void AlgoConfig::validate() const {
  if (!(p >= 2.0) || !std::isfinite(p)) {
    std::ostringstream msg;
    msg << "p must be a finite real >= 2 (got " << p << "); only the p >= 2 regime is supported";
    throw InputError(msg.str());
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream msg;
    msg << "alpha must lie in (0, 1) (got " << alpha << ")";
    throw InputError(msg.str());
  }
  if (adaptive_check_stride == 0) throw InputError("adaptive check stride must be positive");
  if (const auto* s = std::get_if<SketchOptions>(&backend)) {
    if (!(s->delta_total > 0.0 && s->delta_total < 1.0)) {
      throw InputError("sketch delta must lie in (0, 1)");
    }
    if (s->eps_override && !(*s->eps_override > 0.0 && *s->eps_override < 1.0)) {
      throw InputError("sketch eps must lie in (0, 1)");
    }
    if (!(s->rows_per_inv_eps2 > 0.0)) throw InputError("sketch row constant must be positive");
  }
}

Schedule schedule_for(const AlgoConfig& cfg, linalg::Index n, linalg::Index d) {
  cfg.validate();
  const double nd = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  Schedule s{};
  s.eps1 = cfg.alpha / (100.0 * cfg.p * dd);
  s.eps2 = cfg.alpha / (3.0 * cfg.p);
  const double t = std::ceil(2.0 * std::log(nd / dd) / s.eps1);
  if (t > static_cast<double>(kMaxIterations)) {
    std::ostringstream msg;
    msg << "schedule requires T = " << t << " iterations, above the cap of 2^31; "
        << "use a larger alpha or adaptive mode";
    throw InputError(msg.str());
  }
  s.T = t < 1.0 ? 1 : static_cast<std::uint64_t>(t);
  return s;
}

OneSidedResult one_sided_phase(const RowMatrix& a, const AlgoConfig& cfg) {
  const Schedule sched = schedule_for(cfg, a.rows(), a.cols());
  const auto n = static_cast<std::size_t>(a.rows());
  const double target = 2.0 * sched.eps1;

  WeightVector w = WeightVector::constant(n, static_cast<double>(a.cols()) / static_cast<double>(n));
  std::vector<double> sum(w.vector());
  PhaseStats stats;
  stats.iterates = 1;

  while (stats.iterates < sched.T) {
    const LeverageBackend backend =
        backend_for_call(cfg, sched, sched.eps1 / 4.0, stats.estimate_calls);
    w = reweighted_leverage(a, w, cfg.p, backend);
    ++stats.estimate_calls;
    for (std::size_t i = 0; i < n; ++i) sum[i] += w[i];
    ++stats.iterates;

    if (cfg.mode == Mode::adaptive && stats.iterates % cfg.adaptive_check_stride == 0 &&
        stats.iterates < sched.T) {
      ++stats.adaptive_checks;
      if (check_one_sided(a, average(sum, stats.iterates), cfg.p, target, 0.0).pass()) break;
    }
  }
  return {average(sum, stats.iterates), stats};
}

LewisResult two_sided_lewis(const RowMatrix& a, const AlgoConfig& cfg) {
  const Schedule sched = schedule_for(cfg, a.rows(), a.cols());
  const bool exact = std::holds_alternative<ExactBackend>(cfg.backend);

  auto t0 = Clock::now();
  OneSidedResult phase = one_sided_phase(a, cfg);
  const double one_sided_ms = elapsed_ms(t0);

  t0 = Clock::now();
  const LeverageBackend backend =
      backend_for_call(cfg, sched, sched.eps2, phase.stats.estimate_calls);
  const WeightVector s = reweighted_leverage(a, phase.w, cfg.p, backend);
  ++phase.stats.estimate_calls;
  WeightVector v = power_correction(phase.w, s, cfg.p);
  const double post_ms = elapsed_ms(t0);

  t0 = Clock::now();
  Certificate cert = check_two_sided(a, v, cfg.p, cfg.alpha, exact ? kExactSlack : 0.0);
  const double cert_ms = elapsed_ms(t0);

  return LewisResult{
      .v = std::move(v),
      .two_sided = cert,
      .averaged = std::move(phase.w),
      .schedule = sched,
      .stats = phase.stats,
      .leverage_calls = phase.stats.estimate_calls + 1,
      .timings = {one_sided_ms, post_ms, cert_ms},
  };
}

}  // namespace lewis
