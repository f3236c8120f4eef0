#include <doctest.h>

#include "lewis/errors.hpp"
#include "lewis/instances.hpp"
#include "lewis/lewis.hpp"
#include "lewis/oracle.hpp"
#include "test_support.hpp"

using namespace lewis;
using lewis::testing::max_rel_diff;
using lewis::testing::random_positive;

namespace {

AlgoConfig make_config(double p, double alpha, Mode mode = Mode::faithful) {
  AlgoConfig cfg;
  cfg.p = p;
  cfg.alpha = alpha;
  cfg.mode = mode;
  return cfg;
}

}  // namespace

TEST_CASE("schedule follows the closed form") {
  SUBCASE("n = 100, d = 5, p = 4, alpha = 0.5") {
    const Schedule s = schedule_for(make_config(4, 0.5), 100, 5);
    CHECK(s.eps1 == doctest::Approx(2.5e-4));
    CHECK(s.eps2 == doctest::Approx(0.5 / 12));
    CHECK(s.T == 23966);
  }
  SUBCASE("n = 1000, d = 10, p = 4, alpha = 0.4") {
    CHECK(schedule_for(make_config(4, 0.4), 1000, 10).T == 92104);
  }
  SUBCASE("n = d uses the floor T = 1") {
    CHECK(schedule_for(make_config(3, 0.5), 7, 7).T == 1);
  }
  SUBCASE("overflowing schedule is refused") {
    CHECK_THROWS_AS(schedule_for(make_config(1000, 1e-9), 100000, 50), InputError);
  }
}

TEST_CASE("AlgoConfig validation") {
  CHECK_THROWS_AS(make_config(1.5, 0.5).validate(), InputError);
  CHECK_THROWS_AS(make_config(4, 0.0).validate(), InputError);
  CHECK_THROWS_AS(make_config(4, 1.0).validate(), InputError);
  AlgoConfig cfg = make_config(4, 0.5);
  cfg.adaptive_check_stride = 0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = make_config(4, 0.5);
  cfg.backend = SketchOptions{.delta_total = 1.5};
  CHECK_THROWS_AS(cfg.validate(), InputError);
}

TEST_CASE("fixed_point_map") {
  SUBCASE("p = 2 returns plain leverage scores") {
    const RowMatrix a = instances::gaussian(12, 3, 4);
    const WeightVector sigma = linalg::weighted_leverage_exact(a, linalg::ScalingVector::ones(12));
    const WeightVector t = fixed_point_map(a, WeightVector(random_positive(12, 1)), 2.0);
    CHECK(max_rel_diff(t.values(), sigma.values()) <= 1e-12);
  }
  SUBCASE("stacked identities are an exact fixed point") {
    for (double p : {2.0, 3.0, 4.0, 10.0}) {
      const RowMatrix a = instances::stacked_identity(4, 3);
      const WeightVector t = fixed_point_map(a, WeightVector::constant(12, 0.25), p);
      for (double x : t.values()) CHECK(x == doctest::Approx(0.25).epsilon(1e-14));
    }
  }
  SUBCASE("agrees with the explicit-inverse form") {
    const RowMatrix a = instances::gaussian(6, 2, 9);
    const WeightVector w = WeightVector::constant(6, 2.0 / 6.0);
    const WeightVector t = fixed_point_map(a, w, 4.0);
    CHECK(max_rel_diff(t.values(), lewis::testing::fixed_point_by_inverse(a.entries(), w, 4.0)) <= 1e-9);
  }
  SUBCASE("algebraic identity holds for random weights and p") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> up(2.0, 12.0);
    for (std::uint64_t t = 0; t < 50; ++t) {
      const RowMatrix a = instances::gaussian(8 + static_cast<linalg::Index>(t % 10), 1 + static_cast<linalg::Index>(t % 4), t);
      const double p = up(rng);
      const WeightVector w(random_positive(static_cast<std::size_t>(a.rows()), t + 3, 0.05, 1.0));
      const WeightVector fp = fixed_point_map(a, w, p);
      CHECK(max_rel_diff(fp.values(), lewis::testing::fixed_point_by_inverse(a.entries(), w, p)) <= 1e-9);
    }
  }
  SUBCASE("large p with extreme weights stays finite") {
    const RowMatrix a = instances::gaussian(10, 2, 1);
    std::vector<double> w(10, 0.2);
    w[0] = 1e-150;
    w[1] = 1e3;
    const WeightVector t = fixed_point_map(a, WeightVector(w), 60.0);
    for (double x : t.values()) CHECK(std::isfinite(x));
  }
  SUBCASE("length mismatch and bad p") {
    const RowMatrix a = instances::gaussian(5, 2, 1);
    CHECK_THROWS_AS(fixed_point_map(a, WeightVector::constant(4, 0.5), 4.0), InputError);
    CHECK_THROWS_AS(fixed_point_map(a, WeightVector::constant(5, 0.5), 1.0), InputError);
  }
}

TEST_CASE("one_sided_phase") {
  SUBCASE("square identity: T = 1, output all ones") {
    const RowMatrix a(linalg::Matrix::Identity(3, 3));
    const OneSidedResult r = one_sided_phase(a, make_config(4, 0.5));
    CHECK(r.stats.iterates == 1);
    CHECK(r.stats.estimate_calls == 0);
    for (double x : r.w.values()) CHECK(x == 1.0);
  }
  SUBCASE("stacked identities stay at 1/k") {
    const RowMatrix a = instances::stacked_identity(5, 2);
    const OneSidedResult r = one_sided_phase(a, make_config(6, 0.5));
    for (double x : r.w.values()) CHECK(x == doctest::Approx(0.2).epsilon(1e-12));
  }
  SUBCASE("random 20 x 3, p = 4, faithful: one-sided at 2 eps1") {
    const RowMatrix a = instances::gaussian(20, 3, 2);
    const AlgoConfig cfg = make_config(4, 0.5);
    const Schedule s = schedule_for(cfg, 20, 3);
    const OneSidedResult r = one_sided_phase(a, cfg);
    CHECK(r.stats.iterates == s.T);
    CHECK(r.stats.estimate_calls == s.T - 1);
    CHECK(check_one_sided(a, r.w, 4, 2 * s.eps1, 1e-9).pass());
    CHECK(r.w.l1() <= (1 + s.eps1 / 4) * 3 * (1 + 1e-9));
  }
  SUBCASE("adaptive mode exits early at a stride multiple and still certifies") {
    const RowMatrix a = instances::gaussian(20, 3, 2);
    const AlgoConfig cfg = make_config(4, 0.5, Mode::adaptive);
    const Schedule s = schedule_for(cfg, 20, 3);
    const OneSidedResult r = one_sided_phase(a, cfg);
    CHECK(r.stats.iterates < s.T);
    CHECK(r.stats.iterates % cfg.adaptive_check_stride == 0);
    CHECK(r.stats.adaptive_checks == r.stats.iterates / cfg.adaptive_check_stride);
    CHECK(check_one_sided(a, r.w, 4, 2 * s.eps1, 0.0).pass());
  }
}

TEST_CASE("two_sided_lewis") {
  SUBCASE("stacked identities: exact fixed point for any p") {
    for (double p : {2.0, 2.5, 4.0, 9.0}) {
      const RowMatrix a = instances::stacked_identity(4, 2);
      const LewisResult r = two_sided_lewis(a, make_config(p, 0.3));
      for (double x : r.v.values()) CHECK(x == doctest::Approx(0.25).epsilon(1e-12));
      CHECK(r.two_sided.min_ratio == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(r.two_sided.max_ratio == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(r.two_sided.pass());
    }
  }
  SUBCASE("p = 2 returns leverage scores") {
    const RowMatrix a = instances::gaussian(50, 4, 12);
    const WeightVector sigma = linalg::weighted_leverage_exact(a, linalg::ScalingVector::ones(50));
    const LewisResult r = two_sided_lewis(a, make_config(2, 0.2));
    CHECK(max_rel_diff(r.v.values(), sigma.values()) <= 0.2);
  }
  SUBCASE("random 10 x 3, p = 4, alpha = 0.25 against the oracle") {
    const RowMatrix a = instances::gaussian(10, 3, 6);
    const LewisResult r = two_sided_lewis(a, make_config(4, 0.25));
    CHECK(r.two_sided.pass());
    CHECK(r.two_sided.min_ratio >= 0.75);
    CHECK(r.two_sided.max_ratio <= 1.25);
    const auto ref = oracle::lewis_reference(a, 4, 1e-10);
    const double bound = std::min(0.9, 10 * 0.25 * 16 * std::sqrt(3.0));
    CHECK(check_estimate(r.v, ref.w_star, bound).pass());
  }
  SUBCASE("faithful leverage calls are T + 1") {
    const RowMatrix a = instances::gaussian(30, 3, 1);
    const AlgoConfig cfg = make_config(3, 0.6);
    const LewisResult r = two_sided_lewis(a, cfg);
    CHECK(r.leverage_calls == r.schedule.T + 1);
    CHECK(r.stats.estimate_calls == r.schedule.T);
    CHECK(r.stats.adaptive_checks == 0);
  }
  SUBCASE("sketched backend certifies and is seed-deterministic") {
    const RowMatrix a = instances::gaussian(40, 3, 4);
    AlgoConfig cfg = make_config(4, 0.5, Mode::adaptive);
    cfg.backend = SketchOptions{.delta_total = 0.01, .seed = 77};
    const LewisResult r1 = two_sided_lewis(a, cfg);
    const LewisResult r2 = two_sided_lewis(a, cfg);
    CHECK(r1.two_sided.pass());
    CHECK(r1.two_sided.slack == 0.0);
    CHECK(r1.v.vector() == r2.v.vector());
  }
}

TEST_CASE("check_one_sided") {
  const RowMatrix a = instances::stacked_identity(3, 2);
  const WeightVector exact = WeightVector::constant(6, 1.0 / 3.0);
  SUBCASE("exact weights pass at eps = 0") {
    const Certificate c = check_one_sided(a, exact, 4, 0.0);
    CHECK(c.pass());
    CHECK(c.min_ratio == doctest::Approx(1.0));
    CHECK(c.max_ratio == doctest::Approx(1.0));
    CHECK(*c.l1_norm == doctest::Approx(2.0));
  }
  SUBCASE("doubled weights fail the l1 clause") {
    const Certificate c = check_one_sided(a, exact.scaled(2.0), 4, 0.1);
    CHECK(c.max_ratio <= 1.1);
    CHECK(*c.l1_norm == doctest::Approx(4.0));
    CHECK_FALSE(c.pass());
  }
}

TEST_CASE("check_two_sided") {
  const RowMatrix a = instances::stacked_identity(3, 2);
  const WeightVector exact = WeightVector::constant(6, 1.0 / 3.0);
  CHECK(check_two_sided(a, exact, 4, 0.0).pass());
  for (double p : {3.0, 4.0, 8.0}) {
    // Scores are invariant under scalar scaling of the weights, so the ratio is gamma itself.
    const double gamma = 1.5;
    const double ratio = gamma;
    const Certificate c = check_two_sided(a, exact.scaled(gamma), p, 0.0, 0.0);
    CHECK(c.min_ratio == doctest::Approx(ratio).epsilon(1e-12));
    CHECK(c.max_ratio == doctest::Approx(ratio).epsilon(1e-12));
    CHECK(check_two_sided(a, exact.scaled(gamma), p, ratio - 1 + 1e-9, 0.0).pass());
    CHECK_FALSE(check_two_sided(a, exact.scaled(gamma), p, ratio - 1 - 1e-9, 0.0).pass());
  }
}

TEST_CASE("check_estimate") {
  const WeightVector ref(random_positive(8, 3));
  CHECK(check_estimate(ref, ref, 0.0).pass());
  const Certificate c = check_estimate(ref.scaled(1.2), ref, 0.1);
  CHECK_FALSE(c.pass());
  CHECK(c.max_ratio == doctest::Approx(1.2));
  CHECK_THROWS_AS(check_estimate(ref, WeightVector::constant(3, 1.0), 0.1), InputError);
}

TEST_CASE("alpha_bound") {
  CHECK(alpha_bound(0.0, 4, 10) == 0.0);
  CHECK(alpha_bound(0.3, 2, 7) == 0.0);
  CHECK(alpha_bound(0.1, 4, 10) == doctest::Approx(3.3).epsilon(1e-15));
  CHECK_THROWS_AS(alpha_bound(-0.1, 4, 10), InputError);
}

TEST_CASE("quadratic_form_sandwich") {
  const RowMatrix a = instances::gaussian(8, 2, 5);
  const WeightVector w(random_positive(8, 6));
  SUBCASE("identical pencil") {
    const PencilBounds b = quadratic_form_sandwich(a, w, w, 4);
    CHECK(b.lambda_min == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.lambda_max == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("scalar scaling") {
    const double t = 2.7;
    const PencilBounds b = quadratic_form_sandwich(a, w, w.scaled(t), 4);
    CHECK(b.lambda_min == doctest::Approx(std::pow(t, 0.5)).epsilon(1e-12));
    CHECK(b.lambda_max == doctest::Approx(std::pow(t, 0.5)).epsilon(1e-12));
  }
  SUBCASE("one fixed-point step stays within 1 +- alpha") {
    const WeightVector v = fixed_point_map(a, w, 4);
    const WeightVector sigma = reweighted_leverage(a, w, 4);
    double alpha = 0.0;
    for (std::size_t i = 0; i < 8; ++i) alpha += std::abs(v[i] - sigma[i]);
    const PencilBounds b = quadratic_form_sandwich(a, w, v, 4);
    CHECK(b.lambda_min >= 1 - alpha - 1e-8);
    CHECK(b.lambda_max <= 1 + alpha + 1e-8);
  }
}

TEST_CASE("right multiplication leaves certificates unchanged") {
  const RowMatrix a = instances::gaussian(25, 3, 31);
  const RowMatrix ar = a.times(instances::conditioned_factor(3, 100.0, 4));
  const AlgoConfig cfg = make_config(4, 0.5);
  const LewisResult r1 = two_sided_lewis(a, cfg);
  const LewisResult r2 = two_sided_lewis(ar, cfg);
  CHECK(std::abs(r1.two_sided.min_ratio - r2.two_sided.min_ratio) <= 1e-6);
  CHECK(std::abs(r1.two_sided.max_ratio - r2.two_sided.max_ratio) <= 1e-6);
}
