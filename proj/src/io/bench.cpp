#include "lewis/bench.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>

#include "lewis/errors.hpp"
#include "lewis/instances.hpp"

namespace lewis::io {

std::vector<BenchCase> expand_grid(const BenchSuite& suite) {
  std::vector<BenchCase> cases;
  for (auto n : suite.n) {
    for (auto d : suite.d) {
      for (double p : suite.p) {
        for (double alpha : suite.alpha) {
          for (Mode m : suite.modes) cases.push_back({n, d, p, alpha, m, suite.instance, suite.seed});
        }
      }
    }
  }
  return cases;
}

linalg::RowMatrix bench_instance(const BenchCase& c) {
  if (c.instance == "gaussian") return instances::gaussian(c.n, c.d, c.seed);
  if (c.instance == "identity") {
    if (c.n != c.d) throw InputError("identity instance requires n = d");
    return instances::stacked_identity(1, c.d);
  }
  if (c.instance == "copies") {
    if (c.n % c.d != 0) throw InputError("copies instance requires d to divide n");
    return instances::stacked_identity(c.n / c.d, c.d);
  }
  throw InputError("unknown bench instance '" + c.instance + "'");
}

BenchRow run_case(const BenchCase& c) {
  const linalg::RowMatrix a = bench_instance(c);
  AlgoConfig cfg;
  cfg.p = c.p;
  cfg.alpha = c.alpha;
  cfg.mode = c.mode;

  const auto t0 = std::chrono::steady_clock::now();
  const LewisResult res = two_sided_lewis(a, cfg);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  BenchRow row;
  row.config = c;
  row.T = res.schedule.T;
  row.iterates = res.stats.iterates;
  row.estimate_calls = res.stats.estimate_calls;
  row.leverage_calls = res.leverage_calls;
  row.adaptive_checks = res.stats.adaptive_checks;
  row.wall_ms = ms;
  row.margin_low = res.two_sided.min_ratio - (1.0 - c.alpha);
  row.margin_high = (1.0 + c.alpha) - res.two_sided.max_ratio;
  row.pass = res.two_sided.pass();
  return row;
}

void write_bench_header(std::ostream& out) {
  out << "instance,n,d,p,alpha,mode,seed,T,iterates,estimate_calls,leverage_calls,"
         "adaptive_checks,wall_ms,margin_low,margin_high,pass\n";
}

void write_bench_row(std::ostream& out, const BenchRow& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%lld,%lld,%.17g,%.17g,%s,%llu,%llu,%llu,%llu,%llu,%llu,%.3f,%.17g,%.17g,%d\n",
                r.config.instance.c_str(), static_cast<long long>(r.config.n),
                static_cast<long long>(r.config.d), r.config.p, r.config.alpha,
                r.config.mode == Mode::faithful ? "faithful" : "adaptive",
                static_cast<unsigned long long>(r.config.seed), static_cast<unsigned long long>(r.T),
                static_cast<unsigned long long>(r.iterates),
                static_cast<unsigned long long>(r.estimate_calls),
                static_cast<unsigned long long>(r.leverage_calls),
                static_cast<unsigned long long>(r.adaptive_checks), r.wall_ms, r.margin_low,
                r.margin_high, r.pass ? 1 : 0);
  out << buf;
}

std::vector<BenchRow> benchmark(const BenchSuite& suite, std::ostream& out) {
  std::vector<BenchRow> rows;
  write_bench_header(out);
  for (const auto& c : expand_grid(suite)) {
    rows.push_back(run_case(c));
    write_bench_row(out, rows.back());
    out.flush();
  }
  return rows;
}

}  // namespace lewis::io
