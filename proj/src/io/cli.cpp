#include "lewis/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>

#include "lewis/bench.hpp"
#include "lewis/errors.hpp"
#include "lewis/io.hpp"
#include "lewis/oracle.hpp"
#include "lewis/report.hpp"
#include "lewis/version.hpp"

namespace lewis::io {

namespace {

struct RunFlags {
  std::string input;
  std::string format = "auto";
  double p = 0.0;
  double alpha = 0.0;
  std::string mode = "faithful";
  std::string backend = "exact";
  std::optional<double> sketch_eps;
  double sketch_delta = 1e-2;
  std::uint64_t seed = 0;
  std::uint64_t check_stride = 100;
  bool reference = false;
  double tol_reference = 1e-9;
  std::string output;
  bool quiet = false;
};

struct BenchFlags {
  std::vector<long long> n{100};
  std::vector<long long> d{5};
  std::vector<double> p{4.0};
  std::vector<double> alpha{0.5};
  std::vector<std::string> modes{"faithful"};
  std::string instance = "gaussian";
  std::uint64_t seed = 0;
  std::string output;
};

Mode parse_mode(const std::string& s) { return s == "adaptive" ? Mode::adaptive : Mode::faithful; }

/// Estimate accuracy expected of a two-sided alpha-approximation.
double estimate_bound(double alpha, double p, double d) {
  return std::min(0.9, 10.0 * alpha * p * p * std::sqrt(d));
}

void print_certificate(std::ostream& err, const Certificate& c) {
  err << "  " << to_string(c.kind) << ": " << (c.pass() ? "PASS" : "FAIL") << "  ratios ["
      << c.min_ratio << ", " << c.max_ratio << "]  eps " << c.eps_target;
  if (c.l1_norm) err << "  l1 " << *c.l1_norm;
  err << "\n";
}

int run(const RunFlags& f, std::ostream& out, std::ostream& err) {
  if (f.input.empty()) throw InputError("--input is required");
  AlgoConfig cfg;
  cfg.p = f.p;
  cfg.alpha = f.alpha;
  cfg.mode = parse_mode(f.mode);
  cfg.adaptive_check_stride = f.check_stride;
  if (f.backend == "sketch") {
    SketchOptions s;
    s.delta_total = f.sketch_delta;
    s.seed = f.seed;
    s.eps_override = f.sketch_eps;
    cfg.backend = s;
  }
  cfg.validate();

  const MatrixFormat fmt = f.format == "mm"    ? MatrixFormat::matrix_market
                           : f.format == "csv" ? MatrixFormat::csv
                                               : MatrixFormat::automatic;
  const auto t_load = std::chrono::steady_clock::now();
  const linalg::RowMatrix a = load_matrix(f.input, fmt);
  const double load_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_load).count();

  const LewisResult res = two_sided_lewis(a, cfg);

  RunReport rep;
  rep.version = kVersion;
  rep.input_path = f.input;
  rep.n = a.rows();
  rep.d = a.cols();
  rep.p = cfg.p;
  rep.alpha = cfg.alpha;
  rep.mode = f.mode;
  if (const auto* s = std::get_if<SketchOptions>(&cfg.backend)) {
    rep.backend.kind = "sketch";
    rep.backend.seed = s->seed;
    rep.backend.eps = s->eps_override;
    rep.backend.delta = s->delta_total;
    rep.backend.rows_per_inv_eps2 = s->rows_per_inv_eps2;
  }
  rep.schedule = {res.schedule.eps1,        res.schedule.eps2,        res.schedule.T,
                  res.stats.iterates,       res.stats.estimate_calls, res.leverage_calls,
                  res.stats.adaptive_checks};
  rep.weights = res.v.vector();
  rep.one_sided = check_one_sided(a, res.averaged, cfg.p, 2.0 * res.schedule.eps1);
  rep.two_sided = res.two_sided;

  bool ok = res.two_sided.pass();
  double ref_ms = 0.0;
  if (f.reference) {
    const auto t_ref = std::chrono::steady_clock::now();
    const oracle::ReferenceWeights ref = oracle::lewis_reference(a, cfg.p, f.tol_reference);
    ref_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_ref)
                 .count();
    rep.reference = ReferenceInfo{std::string(oracle::to_string(ref.method)), f.tol_reference,
                                  ref.residual, ref.iterations};
    rep.estimate = check_estimate(res.v, ref.w_star,
                                  estimate_bound(cfg.alpha, cfg.p, static_cast<double>(a.cols())));
    ok = ok && rep.estimate->pass();
  }
  rep.timings_ms = {{"load", load_ms},
                    {"one_sided", res.timings.one_sided_ms},
                    {"post_process", res.timings.post_process_ms},
                    {"certificate", res.timings.certificate_ms}};
  if (f.reference) rep.timings_ms.emplace_back("reference", ref_ms);

  const std::string json = serialize(rep);
  if (f.output.empty()) {
    out << json;
  } else {
    std::ofstream file(f.output);
    if (!file) throw InputError("cannot write '" + f.output + "'");
    file << json;
  }

  if (!f.quiet) {
    err << "lewisw: n = " << rep.n << ", d = " << rep.d << ", p = " << rep.p
        << ", alpha = " << rep.alpha << ", T = " << rep.schedule.T
        << ", iterates = " << rep.schedule.iterations_executed << "\n";
    print_certificate(err, rep.one_sided);
    print_certificate(err, rep.two_sided);
    if (rep.estimate) print_certificate(err, *rep.estimate);
  }
  return ok ? kExitOk : kExitCertificateFailure;
}

int bench(const BenchFlags& f, std::ostream& out) {
  BenchSuite suite;
  suite.n.assign(f.n.begin(), f.n.end());
  suite.d.assign(f.d.begin(), f.d.end());
  suite.p = f.p;
  suite.alpha = f.alpha;
  suite.modes.clear();
  for (const auto& m : f.modes) suite.modes.push_back(parse_mode(m));
  suite.instance = f.instance;
  suite.seed = f.seed;

  if (f.output.empty()) {
    benchmark(suite, out);
  } else {
    std::ofstream file(f.output);
    if (!file) throw InputError("cannot write '" + f.output + "'");
    benchmark(suite, file);
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-sided approximate l_p Lewis weights (p >= 2)", "lewisw"};
  app.set_version_flag("--version", kVersion);

  RunFlags rf;
  app.add_option("--input", rf.input, "Matrix file (Matrix Market or CSV)");
  app.add_option("--format", rf.format, "Input format")->check(CLI::IsMember({"auto", "mm", "csv"}));
  app.add_option("--p", rf.p, "Norm parameter p >= 2");
  app.add_option("--alpha", rf.alpha, "Target two-sided accuracy in (0, 1)");
  app.add_option("--mode", rf.mode, "faithful | adaptive")
      ->check(CLI::IsMember({"faithful", "adaptive"}));
  app.add_option("--backend", rf.backend, "exact | sketch")->check(CLI::IsMember({"exact", "sketch"}));
  app.add_option("--sketch-eps", rf.sketch_eps, "Override the per-call sketch accuracy");
  app.add_option("--sketch-delta", rf.sketch_delta, "Total failure probability of the sketched run");
  app.add_option("--seed", rf.seed, "Sketch seed");
  app.add_option("--check-stride", rf.check_stride, "Adaptive mode check interval");
  app.add_flag("--reference", rf.reference, "Also compute reference weights and an estimate certificate");
  app.add_option("--tol-reference", rf.tol_reference, "Reference fixed-point tolerance");
  app.add_option("--output", rf.output, "Report path (default: stdout)");
  app.add_flag("--quiet", rf.quiet, "No summary on stderr");

  BenchFlags bf;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run a benchmark grid and print CSV rows");
  bench_cmd->add_option("--n", bf.n, "Row counts")->delimiter(',');
  bench_cmd->add_option("--d", bf.d, "Column counts")->delimiter(',');
  bench_cmd->add_option("--p", bf.p, "Values of p")->delimiter(',');
  bench_cmd->add_option("--alpha", bf.alpha, "Values of alpha")->delimiter(',');
  bench_cmd->add_option("--mode", bf.modes, "Modes")->delimiter(',')
      ->check(CLI::IsMember({"faithful", "adaptive"}));
  bench_cmd->add_option("--instance", bf.instance, "gaussian | identity | copies");
  bench_cmd->add_option("--seed", bf.seed, "Instance seed");
  bench_cmd->add_option("--output", bf.output, "CSV path (default: stdout)");
  app.require_subcommand(0, 1);

  std::vector<const char*> argv{"lewisw"};
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (bench_cmd->parsed()) return bench(bf, out);
    return run(rf, out, err);
  } catch (const Error& e) {
    err << "lewisw: error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "lewisw: error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace lewis::io
