#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lewis/lewis.hpp"

namespace lewis::io {

/// Grid of driver runs. Instances: "gaussian" (seeded), "identity" (needs n = d),
/// "copies" (stacked identities, needs d | n).
struct BenchSuite {
  std::vector<linalg::Index> n{100};
  std::vector<linalg::Index> d{5};
  std::vector<double> p{4.0};
  std::vector<double> alpha{0.5};
  std::vector<Mode> modes{Mode::faithful};
  std::string instance = "gaussian";
  std::uint64_t seed = 0;
};

struct BenchCase {
  linalg::Index n;
  linalg::Index d;
  double p;
  double alpha;
  Mode mode;
  std::string instance;
  std::uint64_t seed;
};

struct BenchRow {
  BenchCase config;
  std::uint64_t T = 0;
  std::uint64_t iterates = 0;
  std::uint64_t estimate_calls = 0;
  std::uint64_t leverage_calls = 0;
  std::uint64_t adaptive_checks = 0;
  double wall_ms = 0.0;
  double margin_low = 0.0;   ///< min_ratio - (1 - alpha)
  double margin_high = 0.0;  ///< (1 + alpha) - max_ratio
  bool pass = false;
};

std::vector<BenchCase> expand_grid(const BenchSuite& suite);
linalg::RowMatrix bench_instance(const BenchCase& c);
BenchRow run_case(const BenchCase& c);

void write_bench_header(std::ostream& out);
void write_bench_row(std::ostream& out, const BenchRow& row);

/// Runs every case and streams CSV rows; returns the rows.
std::vector<BenchRow> benchmark(const BenchSuite& suite, std::ostream& out);

}  // namespace lewis::io
