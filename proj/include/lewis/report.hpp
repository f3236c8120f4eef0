#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lewis/lewis.hpp"

namespace lewis::io {

struct BackendInfo {
  std::string kind = "exact";  ///< "exact" or "sketch"
  std::optional<std::uint64_t> seed;
  std::optional<double> eps;  ///< per-call accuracy override, if any
  std::optional<double> delta;
  std::optional<double> rows_per_inv_eps2;
};

struct ScheduleInfo {
  double eps1 = 0.0;
  double eps2 = 0.0;
  std::uint64_t T = 0;
  std::uint64_t iterations_executed = 0;
  std::uint64_t estimate_calls = 0;
  std::uint64_t leverage_calls = 0;
  std::uint64_t adaptive_checks = 0;
};

struct ReferenceInfo {
  std::string method;
  double tol = 0.0;
  double residual = 0.0;
  std::uint64_t iterations = 0;
};

struct RunReport {
  std::string version;
  std::string input_path;
  std::int64_t n = 0;
  std::int64_t d = 0;
  double p = 0.0;
  double alpha = 0.0;
  std::string mode;
  BackendInfo backend;
  ScheduleInfo schedule;
  std::vector<double> weights;
  Certificate one_sided;
  Certificate two_sided;
  std::optional<Certificate> estimate;
  std::optional<ReferenceInfo> reference;
  std::vector<std::pair<std::string, double>> timings_ms;
};

/// Pretty-printed JSON with a fixed key order; reals use 17 significant digits.
std::string serialize(const RunReport& report);

/// Inverse of serialize; rejects certificates whose "pass" disagrees with their ratios.
RunReport parse_report(std::string_view text);

}  // namespace lewis::io
