// Serial reference kernels against their OpenMP counterparts. Prints one CSV row
// per (kernel, shape, thread count) with the median wall time of each twin and
// the largest entrywise disagreement between their outputs.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lewis/instances.hpp"
#include "lewis/kernels.hpp"
#include "lewis/linalg.hpp"

using namespace lewis::linalg;
namespace kernels = lewis::linalg::kernels;

namespace {

double median_ms(int reps, const std::function<void()>& fn) {
  std::vector<double> times;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    times.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

void row(const char* kernel, Index n, Index d, int threads, double serial_ms, double parallel_ms,
         double max_diff) {
  std::printf("%s,%ld,%ld,%d,%.4f,%.4f,%.3f,%.3e\n", kernel, static_cast<long>(n), static_cast<long>(d),
              threads, serial_ms, parallel_ms, serial_ms / parallel_ms, max_diff);
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs OpenMP kernel timings"};
  std::vector<long> ns{20000, 200000};
  std::vector<long> ds{4, 16};
  std::vector<int> threads{1, omp_get_max_threads()};
  int reps = 5;
  std::uint64_t sign_rows = 1 << 20;
  app.add_option("--n", ns, "row counts")->delimiter(',');
  app.add_option("--d", ds, "column counts")->delimiter(',');
  app.add_option("--threads", threads, "OpenMP thread counts")->delimiter(',');
  app.add_option("--reps", reps, "repetitions per timing (median reported)")->check(CLI::PositiveNumber);
  app.add_option("--sign-rows", sign_rows, "Rademacher rows for the sign Gram kernel");
  CLI11_PARSE(app, argc, argv);

  threads.erase(std::unique(threads.begin(), threads.end()), threads.end());
  std::printf("kernel,n,d,threads,serial_ms,parallel_ms,speedup,max_abs_diff\n");

  for (long n : ns) {
    for (long d : ds) {
      const RowMatrix a = lewis::instances::gaussian(n, d, 1);
      const Matrix& m = a.entries();
      std::vector<double> c(static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.5 + static_cast<double>(i % 7) / 7.0;

      for (int t : threads) {
        omp_set_num_threads(t);

        SquareMatrix gs;
        SquareMatrix gp;
        const double gram_s = median_ms(reps, [&] { gs = kernels::gram_serial(m, c); });
        const double gram_p = median_ms(reps, [&] { gp = kernels::gram_parallel(m, c); });
        row("gram", n, d, t, gram_s, gram_p, (gs - gp).cwiseAbs().maxCoeff());

        SquareMatrix rs;
        SquareMatrix rp;
        const double qr_s = median_ms(reps, [&] { rs = kernels::r_factor_serial(m, c); });
        const double qr_p = median_ms(reps, [&] { rp = kernels::r_factor_tsqr(m, c); });
        row("r_factor", n, d, t, qr_s, qr_p, (rs - rp).cwiseAbs().maxCoeff());

        Vector ls;
        Vector lp;
        const double lev_s = median_ms(reps, [&] { ls = kernels::leverage_reference(m, c); });
        const double lev_p = median_ms(reps, [&] {
          const SquareMatrix r = kernels::r_factor_tsqr(m, c);
          lp = kernels::orthonormal_rows(m, c, r).rowwise().squaredNorm();
        });
        row("leverage", n, d, t, lev_s, lev_p, (ls - lp).cwiseAbs().maxCoeff());

        Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> ss;
        Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> sp;
        const double sg_s = median_ms(reps, [&] { ss = kernels::sign_gram_serial(sign_rows, d, 3); });
        const double sg_p = median_ms(reps, [&] { sp = kernels::sign_gram_parallel(sign_rows, d, 3); });
        row("sign_gram", static_cast<Index>(sign_rows), d, t, sg_s, sg_p,
            static_cast<double>((ss - sp).cwiseAbs().maxCoeff()));
      }
    }
  }
  return 0;
}
