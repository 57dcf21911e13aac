// Serial reference kernels vs the OpenMP versions.
//   bench_kernels [reps]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "grasslen/kernels.hpp"
#include "grasslen/length_fit.hpp"
#include "grasslen/modular.hpp"
#include "grasslen/random.hpp"

using namespace grasslen;

namespace {

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    best = std::min(best, dt);
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %9.4f s   omp %9.4f s   speedup %5.2fx\n", name, serial, parallel, serial / parallel);
}

volatile double sink = 0.0;

} // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads %d, best of %d\n", threads, reps);

  Rng rng(kDefaultSeed);

  {
    const int m = 15, n = 6;
    const Eigen::VectorXcd psi = complex_gaussian(static_cast<Eigen::Index>(binomial(m, n)), 1, rng);
    std::vector<Scalar> c(psi.data(), psi.data() + psi.size());
    const double s = best_of(reps, [&] { sink = kernels::serial::plucker_residual(m, n, c); });
    const double p = best_of(reps, [&] { sink = kernels::omp::plucker_residual(m, n, c); });
    report("plucker_residual (15,6)", s, p);
  }

  {
    const int m = 16, n = 5, l = 12;
    const SubsetTableChain chain(m, n);
    std::vector<Eigen::MatrixXcd> pts;
    for (int i = 0; i < l; ++i) pts.push_back(complex_gaussian(m, n, rng));
    const double s = best_of(reps, [&] { sink = kernels::serial::terracini_matrix(pts, chain).norm(); });
    const double p = best_of(reps, [&] { sink = kernels::omp::terracini_matrix(pts, chain).norm(); });
    report("terracini_matrix (16,5,12)", s, p);
  }

  {
    const int m = 12, n = 5, l = 5;
    const SubsetTableChain chain(m, n);
    const std::uint64_t prime = modular::random_prime(rng, 62);
    std::uniform_int_distribution<std::int64_t> coord(-1000000, 1000000);
    modular::Matrix base;
    for (int i = 0; i < l; ++i) {
      std::vector<std::int64_t> f(static_cast<std::size_t>(m * n));
      for (auto& v : f) v = coord(rng);
      const auto rows = modular::tangent_rows(f, m, n, prime, chain);
      base.cols = rows.cols;
      base.rows += rows.rows;
      base.data.insert(base.data.end(), rows.data.begin(), rows.data.end());
    }
    const double s = best_of(reps, [&] {
      auto a = base;
      sink = static_cast<double>(modular::rank(a, prime, Exec::Serial));
    });
    const double p = best_of(reps, [&] {
      auto a = base;
      sink = static_cast<double>(modular::rank(a, prime, Exec::Parallel));
    });
    report("modular rank (12,5,5)", s, p);
  }

  {
    const auto planted = planted_sum(8, 3, 3, 7);
    FitOptions opts;
    opts.restarts = std::max(4, threads);
    opts.stop_on_success = false;
    opts.exec = Exec::Serial;
    const double s = best_of(reps, [&] { sink = als_fit(planted.first, 3, opts).best_residual; });
    opts.exec = Exec::Parallel;
    const double p = best_of(reps, [&] { sink = als_fit(planted.first, 3, opts).best_residual; });
    report("als restarts (8,3,3)", s, p);
  }
  return 0;
}
