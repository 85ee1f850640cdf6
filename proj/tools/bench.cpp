// Times the serial reference engine against the OpenMP engine on one
// representative point and verifies they produce identical counts.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ambc/harness.hpp"

int main(int argc, char** argv) {
  long trials = 200000;
  if (argc > 1) trials = std::atol(argv[1]);
  if (trials < 1) {
    std::fprintf(stderr, "usage: ambc_bench [trials]\n");
    return 2;
  }

  ambc::ResolvedPoint pt;
  pt.params = ambc::make_params(2, 2, 2000, 15.0, 40.0);
  pt.detector = ambc::DetectorKind::linear;
  pt.fidelity = ambc::Fidelity::chi_square;
  pt.master_seed = 99;
  pt.point_tag = 1;
  pt.stop.max_trials = trials;
  // Unreachable error target so both engines run the full trial budget.
  pt.stop.target_bit_errors = trials * 4;

  const auto time_run = [&](int workers, ambc::BerPoint& out) {
    pt.workers = workers;
    const auto t0 = std::chrono::steady_clock::now();
    out = ambc::run_ber_point(pt);
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
  };

  ambc::BerPoint serial, parallel;
  const double t_serial = time_run(1, serial);
#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif
  const double t_parallel = time_run(0, parallel);

  std::printf("engine    workers  trials    errors  seconds   trials/s\n");
  std::printf("serial    %7d  %8ld  %6ld  %7.3f  %9.0f\n", 1, serial.trials,
              serial.errors, t_serial, serial.trials / t_serial);
  std::printf("openmp    %7d  %8ld  %6ld  %7.3f  %9.0f\n", threads,
              parallel.trials, parallel.errors, t_parallel,
              parallel.trials / t_parallel);
  std::printf("speedup   %.2fx\n", t_serial / t_parallel);

  if (serial.errors != parallel.errors || serial.bits != parallel.bits ||
      serial.trials != parallel.trials) {
    std::fprintf(stderr, "engines disagree; determinism contract broken\n");
    return 1;
  }
  std::printf("engines agree: identical counts\n");
  return 0;
}
