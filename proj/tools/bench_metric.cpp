// Benchmark: exhaustive metric validation, serial reference vs the OpenMP
// kernel, on a bookkeeping-built space.

#include <chrono>
#include <cstdlib>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ury/urysohn.hpp"

using namespace ury;

namespace {

template <typename F>
double time_ms(F&& f, int reps) {
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
  int steps = argc > 1 ? std::atoi(argv[1]) : 300;
  int reps = argc > 2 ? std::atoi(argv[2]) : 3;

  UrysohnBuilder b;
  b.run_bookkeeping(steps, 4);
  const FinMetric& m = b.space();
  std::cout << "points: " << m.size() << " (" << steps << " bookkeeping steps)\n";
#ifdef _OPENMP
  std::cout << "omp threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "omp threads: (compiled without OpenMP)\n";
#endif

  bool ok_serial = false, ok_parallel = false;
  double serial = time_ms([&] { ok_serial = validate_metric_serial(m).ok(); }, reps);
  double parallel = time_ms([&] { ok_parallel = validate_metric(m).ok(); }, reps);

  std::cout << "serial:   " << serial << " ms (ok=" << ok_serial << ")\n";
  std::cout << "parallel: " << parallel << " ms (ok=" << ok_parallel << ")\n";
  if (parallel > 0) std::cout << "speedup:  " << serial / parallel << "x\n";
  return ok_serial && ok_parallel && ok_serial == ok_parallel ? 0 : 1;
}
