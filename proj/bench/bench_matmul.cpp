// Serial reference product against the OpenMP kernel, and the periodic power
// construction on top of it.
//
//   bench_matmul [n ...]      default sizes: 100 200 400 800

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "maxplus/periodic.hpp"

using namespace maxplus;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-9, 2);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const int v = d(rng);
      a(i, j) = v > 0 ? kZero : Scalar(static_cast<double>(v));
    }
  }
  // Hamiltonian zero cycle: irreducible, definite and visualized.
  for (std::size_t i = 0; i < n; ++i) a(i, (i + 1) % n) = kUnit;
  return a;
}

template <class F>
double best_ms(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> sizes;
  for (int k = 1; k < argc; ++k) sizes.push_back(std::stoul(argv[k]));
  if (sizes.empty()) sizes = {100, 200, 400, 800};

  std::mt19937_64 rng(7);
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%6s %12s %12s %8s %9s %14s\n", "n", "serial ms", "openmp ms", "speedup", "identical", "periodic ms");
  for (std::size_t n : sizes) {
    const Matrix a = random_matrix(rng, n);
    const Matrix b = random_matrix(rng, n);
    Matrix ps, pp;
    const int reps = n <= 200 ? 5 : 2;
    const double serial = best_ms(reps, [&] { ps = matmul_serial(a, b); });
    const double parallel = best_ms(reps, [&] { pp = matmul(a, b); });
    const double periodic = best_ms(1, [&] { periodic_power(PeriodicEngine(a), 0); });
    std::printf("%6zu %12.2f %12.2f %8.2f %9s %14.2f\n", n, serial, parallel, serial / parallel,
                ps == pp ? "yes" : "no", periodic);
  }
  return 0;
}
