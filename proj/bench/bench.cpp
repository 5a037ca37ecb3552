// Timing of the parallel kernels at 1 thread vs all threads, and of the FFT
// against the O(N^2) direct sum.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gfr/image_pt.hpp"
#include "gfr/phase_transform.hpp"
#include "gfr/spectral.hpp"
#include "gfr/wavelet.hpp"
#include "reference/reference.hpp"

using namespace gfr;

namespace {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void threads_row(const char* name, int reps, const std::function<void()>& f) {
  const int all = max_threads();
  set_threads(1);
  const double serial = best_of(reps, f);
  set_threads(all);
  const double parallel = best_of(reps, f);
  std::printf("%-28s %10.4f %10.4f %8.2fx  (%d threads)\n", name, serial, parallel, serial / parallel, all);
}

}  // namespace

int main() {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 1.0);
  auto noise = [&](std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = g(rng);
    return v;
  };

  std::printf("%-28s %10s %10s %9s\n", "kernel", "1 thread", "all", "speedup");
  const Signal x(noise(5000), 1000.0);
  const auto spec = WaveletSpec::generalized_morse();
  const ScaleGrid grid = default_scale_grid(spec, x.size());
  threads_row("awt N=5000", 3, [&] { awt(x, grid, spec); });

  std::vector<double> alphas;
  for (int i = 0; i <= 40; ++i) alphas.push_back(i * std::numbers::pi / 20.0);
  threads_row("pt_dft_sweep N=5000 x41", 5, [&] { pt_dft_sweep(x, alphas); });

  Image img(512, 512);
  img.data = noise(img.size());
  threads_row("dft2d 512x512", 3, [&] { dft2d(img); });
  threads_row("pt2d 512x512", 3, [&] { pt2d(img, 0.7); });

  std::printf("\n%-10s %12s %12s %9s\n", "N", "fft [s]", "direct [s]", "ratio");
  for (std::size_t n : {256, 1000, 1024, 4096, 4099}) {
    const auto v = noise(n);
    const double fast = best_of(5, [&] { dft(v); });
    const double slow = best_of(1, [&] { reference::direct_dft(v); });
    std::printf("%-10zu %12.6f %12.6f %8.0fx\n", n, fast, slow, slow / fast);
  }
  return 0;
}
