#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "gfr/types.hpp"

namespace gfr {

/// Unnormalized complex FFT of a fixed length.
///
/// Lengths whose prime factors are all small run through a recursive
/// mixed-radix decimation-in-time kernel; anything with a larger prime factor
/// is routed through Bluestein's chirp-z algorithm on a power-of-two plan.
/// A plan is immutable after construction, so one instance may be shared
/// between threads.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  /// out[k] = sum_n in[n] exp(-j 2 pi k n / N)
  void forward(std::span<const cplx> in, std::span<cplx> out) const;
  /// out[n] = sum_k in[k] exp(+j 2 pi k n / N)
  void backward(std::span<const cplx> in, std::span<cplx> out) const;

  std::vector<cplx> forward(std::span<const cplx> in) const;
  std::vector<cplx> backward(std::span<const cplx> in) const;

  bool uses_bluestein() const noexcept { return bluestein_ != nullptr; }

 private:
  struct Bluestein;

  void execute(std::span<const cplx> in, std::span<cplx> out, bool inverse) const;
  void recurse(const cplx* in, std::size_t stride, cplx* out, std::size_t n,
               std::size_t level, bool inverse, std::vector<cplx>& scratch) const;
  cplx root(std::size_t index, bool inverse) const {
    const cplx w = roots_[index];
    return inverse ? std::conj(w) : w;
  }

  std::size_t n_;
  std::vector<std::size_t> factors_;
  std::vector<cplx> roots_;  // exp(-j 2 pi i / N)
  std::shared_ptr<const Bluestein> bluestein_;
};

}  // namespace gfr
