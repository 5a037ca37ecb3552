#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gfr {

using cplx = std::complex<double>;

/// Raised when a caller violates a documented precondition.
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation produces or would produce non-finite values.
struct NumericError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Finite real sample sequence with its sample rate (Hz).
class Signal {
 public:
  Signal(std::vector<double> samples, double sample_rate);

  std::span<const double> samples() const noexcept { return samples_; }
  double sample_rate() const noexcept { return sample_rate_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double operator[](std::size_t i) const { return samples_[i]; }

  /// Moves the samples out, leaving the signal empty.
  std::vector<double> release() && noexcept { return std::move(samples_); }

 private:
  std::vector<double> samples_;
  double sample_rate_;
};

/// Where the 1/N factor of the DFT pair lives.
enum class Convention {
  forward_scaled,  // 1/N on the forward transform
  plain,           // 1/N on the inverse transform
};

enum class SpectrumOrigin { dft, dct2 };

struct Spectrum {
  std::vector<cplx> bins;
  Convention convention = Convention::forward_scaled;
  SpectrumOrigin origin = SpectrumOrigin::dft;

  std::size_t size() const noexcept { return bins.size(); }
};

/// Dense row-major 2D grid.
template <typename T>
struct Grid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  Grid() = default;
  Grid(std::size_t r, std::size_t c, T fill = T{}) : rows(r), cols(c), data(r * c, fill) {}

  T& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<T> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const T> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
  std::size_t size() const noexcept { return data.size(); }
};

using Image = Grid<double>;
using ComplexGrid = Grid<cplx>;

/// Throws InvalidArgument unless the image is non-empty and finite.
void validate_image(const Image& image);

/// Throws InvalidArgument unless every sample is finite.
void require_finite(std::span<const double> values, const char* what);

/// Returns `true` if every value is finite.
inline bool all_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace gfr
