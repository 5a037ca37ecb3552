#include "gfr/spectral.hpp"

#include <cmath>
#include <numbers>

#include "gfr/fft.hpp"

namespace gfr {

namespace {

void require_nonempty(std::size_t n, const char* what) {
  if (n == 0) throw InvalidArgument(std::string(what) + ": empty input");
}

Spectrum finish_forward(std::vector<cplx> bins, Convention convention) {
  if (convention == Convention::forward_scaled) {
    const double scale = 1.0 / static_cast<double>(bins.size());
    for (auto& b : bins) b *= scale;
  }
  return Spectrum{std::move(bins), convention, SpectrumOrigin::dft};
}

}  // namespace

Spectrum dft(std::span<const double> x, Convention convention) {
  require_nonempty(x.size(), "dft");
  const std::vector<cplx> z(x.begin(), x.end());
  return finish_forward(FftPlan(x.size()).forward(z), convention);
}

Spectrum dft(std::span<const cplx> x, Convention convention) {
  require_nonempty(x.size(), "dft");
  return finish_forward(FftPlan(x.size()).forward(x), convention);
}

std::vector<cplx> idft(const Spectrum& spectrum) {
  require_nonempty(spectrum.size(), "idft");
  if (spectrum.origin != SpectrumOrigin::dft) {
    throw InvalidArgument("idft: spectrum was not produced by a DFT");
  }
  std::vector<cplx> out = FftPlan(spectrum.size()).backward(spectrum.bins);
  if (spectrum.convention == Convention::plain) {
    const double scale = 1.0 / static_cast<double>(out.size());
    for (auto& v : out) v *= scale;
  }
  return out;
}

Spectrum dct2_forward(std::span<const double> x) {
  require_nonempty(x.size(), "dct2_forward");
  const std::size_t n = x.size();
  std::vector<cplx> padded(2 * n, cplx{});
  for (std::size_t i = 0; i < n; ++i) padded[i] = x[i];
  const std::vector<cplx> v = FftPlan(2 * n).forward(padded);

  const double pi = std::numbers::pi;
  const double norm = std::sqrt(2.0 / static_cast<double>(n));
  std::vector<cplx> bins(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = -pi * static_cast<double>(k) / (2.0 * static_cast<double>(n));
    const double sigma = k == 0 ? std::numbers::sqrt2 / 2.0 : 1.0;
    bins[k] = norm * sigma * (std::polar(1.0, a) * v[k]).real();
  }
  return Spectrum{std::move(bins), Convention::forward_scaled, SpectrumOrigin::dct2};
}

std::vector<double> dct_basis_synthesis(std::span<const cplx> weights) {
  require_nonempty(weights.size(), "dct_basis_synthesis");
  const std::size_t n = weights.size();
  const double pi = std::numbers::pi;
  std::vector<cplx> d(2 * n, cplx{});
  for (std::size_t k = 0; k < n; ++k) {
    d[k] = weights[k] * std::polar(1.0, pi * static_cast<double>(k) / (2.0 * static_cast<double>(n)));
  }
  const std::vector<cplx> y = FftPlan(2 * n).backward(d);
  const double norm = std::sqrt(2.0 / static_cast<double>(n));
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = norm * y[i].real();
  return out;
}

std::vector<double> dct2_inverse(const Spectrum& spectrum) {
  require_nonempty(spectrum.size(), "dct2_inverse");
  if (spectrum.origin != SpectrumOrigin::dct2) {
    throw InvalidArgument("dct2_inverse: spectrum was not produced by a DCT-2");
  }
  std::vector<cplx> w(spectrum.bins);
  w[0] *= std::numbers::sqrt2 / 2.0;
  return dct_basis_synthesis(w);
}

namespace {

// Transforms every row, then every column, of `grid` in place.
void fft2d_in_place(ComplexGrid& grid, bool inverse) {
  const FftPlan row_plan(grid.cols);
  const FftPlan col_plan(grid.rows);
  const auto rows = static_cast<std::ptrdiff_t>(grid.rows);
  const auto cols = static_cast<std::ptrdiff_t>(grid.cols);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    auto row = grid.row(static_cast<std::size_t>(r));
    inverse ? row_plan.backward(row, row) : row_plan.forward(row, row);
  }

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < cols; ++c) {
    std::vector<cplx> column(grid.rows);
    for (std::size_t r = 0; r < grid.rows; ++r) column[r] = grid(r, static_cast<std::size_t>(c));
    inverse ? col_plan.backward(column, column) : col_plan.forward(column, column);
    for (std::size_t r = 0; r < grid.rows; ++r) grid(r, static_cast<std::size_t>(c)) = column[r];
  }
}

}  // namespace

ComplexGrid dft2d(const Image& image) {
  validate_image(image);
  ComplexGrid grid(image.rows, image.cols);
  for (std::size_t i = 0; i < image.size(); ++i) grid.data[i] = image.data[i];
  fft2d_in_place(grid, false);
  const double scale = 1.0 / static_cast<double>(image.size());
  for (auto& v : grid.data) v *= scale;
  return grid;
}

ComplexGrid idft2d_complex(const ComplexGrid& spectrum) {
  if (spectrum.rows == 0 || spectrum.cols == 0) throw InvalidArgument("idft2d: empty grid");
  ComplexGrid grid = spectrum;
  fft2d_in_place(grid, true);
  return grid;
}

Image idft2d(const ComplexGrid& spectrum) {
  const ComplexGrid grid = idft2d_complex(spectrum);
  Image out(grid.rows, grid.cols);
  for (std::size_t i = 0; i < grid.size(); ++i) out.data[i] = grid.data[i].real();
  return out;
}

std::vector<cplx> apply_spectral_mask(std::span<const double> x, std::span<const cplx> mask) {
  if (mask.size() != x.size()) throw InvalidArgument("spectral mask length does not match signal");
  Spectrum s = dft(x);
  for (std::size_t k = 0; k < s.size(); ++k) s.bins[k] *= mask[k];
  return idft(s);
}

std::vector<cplx> analytic_signal(std::span<const double> x) {
  require_nonempty(x.size(), "analytic_signal");
  require_finite(x, "analytic_signal");
  const std::size_t n = x.size();
  std::vector<cplx> mask(n, cplx{});
  mask[0] = 1.0;
  for (std::size_t k = 1; 2 * k < n; ++k) mask[k] = 2.0;
  if (n % 2 == 0) mask[n / 2] = 1.0;
  return apply_spectral_mask(x, mask);
}

}  // namespace gfr
