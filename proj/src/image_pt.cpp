#include "gfr/image_pt.hpp"

#include <cmath>
#include <numbers>

#include "gfr/spectral.hpp"

namespace gfr {

namespace {

constexpr double kPi = std::numbers::pi;

// Signed bin index; false for the Nyquist bin of an even length.
bool signed_bin(std::size_t k, std::size_t n, long long& out) {
  if (n % 2 == 0 && 2 * k == n) return false;
  out = 2 * k < n ? static_cast<long long>(k) : static_cast<long long>(k) - static_cast<long long>(n);
  return true;
}

}  // namespace

const char* to_string(LineConvention line) {
  return line == LineConvention::cosine_on_line ? "cosine" : "rotation";
}

int half_plane_side(std::size_t k1, std::size_t k2, std::size_t rows, std::size_t cols) {
  long long s1 = 0;
  long long s2 = 0;
  if (!signed_bin(k1, rows, s1) || !signed_bin(k2, cols, s2)) return 0;
  // sign(2 pi s1 / R + 2 pi s2 / C) = sign(s1 C + s2 R), exact in integers.
  const long long v = s1 * static_cast<long long>(cols) + s2 * static_cast<long long>(rows);
  return (v > 0) - (v < 0);
}

HalfPlaneMask half_plane_mask(std::size_t rows, std::size_t cols, double alpha, LineConvention line) {
  if (rows == 0 || cols == 0) throw InvalidArgument("half_plane_mask: empty grid");
  if (!std::isfinite(alpha)) throw InvalidArgument("half_plane_mask: phase must be finite");
  const cplx positive = std::polar(1.0, -alpha);
  const cplx negative = std::polar(1.0, alpha);
  const cplx on_line = line == LineConvention::cosine_on_line ? cplx(std::cos(alpha), 0.0) : positive;

  HalfPlaneMask mask{ComplexGrid(rows, cols), line};
  const auto row_count = static_cast<std::ptrdiff_t>(rows);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < row_count; ++r) {
    const auto k1 = static_cast<std::size_t>(r);
    for (std::size_t k2 = 0; k2 < cols; ++k2) {
      const int side = half_plane_side(k1, k2, rows, cols);
      mask.values(k1, k2) = side > 0 ? positive : side < 0 ? negative : on_line;
    }
  }
  return mask;
}

ComplexGrid pt2d_complex(const Image& image, double alpha, LineConvention line) {
  ComplexGrid spectrum = dft2d(image);
  const HalfPlaneMask mask = half_plane_mask(image.rows, image.cols, alpha, line);
  for (std::size_t i = 0; i < spectrum.size(); ++i) spectrum.data[i] *= mask.values.data[i];
  return idft2d_complex(spectrum);
}

Image pt2d(const Image& image, double alpha, LineConvention line) {
  const ComplexGrid z = pt2d_complex(image, alpha, line);
  Image out(z.rows, z.cols);
  for (std::size_t i = 0; i < z.size(); ++i) out.data[i] = z.data[i].real();
  return out;
}

Image hilbert2d(const Image& image) { return pt2d(image, kPi / 2.0); }

ComplexGrid analytic2d(const Image& image) {
  const Image quadrature = hilbert2d(image);
  ComplexGrid z(image.rows, image.cols);
  for (std::size_t i = 0; i < z.size(); ++i) z.data[i] = cplx(image.data[i], quadrature.data[i]);
  return z;
}

Image circular_kernel2d(std::size_t rows, std::size_t cols, double alpha) {
  const HalfPlaneMask mask = half_plane_mask(rows, cols, alpha);
  const ComplexGrid k = idft2d_complex(mask.values);
  Image out(rows, cols);
  const double scale = 1.0 / static_cast<double>(rows * cols);
  for (std::size_t i = 0; i < k.size(); ++i) out.data[i] = k.data[i].real() * scale;
  return out;
}

double kernel2d_closed_form(long m, long n) {
  auto alternating = [](long v) { return v % 2 == 0 ? 1.0 : -1.0; };  // cos(pi v)
  if (m == 0 && n == 0) return 0.0;
  if (m == n) return 1.0 / (kPi * static_cast<double>(m));
  if (n == 0) return -alternating(m) / (kPi * static_cast<double>(m));
  if (m == 0) return -alternating(n) / (kPi * static_cast<double>(n));
  return 0.0;
}

}  // namespace gfr
