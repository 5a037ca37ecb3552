#pragma once

#include "gfr/types.hpp"

namespace gfr {

/// Treatment of bins on the line W1 + W2 = 0 (DC included) and, for even
/// dimensions, of the Nyquist row and column, whose sign is ambiguous.
enum class LineConvention {
  cosine_on_line,    // cos(alpha)
  rotation_on_line,  // exp(-j alpha)
};

const char* to_string(LineConvention line);

/// Frequency-domain 2D phase shifter over DFT bins: exp(-j alpha) where
/// W1 + W2 > 0, exp(+j alpha) where W1 + W2 < 0, and the line convention
/// elsewhere. Bin k maps to W = 2 pi k / N for k <= N/2 and 2 pi (k - N) / N
/// otherwise.
struct HalfPlaneMask {
  ComplexGrid values;
  LineConvention line_convention = LineConvention::cosine_on_line;
};

/// Sign of W1 + W2 for bin (k1, k2) of a rows x cols grid: +1, -1, or 0 for the line set.
int half_plane_side(std::size_t k1, std::size_t k2, std::size_t rows, std::size_t cols);

HalfPlaneMask half_plane_mask(std::size_t rows, std::size_t cols, double alpha,
                              LineConvention line = LineConvention::cosine_on_line);

/// idft2d(dft2d(g) H) before taking the real part.
ComplexGrid pt2d_complex(const Image& image, double alpha, LineConvention line = LineConvention::cosine_on_line);

/// 2D phase transform Re(idft2d(dft2d(g) H)) = cos(a) g + sin(a) pt2d(g, pi/2).
Image pt2d(const Image& image, double alpha, LineConvention line = LineConvention::cosine_on_line);

/// 2D Hilbert transform, pt2d at pi/2.
Image hilbert2d(const Image& image);

/// z = g + j hilbert2d(g); its spectrum vanishes where W1 + W2 < 0.
ComplexGrid analytic2d(const Image& image);

/// Exact circular kernel of pt2d for a constant phase:
/// pt2d(g)[m, n] = sum g[m', n'] k[(m - m') mod R, (n - n') mod C].
Image circular_kernel2d(std::size_t rows, std::size_t cols, double alpha);

/// Closed-form infinite-extent 2D Hilbert kernel h[m, n]: support on the
/// diagonal m = n and on both axes.
double kernel2d_closed_form(long m, long n);

}  // namespace gfr
