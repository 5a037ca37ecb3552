#pragma once

#include <span>
#include <vector>

#include "gfr/types.hpp"

namespace gfr {

// DFT pair. The default convention puts 1/N on the forward transform:
//   X[k] = (1/N) sum_n x[n] exp(-j 2 pi k n / N),   x[n] = sum_k X[k] exp(j 2 pi k n / N)
// Every length is supported in O(N log N).

Spectrum dft(std::span<const double> x, Convention convention = Convention::forward_scaled);
Spectrum dft(std::span<const cplx> x, Convention convention = Convention::forward_scaled);

/// Inverse of `dft` under the convention recorded in the spectrum.
/// Throws InvalidArgument when handed a DCT spectrum.
std::vector<cplx> idft(const Spectrum& spectrum);

/// Orthonormal DCT-2:
///   X[k] = sqrt(2/N) s_k sum_n x[n] cos(pi k (2n+1) / 2N),  s_0 = 1/sqrt(2), s_k = 1 otherwise.
/// Bins are real; they are stored as complex values with zero imaginary part.
Spectrum dct2_forward(std::span<const double> x);
std::vector<double> dct2_inverse(const Spectrum& spectrum);

/// y[n] = sqrt(2/N) Re sum_k w[k] exp(j pi k (2n+1) / 2N), evaluated with one 2N-point FFT.
///
/// The cosine-basis resynthesis behind the inverse DCT, the quadrature
/// transform and the DCT phase transform.
std::vector<double> dct_basis_synthesis(std::span<const cplx> weights);

/// 2D DFT with 1/(rows*cols) on the forward transform. Rows, then columns.
ComplexGrid dft2d(const Image& image);
ComplexGrid idft2d_complex(const ComplexGrid& spectrum);
/// Real part of the inverse 2D DFT.
Image idft2d(const ComplexGrid& spectrum);

/// z = x + j hilbert(x): the one-sided spectrum (DC and Nyquist kept once,
/// positive bins doubled, negative bins zeroed).
std::vector<cplx> analytic_signal(std::span<const double> x);

/// idft(dft(x) * mask), the shared path of every spectral multiplier.
std::vector<cplx> apply_spectral_mask(std::span<const double> x, std::span<const cplx> mask);

/// Index of the last non-negative-frequency bin, floor(N/2).
inline std::size_t last_nonnegative_bin(std::size_t n) { return n / 2; }

}  // namespace gfr
