#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "gfr/types.hpp"

namespace gfr {

/// How the DC and Nyquist bins are phase shifted.
enum class EdgeBinConvention {
  cosine,            // multiply by cos(alpha); the real part cannot carry the quadrature
  complex_rotation,  // multiply by exp(-j alpha); energy is kept in the complex output
};

const char* to_string(EdgeBinConvention edge);

/// Phase applied to each non-negative frequency bin.
///
/// A delay profile maps to alpha_k = omega_k * n_k, where omega_k is the bin's
/// digital frequency in the basis being used (2 pi k / N for the DFT, pi k / N
/// for the DCT-2).
class PhaseProfile {
 public:
  struct Constant {
    double alpha;
  };
  struct PerBin {
    std::vector<double> alphas;
  };
  struct Delay {
    std::vector<double> samples;  // one entry: same delay for every bin
  };

  static PhaseProfile constant(double alpha);
  /// One phase per bin, starting at bin 0.
  static PhaseProfile per_bin(std::vector<double> alphas);
  static PhaseProfile delay(double samples);
  /// One delay per bin, starting at bin 0.
  static PhaseProfile delay(std::vector<double> samples_per_bin);

  /// Phase for bin k whose digital frequency is omega (rad/sample).
  double phase(std::size_t k, double omega) const;

  /// Throws InvalidArgument unless every bin in [0, bins) has a value.
  void require_bins(std::size_t bins) const;

  bool is_constant() const noexcept { return std::holds_alternative<Constant>(kind_); }

 private:
  using Kind = std::variant<Constant, PerBin, Delay>;
  explicit PhaseProfile(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// Discrete PT kernel cos(a) d[n] + sin(a) h[n] for n = 0..N-1, with the
/// Hilbert kernel h[n] = (1 - cos(pi n)) / (pi n), h[0] = 0.
Signal pt_kernel(double alpha, std::size_t length);

/// Exact length-N circular kernel of `pt_dft` for a constant phase:
/// pt_dft(x, alpha)[n] = sum_m x[m] k[(n - m) mod N].
std::vector<double> circular_pt_kernel(double alpha, std::size_t length, EdgeBinConvention edge = EdgeBinConvention::cosine);

/// One-sided DFT multiplier H[k]: the edge bins per `edge`, 2 exp(-j alpha_k)
/// on positive frequencies, 0 on negative frequencies.
std::vector<cplx> pt_dft_mask(std::size_t length, const PhaseProfile& profile, EdgeBinConvention edge);

/// z[n, alpha_k] = idft(dft(x) H). Its real part is the phase-shifted signal.
std::vector<cplx> pt_dft_analytic(const Signal& x, const PhaseProfile& profile,
                                  EdgeBinConvention edge = EdgeBinConvention::cosine);

/// DFT phase transform: Re z[n, alpha_k].
Signal pt_dft(const Signal& x, const PhaseProfile& profile, EdgeBinConvention edge = EdgeBinConvention::cosine);

/// Constant-phase PT evaluated for several phases at once, one output per phase.
std::vector<Signal> pt_dft_sweep(const Signal& x, std::span<const double> alphas);

/// Phase transform at pi/2.
Signal hilbert(const Signal& x);

/// Fourier cosine quadrature transform: sqrt(2/N) sum_k X_c2[k] sin(pi k (2n+1) / 2N).
Signal fcqt(const Signal& x);

/// DCT-2 phase transform: sqrt(2/N) sum_k s_k X_c2[k] cos(pi k (2n+1) / 2N - alpha_k).
/// Per-bin profiles must cover all N DCT bins.
Signal pt_dct(const Signal& x, const PhaseProfile& profile);

}  // namespace gfr
