#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gfr/types.hpp"

namespace gfr {

/// Generalized Morse wavelet, Psi(w) = A w^beta exp(-w^gamma) for w > 0 and
/// zero otherwise, with A chosen so that the peak value is 2.
class WaveletSpec {
 public:
  static WaveletSpec generalized_morse(double beta = 20.0, double gamma = 3.0);

  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }
  /// (beta / gamma)^(1 / gamma), in radians per unit of scale.
  double peak_frequency() const noexcept { return peak_; }

  double operator()(double omega) const;

 private:
  WaveletSpec(double beta, double gamma);
  double beta_;
  double gamma_;
  double peak_;
};

std::vector<double> morse_spectrum(const WaveletSpec& spec, std::span<const double> omega);

/// Logarithmically spaced scales, in samples. A scale s places the wavelet
/// peak at digital frequency peak_frequency / s.
struct ScaleGrid {
  std::vector<double> scales;
  int voices_per_octave = 10;

  /// Trapezoidal weights for the integral over ln(s).
  std::vector<double> log_weights() const;
};

/// Scales whose peak periods run from `min_period` to `max_period` samples.
ScaleGrid make_scale_grid(const WaveletSpec& spec, double min_period, double max_period, int voices_per_octave);

/// Default grid for a signal of `length` samples: peak periods from 2 samples
/// up to a quarter of the reflection-extended analysis length.
ScaleGrid default_scale_grid(const WaveletSpec& spec, std::size_t length, int voices_per_octave = 10);

/// Length of the reflection-extended buffer the transform runs on.
std::size_t analysis_length(std::size_t length);

struct Scalogram {
  ComplexGrid coeffs;  // scales x time
  ScaleGrid grid;
  WaveletSpec spec;
  double sample_rate;
  /// Per scale: the wavelet still carries weight at the Nyquist frequency.
  std::vector<bool> aliased;

  std::size_t aliased_count() const;
};

/// Analytic wavelet transform with L2-normalized daughters:
///   W(s, n) = idft(dft(x) sqrt(s) Psi(s w_k)).
/// The signal is reflected at both ends before transforming and the result is
/// trimmed back to the original length. Scales are computed in parallel.
Scalogram awt(const Signal& x, const ScaleGrid& grid, const WaveletSpec& spec);

/// Integral of Psi(w) / w over w > 0: the reconstruction constant of the
/// single-integral inverse. Throws NumericError if the integral diverges.
double cpsi_delta(const WaveletSpec& spec);

/// Multiplies every coefficient by exp(-j alpha).
Scalogram rotate(const Scalogram& scalogram, double alpha);

/// z(n) = (2 / C) sum_j W(s_j, n) s_j^{-1/2} dln(s)_j.
/// The s^{-1/2} factor turns the stored L2-normalized coefficients into the
/// L1 normalization under which the single integral inverts exactly.
std::vector<cplx> reconstruct_analytic(const Scalogram& scalogram);

struct WptResult {
  Signal signal;
  /// Relative L2 error of the alpha = 0 reconstruction over the central 90%.
  double reconstruction_residual = 0.0;
  bool quality_warning = false;
};

/// Residual above which a reconstruction is reported as poor.
inline constexpr double kWptResidualWarning = 0.02;

/// Wavelet phase transform: Re(z(t) exp(-j alpha)) from the rotated scalogram.
WptResult wpt(const Signal& x, double alpha, const ScaleGrid& grid, const WaveletSpec& spec);
/// Wavelet quadrature transform, the pi/2 case.
WptResult wqt(const Signal& x, const ScaleGrid& grid, const WaveletSpec& spec);

/// Central fraction of [0, n) used for interior error measures: [n/20, n - n/20).
struct InteriorRange {
  std::size_t begin;
  std::size_t end;
};
InteriorRange interior_range(std::size_t n, double keep_fraction = 0.9);

}  // namespace gfr
