#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gfr/types.hpp"

namespace gfr {

/// One harmonic of a Fourier series: r cos(k w0 t + phi).
struct Harmonic {
  double amplitude = 0.0;  // r_k >= 0
  double phase = 0.0;      // phi_k, radians
};

/// x(t) = a0 + sum_k r_k cos(k w0 t + phi_k); harmonics[0] is k = 1.
struct FourierSeriesCoeffs {
  double a0 = 0.0;
  std::vector<Harmonic> harmonics;
  double omega0 = 1.0;  // rad/s

  void validate() const;
};

/// Per-harmonic amplitude and phase modulation functions. Index k = 0 is the
/// DC term; c(0, t) and alpha(0, t) play the roles of c0(t) and alpha0(t).
struct ModulationSpec {
  std::function<double(std::size_t k, double t)> amplitude;
  std::function<double(std::size_t k, double t)> phase;

  /// c_k = 1, alpha_k = 0: the plain truncated Fourier series.
  static ModulationSpec identity();
  /// Amplitude modulation of the first harmonic: c_1(t) = carrier_level + message(t).
  static ModulationSpec amplitude_modulated(double carrier_level, std::function<double(double)> message);
  /// Angle modulation of the first harmonic: alpha_1(t) = message(t).
  static ModulationSpec angle_modulated(std::function<double(double)> message);
};

/// Evaluates the generalized Fourier representation
///   a0 c0(t) cos(alpha0(t)) + sum_{k=1..K} c_k(t) r_k cos(k w0 t + phi_k - alpha_k(t))
/// at every point of `t_grid`. The returned signal's sample rate is taken from
/// the spacing of the first two grid points (1 Hz for a single point).
///
/// Throws NumericError when a modulation function returns a non-finite value.
Signal gfr_synthesize(const FourierSeriesCoeffs& coeffs, const ModulationSpec& mods,
                      std::size_t harmonic_count, std::span<const double> t_grid);

}  // namespace gfr
