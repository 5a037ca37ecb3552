#pragma once

#include <vector>

#include "gfr/types.hpp"

namespace gfr {

/// Sub-sample delay, either one value for every bin or one per positive bin.
class DelaySpec {
 public:
  static DelaySpec uniform(double samples);
  /// Element i is the delay applied to bin i + 1, covering bins 1..floor(N/2).
  static DelaySpec per_bin(std::vector<double> samples);

  bool is_uniform() const noexcept { return samples_.size() == 1 && uniform_; }
  /// Delay for positive bin k (k >= 1).
  double at_bin(std::size_t k) const;
  void require_bins(std::size_t last_bin) const;

 private:
  DelaySpec(std::vector<double> samples, bool uniform) : samples_(std::move(samples)), uniform_(uniform) {}
  std::vector<double> samples_;
  bool uniform_;
};

/// x[n - n_k] through a one-sided spectral phase ramp:
/// H[0] = 1, H[k] = 2 exp(-j 2 pi k n_k / N), H[N/2] = exp(-j pi n_k), 0 on negative bins.
Signal frac_delay_dft(const Signal& x, const DelaySpec& delay);

/// Delay through the DCT-2 phase transform with alpha_k = pi k n0 / N.
Signal frac_delay_dct(const Signal& x, double samples);

enum class DifferintegrationScaling {
  physical,    // kernel times Fs^mu: derivatives in signal units per second^mu
  normalized,  // per-sample units, digital frequency 2 pi k / N
};

struct DifferintegrationOrder {
  double mu = 0.0;  // > 0 differentiates, < 0 integrates
  DifferintegrationScaling scaling = DifferintegrationScaling::physical;
};

struct DifferintegrationResult {
  Signal signal;
  /// Set when mu > 0 and the mean is nonzero: the a0 t^-mu term diverges at
  /// n = 0 and that sample's DC contribution was set to zero.
  bool dc_singularity = false;
};

/// Spectral fractional derivative (mu > 0) or integral (mu < 0):
///   a0 t^-mu / Gamma(1 - mu) + Re idft(dft(x) H),
///   H[0] = 0, H[k] = 2 (2 pi k / N)^mu e^{j mu pi / 2}, H[N/2] = pi^mu e^{j mu pi / 2}.
/// t = n / Fs under physical scaling and t = n under normalized scaling.
DifferintegrationResult frac_differintegrate(const Signal& x, const DifferintegrationOrder& order,
                                             bool include_dc_term = true);

/// 1 / Gamma(x), returning exactly 0 at the poles x = 0, -1, -2, ...
double reciprocal_gamma(double x);

}  // namespace gfr
