#include "gfr/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gfr/phase_transform.hpp"
#include "gfr/spectral.hpp"

namespace gfr {

namespace {

constexpr double kPi = std::numbers::pi;

// Relative size below which the mean is treated as zero when deciding whether
// the t^-mu singularity actually carries weight.
constexpr double kZeroMeanTolerance = 1e-12;

}  // namespace

DelaySpec DelaySpec::uniform(double samples) {
  if (!std::isfinite(samples)) throw InvalidArgument("DelaySpec: delay must be finite");
  return DelaySpec({samples}, true);
}

DelaySpec DelaySpec::per_bin(std::vector<double> samples) {
  if (samples.empty()) throw InvalidArgument("DelaySpec: empty per-bin delay");
  require_finite(samples, "DelaySpec");
  return DelaySpec(std::move(samples), false);
}

double DelaySpec::at_bin(std::size_t k) const {
  if (uniform_) return samples_[0];
  return samples_.at(k - 1);
}

void DelaySpec::require_bins(std::size_t last_bin) const {
  if (!uniform_ && samples_.size() < last_bin) {
    throw InvalidArgument("DelaySpec: per-bin delay covers " + std::to_string(samples_.size()) +
                          " bins, " + std::to_string(last_bin) + " required");
  }
}

Signal frac_delay_dft(const Signal& x, const DelaySpec& delay) {
  const std::size_t n = x.size();
  delay.require_bins(last_nonnegative_bin(n));
  const double len = static_cast<double>(n);
  std::vector<cplx> h(n, cplx{});
  h[0] = 1.0;
  for (std::size_t k = 1; 2 * k < n; ++k) {
    h[k] = 2.0 * std::polar(1.0, -2.0 * kPi * static_cast<double>(k) * delay.at_bin(k) / len);
  }
  if (n % 2 == 0 && n > 1) h[n / 2] = std::polar(1.0, -kPi * delay.at_bin(n / 2));

  const std::vector<cplx> z = apply_spectral_mask(x.samples(), h);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = z[i].real();
  return Signal(std::move(out), x.sample_rate());
}

Signal frac_delay_dct(const Signal& x, double samples) {
  return pt_dct(x, PhaseProfile::delay(samples));
}

double reciprocal_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

DifferintegrationResult frac_differintegrate(const Signal& x, const DifferintegrationOrder& order,
                                             bool include_dc_term) {
  const double mu = order.mu;
  if (!std::isfinite(mu)) throw InvalidArgument("frac_differintegrate: order must be finite");
  const std::size_t n = x.size();
  const double len = static_cast<double>(n);
  const bool physical = order.scaling == DifferintegrationScaling::physical;
  const double rate_scale = physical ? std::pow(x.sample_rate(), mu) : 1.0;
  const cplx rotation = std::polar(1.0, mu * kPi / 2.0);

  std::vector<cplx> h(n, cplx{});
  for (std::size_t k = 1; 2 * k < n; ++k) {
    h[k] = 2.0 * std::pow(2.0 * kPi * static_cast<double>(k) / len, mu) * rate_scale * rotation;
  }
  if (n % 2 == 0 && n > 1) h[n / 2] = std::pow(kPi, mu) * rate_scale * rotation;

  const std::vector<cplx> z = apply_spectral_mask(x.samples(), h);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = z[i].real();

  bool flagged = false;
  if (include_dc_term) {
    double a0 = 0.0;
    double peak = 0.0;
    for (double v : x.samples()) {
      a0 += v;
      peak = std::max(peak, std::abs(v));
    }
    a0 /= len;
    const double rg = reciprocal_gamma(1.0 - mu);
    if (a0 != 0.0 && rg != 0.0) {
      for (std::size_t i = 0; i < n; ++i) {
        const double t = physical ? static_cast<double>(i) / x.sample_rate() : static_cast<double>(i);
        if (i == 0 && mu > 0.0) {
          flagged = std::abs(a0) > kZeroMeanTolerance * peak;
          continue;
        }
        out[i] += a0 * std::pow(t, -mu) * rg;
      }
    }
  }

  if (!all_finite(out)) throw NumericError("frac_differintegrate: non-finite output");
  return {Signal(std::move(out), x.sample_rate()), flagged};
}

}  // namespace gfr
