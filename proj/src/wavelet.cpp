#include "gfr/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gfr/fft.hpp"
#include "gfr/spectral.hpp"

namespace gfr {

namespace {

constexpr double kPi = std::numbers::pi;

// Psi(s pi) / max Psi above this marks a scale as truncated by the Nyquist limit.
constexpr double kAliasThreshold = 1e-3;

}  // namespace

WaveletSpec::WaveletSpec(double beta, double gamma)
    : beta_(beta), gamma_(gamma), peak_(std::pow(beta / gamma, 1.0 / gamma)) {}

WaveletSpec WaveletSpec::generalized_morse(double beta, double gamma) {
  if (!(beta > 0.0) || !(gamma > 0.0) || !std::isfinite(beta) || !std::isfinite(gamma)) {
    throw InvalidArgument("generalized Morse wavelet needs positive finite beta and gamma");
  }
  return WaveletSpec(beta, gamma);
}

double WaveletSpec::operator()(double omega) const {
  if (!(omega > 0.0)) return 0.0;
  // 2 (w / wp)^beta exp(wp^gamma - w^gamma), evaluated in the log domain.
  const double log_value =
      beta_ * std::log(omega / peak_) - (std::pow(omega, gamma_) - std::pow(peak_, gamma_));
  return 2.0 * std::exp(log_value);
}

std::vector<double> morse_spectrum(const WaveletSpec& spec, std::span<const double> omega) {
  require_finite(omega, "morse_spectrum");
  std::vector<double> out(omega.size());
  std::transform(omega.begin(), omega.end(), out.begin(), [&](double w) { return spec(w); });
  return out;
}

std::vector<double> ScaleGrid::log_weights() const {
  const double step = std::log(2.0) / static_cast<double>(voices_per_octave);
  std::vector<double> w(scales.size(), step);
  if (w.size() > 1) {
    w.front() *= 0.5;
    w.back() *= 0.5;
  }
  return w;
}

ScaleGrid make_scale_grid(const WaveletSpec& spec, double min_period, double max_period, int voices_per_octave) {
  if (voices_per_octave < 1) throw InvalidArgument("scale grid: voices per octave must be positive");
  if (!(min_period > 0.0) || !(max_period >= min_period) || !std::isfinite(max_period)) {
    throw InvalidArgument("scale grid: need 0 < min_period <= max_period");
  }
  const double s_min = spec.peak_frequency() * min_period / (2.0 * kPi);
  const double octaves = std::log2(max_period / min_period);
  const auto count = static_cast<std::size_t>(std::floor(octaves * voices_per_octave + 1e-9)) + 1;
  ScaleGrid grid;
  grid.voices_per_octave = voices_per_octave;
  grid.scales.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    grid.scales[j] = s_min * std::exp2(static_cast<double>(j) / voices_per_octave);
  }
  return grid;
}

std::size_t analysis_length(std::size_t length) { return 3 * length; }

ScaleGrid default_scale_grid(const WaveletSpec& spec, std::size_t length, int voices_per_octave) {
  if (length == 0) throw InvalidArgument("default_scale_grid: empty signal");
  const double max_period = std::max(2.0, static_cast<double>(analysis_length(length)) / 4.0);
  return make_scale_grid(spec, 2.0, max_period, voices_per_octave);
}

std::size_t Scalogram::aliased_count() const {
  return static_cast<std::size_t>(std::count(aliased.begin(), aliased.end(), true));
}

Scalogram awt(const Signal& x, const ScaleGrid& grid, const WaveletSpec& spec) {
  if (grid.scales.empty()) throw InvalidArgument("awt: empty scale grid");
  for (double s : grid.scales) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("awt: scales must be positive");
  }
  const std::size_t n = x.size();
  const std::size_t m = analysis_length(n);

  std::vector<double> extended;
  extended.reserve(m);
  extended.insert(extended.end(), x.samples().rbegin(), x.samples().rend());
  extended.insert(extended.end(), x.samples().begin(), x.samples().end());
  extended.insert(extended.end(), x.samples().rbegin(), x.samples().rend());
  const Spectrum spectrum = dft(extended);

  const FftPlan plan(m);
  Scalogram out{ComplexGrid(grid.scales.size(), n), grid, spec, x.sample_rate(),
                std::vector<bool>(grid.scales.size(), false)};
  const auto scale_count = static_cast<std::ptrdiff_t>(grid.scales.size());

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t j = 0; j < scale_count; ++j) {
    const double s = grid.scales[static_cast<std::size_t>(j)];
    const double root_s = std::sqrt(s);
    std::vector<cplx> buf(m, cplx{});
    for (std::size_t k = 1; 2 * k <= m; ++k) {
      const double omega = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m);
      buf[k] = spectrum.bins[k] * (root_s * spec(s * omega));
    }
    plan.backward(buf, buf);
    auto row = out.coeffs.row(static_cast<std::size_t>(j));
    std::copy(buf.begin() + static_cast<std::ptrdiff_t>(n), buf.begin() + static_cast<std::ptrdiff_t>(2 * n),
              row.begin());
  }

  for (std::size_t j = 0; j < grid.scales.size(); ++j) {
    out.aliased[j] = spec(grid.scales[j] * kPi) > kAliasThreshold * 2.0;
  }
  return out;
}

double cpsi_delta(const WaveletSpec& spec) {
  // Substituting w = e^u turns the integral of Psi(w) / w into the integral of
  // Psi(e^u) du, smooth and rapidly decaying at both ends, where the
  // trapezoidal rule converges geometrically.
  const double u_peak = std::log(spec.peak_frequency());
  const double wp_gamma = spec.beta() / spec.gamma();
  const double u_lo = u_peak - (wp_gamma + 50.0) / spec.beta();
  double u_hi = u_peak;
  while (spec(std::exp(u_hi)) > 1e-22) u_hi += 0.05;

  auto integrand = [&](double u) { return spec(std::exp(u)); };

  double h = (u_hi - u_lo) / 64.0;
  double sum = 0.5 * (integrand(u_lo) + integrand(u_hi));
  for (int i = 1; i < 64; ++i) sum += integrand(u_lo + i * h);
  double estimate = sum * h;
  for (int level = 0; level < 24; ++level) {
    double added = 0.0;
    const std::size_t points = static_cast<std::size_t>(std::llround((u_hi - u_lo) / h));
    for (std::size_t i = 0; i < points; ++i) added += integrand(u_lo + (static_cast<double>(i) + 0.5) * h);
    sum += added;
    h *= 0.5;
    const double refined = sum * h;
    const bool converged = std::abs(refined - estimate) <= 1e-13 * std::abs(refined);
    estimate = refined;
    if (converged && level >= 2) break;
  }
  if (!std::isfinite(estimate) || !(estimate > 0.0)) {
    throw NumericError("cpsi_delta: reconstruction integral does not converge");
  }
  return estimate;
}

Scalogram rotate(const Scalogram& scalogram, double alpha) {
  Scalogram out = scalogram;
  const cplx r = std::polar(1.0, -alpha);
  for (auto& c : out.coeffs.data) c *= r;
  return out;
}

std::vector<cplx> reconstruct_analytic(const Scalogram& scalogram) {
  const std::vector<double> dlog = scalogram.grid.log_weights();
  std::vector<double> weight(dlog.size());
  const double scale = 2.0 / cpsi_delta(scalogram.spec);
  for (std::size_t j = 0; j < weight.size(); ++j) {
    weight[j] = scale * dlog[j] / std::sqrt(scalogram.grid.scales[j]);
  }

  const std::size_t n = scalogram.coeffs.cols;
  std::vector<cplx> z(n, cplx{});
  const auto count = static_cast<std::ptrdiff_t>(n);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    cplx acc{};
    for (std::size_t j = 0; j < weight.size(); ++j) {
      acc += scalogram.coeffs(j, static_cast<std::size_t>(i)) * weight[j];
    }
    z[static_cast<std::size_t>(i)] = acc;
  }
  return z;
}

InteriorRange interior_range(std::size_t n, double keep_fraction) {
  const auto margin = static_cast<std::size_t>(std::floor(static_cast<double>(n) * (1.0 - keep_fraction) / 2.0));
  return {margin, n - margin};
}

WptResult wpt(const Signal& x, double alpha, const ScaleGrid& grid, const WaveletSpec& spec) {
  if (!std::isfinite(alpha)) throw InvalidArgument("wpt: phase must be finite");
  const std::vector<cplx> z = reconstruct_analytic(awt(x, grid, spec));

  const auto [begin, end] = interior_range(x.size());
  double err = 0.0;
  double ref = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    err += std::norm(z[i].real() - x[i]);
    ref += x[i] * x[i];
  }
  const double residual = ref > 0.0 ? std::sqrt(err / ref) : std::sqrt(err);

  const cplx r = std::polar(1.0, -alpha);
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = (z[i] * r).real();
  if (!all_finite(out)) throw NumericError("wpt: non-finite output");
  return {Signal(std::move(out), x.sample_rate()), residual, residual > kWptResidualWarning};
}

WptResult wqt(const Signal& x, const ScaleGrid& grid, const WaveletSpec& spec) {
  return wpt(x, kPi / 2.0, grid, spec);
}

}  // namespace gfr
