#include "gfr/phase_transform.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gfr/spectral.hpp"

namespace gfr {

namespace {

constexpr double kPi = std::numbers::pi;

cplx edge_factor(double alpha, EdgeBinConvention edge) {
  return edge == EdgeBinConvention::cosine ? cplx(std::cos(alpha), 0.0) : std::polar(1.0, -alpha);
}

std::vector<double> real_part(const std::vector<cplx>& z) {
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i].real();
  return out;
}

}  // namespace

const char* to_string(EdgeBinConvention edge) {
  return edge == EdgeBinConvention::cosine ? "cosine" : "rotation";
}

PhaseProfile PhaseProfile::constant(double alpha) {
  if (!std::isfinite(alpha)) throw InvalidArgument("PhaseProfile: phase must be finite");
  return PhaseProfile(Constant{alpha});
}

PhaseProfile PhaseProfile::per_bin(std::vector<double> alphas) {
  require_finite(alphas, "PhaseProfile per-bin phases");
  return PhaseProfile(PerBin{std::move(alphas)});
}

PhaseProfile PhaseProfile::delay(double samples) {
  if (!std::isfinite(samples)) throw InvalidArgument("PhaseProfile: delay must be finite");
  return PhaseProfile(Delay{{samples}});
}

PhaseProfile PhaseProfile::delay(std::vector<double> samples_per_bin) {
  if (samples_per_bin.empty()) throw InvalidArgument("PhaseProfile: empty delay profile");
  require_finite(samples_per_bin, "PhaseProfile per-bin delays");
  return PhaseProfile(Delay{std::move(samples_per_bin)});
}

double PhaseProfile::phase(std::size_t k, double omega) const {
  if (const auto* c = std::get_if<Constant>(&kind_)) return c->alpha;
  if (const auto* p = std::get_if<PerBin>(&kind_)) return p->alphas.at(k);
  const auto& d = std::get<Delay>(kind_);
  const double n_k = d.samples.size() == 1 ? d.samples[0] : d.samples.at(k);
  return omega * n_k;
}

void PhaseProfile::require_bins(std::size_t bins) const {
  std::size_t have = bins;
  if (const auto* p = std::get_if<PerBin>(&kind_)) have = p->alphas.size();
  if (const auto* d = std::get_if<Delay>(&kind_); d && d->samples.size() > 1) have = d->samples.size();
  if (have < bins) {
    throw InvalidArgument("PhaseProfile: profile covers " + std::to_string(have) + " bins, " +
                          std::to_string(bins) + " required");
  }
}

Signal pt_kernel(double alpha, std::size_t length) {
  if (length == 0) throw InvalidArgument("pt_kernel: length must be at least 1");
  std::vector<double> k(length, 0.0);
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  k[0] = c;
  for (std::size_t n = 1; n < length; ++n) {
    // (1 - cos(pi n)) is exactly 0 or 2.
    k[n] = n % 2 == 1 ? s * 2.0 / (kPi * static_cast<double>(n)) : 0.0;
  }
  return Signal(std::move(k), 1.0);
}

std::vector<cplx> pt_dft_mask(std::size_t length, const PhaseProfile& profile, EdgeBinConvention edge) {
  if (length == 0) throw InvalidArgument("pt_dft_mask: length must be at least 1");
  profile.require_bins(last_nonnegative_bin(length) + 1);
  const double n = static_cast<double>(length);
  std::vector<cplx> h(length, cplx{});
  h[0] = edge_factor(profile.phase(0, 0.0), edge);
  for (std::size_t k = 1; 2 * k < length; ++k) {
    h[k] = 2.0 * std::polar(1.0, -profile.phase(k, 2.0 * kPi * static_cast<double>(k) / n));
  }
  if (length % 2 == 0 && length > 1) {
    h[length / 2] = edge_factor(profile.phase(length / 2, kPi), edge);
  }
  return h;
}

std::vector<double> circular_pt_kernel(double alpha, std::size_t length, EdgeBinConvention edge) {
  const std::vector<cplx> h = pt_dft_mask(length, PhaseProfile::constant(alpha), edge);
  std::vector<double> k = real_part(idft(Spectrum{h, Convention::forward_scaled, SpectrumOrigin::dft}));
  const double scale = 1.0 / static_cast<double>(length);
  for (auto& v : k) v *= scale;
  return k;
}

std::vector<cplx> pt_dft_analytic(const Signal& x, const PhaseProfile& profile, EdgeBinConvention edge) {
  return apply_spectral_mask(x.samples(), pt_dft_mask(x.size(), profile, edge));
}

Signal pt_dft(const Signal& x, const PhaseProfile& profile, EdgeBinConvention edge) {
  return Signal(real_part(pt_dft_analytic(x, profile, edge)), x.sample_rate());
}

std::vector<Signal> pt_dft_sweep(const Signal& x, std::span<const double> alphas) {
  require_finite(alphas, "pt_dft_sweep phases");
  // For a constant phase, Re(z0 exp(-j a)) = cos(a) x + sin(a) Im(z0), edge bins included.
  const std::vector<cplx> z = analytic_signal(x.samples());
  std::vector<std::vector<double>> columns(alphas.size());
  const auto count = static_cast<std::ptrdiff_t>(alphas.size());

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const double c = std::cos(alphas[static_cast<std::size_t>(i)]);
    const double s = std::sin(alphas[static_cast<std::size_t>(i)]);
    std::vector<double> y(z.size());
    for (std::size_t n = 0; n < z.size(); ++n) y[n] = c * x[n] + s * z[n].imag();
    columns[static_cast<std::size_t>(i)] = std::move(y);
  }

  std::vector<Signal> out;
  out.reserve(columns.size());
  for (auto& col : columns) out.emplace_back(std::move(col), x.sample_rate());
  return out;
}

Signal hilbert(const Signal& x) {
  return pt_dft(x, PhaseProfile::constant(kPi / 2.0), EdgeBinConvention::cosine);
}

Signal fcqt(const Signal& x) {
  const Spectrum c = dct2_forward(x.samples());
  std::vector<cplx> w(c.size());
  // Re(-j X e^{j theta}) = X sin(theta)
  for (std::size_t k = 0; k < c.size(); ++k) w[k] = cplx(0.0, -1.0) * c.bins[k].real();
  return Signal(dct_basis_synthesis(w), x.sample_rate());
}

Signal pt_dct(const Signal& x, const PhaseProfile& profile) {
  const std::size_t n = x.size();
  profile.require_bins(n);
  const Spectrum c = dct2_forward(x.samples());
  std::vector<cplx> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double sigma = k == 0 ? std::numbers::sqrt2 / 2.0 : 1.0;
    const double alpha = profile.phase(k, kPi * static_cast<double>(k) / static_cast<double>(n));
    w[k] = sigma * c.bins[k].real() * std::polar(1.0, -alpha);
  }
  return Signal(dct_basis_synthesis(w), x.sample_rate());
}

}  // namespace gfr
