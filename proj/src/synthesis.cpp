#include "gfr/synthesis.hpp"

#include <cmath>
#include <string>

namespace gfr {

void FourierSeriesCoeffs::validate() const {
  if (!std::isfinite(a0)) throw InvalidArgument("FourierSeriesCoeffs: a0 must be finite");
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw InvalidArgument("FourierSeriesCoeffs: omega0 must be positive");
  }
  for (const Harmonic& h : harmonics) {
    if (!(h.amplitude >= 0.0) || !std::isfinite(h.amplitude) || !std::isfinite(h.phase)) {
      throw InvalidArgument("FourierSeriesCoeffs: amplitudes must be finite and non-negative, phases finite");
    }
  }
}

ModulationSpec ModulationSpec::identity() {
  return {[](std::size_t, double) { return 1.0; }, [](std::size_t, double) { return 0.0; }};
}

ModulationSpec ModulationSpec::amplitude_modulated(double carrier_level, std::function<double(double)> message) {
  return {[carrier_level, message = std::move(message)](std::size_t k, double t) {
            return k == 1 ? carrier_level + message(t) : 1.0;
          },
          [](std::size_t, double) { return 0.0; }};
}

ModulationSpec ModulationSpec::angle_modulated(std::function<double(double)> message) {
  return {[](std::size_t, double) { return 1.0; },
          [message = std::move(message)](std::size_t k, double t) { return k == 1 ? message(t) : 0.0; }};
}

Signal gfr_synthesize(const FourierSeriesCoeffs& coeffs, const ModulationSpec& mods,
                      std::size_t harmonic_count, std::span<const double> t_grid) {
  coeffs.validate();
  if (harmonic_count > coeffs.harmonics.size()) {
    throw InvalidArgument("gfr_synthesize: harmonic count exceeds the supplied coefficients");
  }
  if (t_grid.empty()) throw InvalidArgument("gfr_synthesize: empty time grid");
  require_finite(t_grid, "gfr_synthesize time grid");
  if (!mods.amplitude || !mods.phase) throw InvalidArgument("gfr_synthesize: modulation functions must be set");

  auto checked = [](double v, std::size_t k, double t, const char* which) {
    if (!std::isfinite(v)) {
      throw NumericError(std::string("gfr_synthesize: ") + which + " modulation is non-finite at k=" +
                         std::to_string(k) + ", t=" + std::to_string(t));
    }
    return v;
  };

  std::vector<double> out(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    double acc = coeffs.a0 * checked(mods.amplitude(0, t), 0, t, "amplitude") *
                 std::cos(checked(mods.phase(0, t), 0, t, "phase"));
    for (std::size_t k = 1; k <= harmonic_count; ++k) {
      const Harmonic& h = coeffs.harmonics[k - 1];
      const double c = checked(mods.amplitude(k, t), k, t, "amplitude");
      const double a = checked(mods.phase(k, t), k, t, "phase");
      acc += c * h.amplitude * std::cos(static_cast<double>(k) * coeffs.omega0 * t + h.phase - a);
    }
    out[i] = acc;
  }

  double rate = 1.0;
  if (t_grid.size() > 1 && t_grid[1] > t_grid[0]) rate = 1.0 / (t_grid[1] - t_grid[0]);
  return Signal(std::move(out), rate);
}

}  // namespace gfr
