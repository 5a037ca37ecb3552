#include "gfr/types.hpp"

#include <string>

namespace gfr {

Signal::Signal(std::vector<double> samples, double sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
  if (samples_.empty()) throw InvalidArgument("Signal: at least one sample is required");
  if (!(sample_rate_ > 0.0) || !std::isfinite(sample_rate_)) {
    throw InvalidArgument("Signal: sample rate must be positive and finite");
  }
  require_finite(samples_, "Signal");
}

void require_finite(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw InvalidArgument(std::string(what) + ": non-finite value at index " + std::to_string(i));
    }
  }
}

void validate_image(const Image& image) {
  if (image.rows == 0 || image.cols == 0 || image.data.size() != image.rows * image.cols) {
    throw InvalidArgument("Image: grid must be non-empty and rectangular");
  }
  require_finite(image.data, "Image");
}

}  // namespace gfr
