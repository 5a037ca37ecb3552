#pragma once

#include <stdexcept>

namespace gfr::io {

/// File could not be opened, read, written or parsed.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gfr::io
