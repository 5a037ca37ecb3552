#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gfr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 2;
inline constexpr int kExitArgument = 3;
inline constexpr int kExitNumeric = 4;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "GFR_OUTPUT_DIR";

const char* version();

/// Runs one command line (without the program name). Status text goes to
/// `out`, warnings and errors to `err`; data only ever goes to files.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses an angle such as "1.5707963", "pi/2", "-pi/20" or "2*pi".
double parse_angle(const std::string& text);

/// Expands "start:step:stop" (each part an angle) into start, start + step, ...
/// up to and including stop.
std::vector<double> parse_sweep(const std::string& text);

}  // namespace gfr::cli
