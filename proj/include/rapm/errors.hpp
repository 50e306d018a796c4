#pragma once

#include <stdexcept>
#include <string>

namespace rapm {

// Input that cannot be read at all: malformed CSV/JSON, bad numbers,
// missing required columns. Carries the offending location when known.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input parsed cleanly but violates a structural requirement: duplicate
// player in a lineup, broken mirror row, untagged split possession.
struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad or conflicting configuration and parameter values.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure: singular system, non-positive degrees of freedom,
// degenerate bandwidth.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rapm
