#pragma once

#include <stdexcept>
#include <string>

namespace gpchow {

/// Bad user input: malformed type descriptors, out-of-range indices,
/// incompatible varieties, wrong coefficient domain.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical invariant failed (inexact division, nonzero elimination
/// remainder, rank deficiency, non-integral solution). These indicate a bug
/// and are never swallowed.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A restriction table is not built deep enough for the requested operation.
class DepthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cache file does not match the variety/ordering it is loaded for.
class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gpchow
