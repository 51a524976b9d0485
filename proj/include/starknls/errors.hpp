#pragma once

#include <stdexcept>

namespace starknls {

/// Containment or resolution guard violated (boundary mass, spectral tail,
/// wavenumber headroom, step-size bound).
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structural problems with on-disk data (snapshot magic, version, size).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Config text that does not match the schema (unknown keys, bad syntax).
class ConfigSyntaxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Config text that parses but violates a physical-validity constraint.
class ConfigValidityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace starknls
