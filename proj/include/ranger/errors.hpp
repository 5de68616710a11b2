#pragma once

#include <stdexcept>
#include <string>

namespace ranger {

/// Invalid configuration or parameter values detected before any work is done.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string &what) : std::runtime_error(what) {}
};

/// Malformed input data (config files, event logs). Message carries the
/// offending line or record number.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string &what) : std::runtime_error(what) {}
};

/// Filesystem failures: unwritable directories, unreadable files.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace ranger
