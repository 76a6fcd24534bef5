#pragma once

#include <stdexcept>
#include <string>

namespace fairtree {

// Invalid run configuration: bad flag values, malformed column specs,
// inconsistent GrowConfig. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Bad input data: unreadable files, schema mismatches, non-binary targets,
// malformed model documents. Maps to CLI exit code 3.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fairtree
