#pragma once

#include <stdexcept>
#include <string>

namespace micdoa {

/// Invalid or inconsistent configuration (bad field values, unknown keys,
/// missing referenced files). CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// File-level failures: unreadable, unwritable, corrupt. CLI exit code 2.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

class MalformedWavError : public IoError {
 public:
  explicit MalformedWavError(const std::string& msg) : IoError(msg) {}
};

class UnsupportedWavError : public IoError {
 public:
  explicit UnsupportedWavError(const std::string& msg) : IoError(msg) {}
};

class ChannelShortfallError : public IoError {
 public:
  explicit ChannelShortfallError(const std::string& msg) : IoError(msg) {}
};

/// The summed power vector has no direction (all-zero or cancelling input).
/// CLI exit code 3.
class IndeterminateDirectionError : public std::runtime_error {
 public:
  explicit IndeterminateDirectionError(const std::string& msg)
      : std::runtime_error(msg) {}
};

/// Too few usable trials to compute statistics. CLI exit code 3.
class InsufficientDataError : public std::runtime_error {
 public:
  explicit InsufficientDataError(const std::string& msg)
      : std::runtime_error(msg) {}
};

}  // namespace micdoa
