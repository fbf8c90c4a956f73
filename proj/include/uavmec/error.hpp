#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace uavmec {

// Base for every error the library raises. `code()` is a short stable tag used
// in the CLI's machine-readable error line.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Invalid or unparseable configuration; `field()` is the dotted path of the
// offending entry, e.g. "world.n_uav".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error("config", field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace uavmec
