#pragma once

#include <stdexcept>
#include <string>

namespace pathot {

class Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Precondition or invariant broken by the caller.
class ContractViolation : public Error {
  using Error::Error;
};

class NoPathError : public Error {
  using Error::Error;
};

class NotALinkError : public Error {
  using Error::Error;
};

class DeadlockError : public Error {
  using Error::Error;
};

class NotSeparatingError : public Error {
  using Error::Error;
};

class EnumerationBoundError : public Error {
  using Error::Error;
};

class RefusesToBruteForceError : public Error {
  using Error::Error;
};

/// Configuration problem; carries the JSON field path that caused it.
class ConfigError : public Error {
public:
  ConfigError(std::string field, const std::string& what)
      : Error("config field '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

private:
  std::string field_;
};

}  // namespace pathot
