#pragma once

#include <stdexcept>
#include <string>

namespace gradflux {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct GapViolation : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  std::string key;
  ValidationError(std::string k, const std::string& msg)
      : Error(msg), key(std::move(k)) {}
};
struct DegenerateInterval : Error {
  using Error::Error;
};
struct EnvelopeFailure : Error {
  using Error::Error;
};
struct DomainMismatch : Error {
  using Error::Error;
};
struct InconsistentPlateau : Error {
  using Error::Error;
};
struct AmbiguousTheta : Error {
  using Error::Error;
};
struct EqualStates : Error {
  using Error::Error;
};
struct ZeroWidth : Error {
  using Error::Error;
};
struct BlowUp : Error {
  using Error::Error;
};
struct EventOverflow : Error {
  using Error::Error;
};
struct SnapshotMismatch : Error {
  using Error::Error;
};
struct PreconditionViolation : Error {
  using Error::Error;
};

}  // namespace gradflux
