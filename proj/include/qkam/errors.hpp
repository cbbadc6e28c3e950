#pragma once

#include <stdexcept>
#include <string>

namespace qkam {

// Base for all library errors. Subclasses carry the failure kind in the
// type so callers can discriminate without string matching.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

class NoConvergenceError : public Error {
 public:
  using Error::Error;
};

class IllConditionedError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefiniteError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class AmbiguousClusteringError : public Error {
 public:
  using Error::Error;
};

class NotRobustError : public Error {
 public:
  explicit NotRobustError(const std::string& msg, double residual)
      : Error(msg), residual(residual) {}
  double residual;
};

class LevelCrossingError : public Error {
 public:
  using Error::Error;
};

class SingularOverlapError : public Error {
 public:
  using Error::Error;
};

class InvalidBoundError : public Error {
 public:
  using Error::Error;
};

class UnnormalizedStateError : public Error {
 public:
  using Error::Error;
};

class NotPositiveError : public Error {
 public:
  using Error::Error;
};

class NotStateError : public Error {
 public:
  using Error::Error;
};

class PositivityLostError : public Error {
 public:
  explicit PositivityLostError(const std::string& msg, double time)
      : Error(msg), time(time) {}
  double time;
};

class SiteOutOfRangeError : public Error {
 public:
  using Error::Error;
};

class DuplicateSiteError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qkam
