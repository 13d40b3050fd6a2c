#pragma once

#include <stdexcept>
#include <string>

namespace calgame {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value fell outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A scenario or strategy was configured inconsistently.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A caller broke an ordering or information contract of the game,
// e.g. handing Nature the forecast in a simultaneous round.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Stored data disagrees with what it should have been derived from.
class DataIntegrityError : public Error {
 public:
  using Error::Error;
};

// The selection criterion never fired, so p_k is undefined.
class EmptyTestSetError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace calgame
