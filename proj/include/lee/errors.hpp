#pragma once

#include <stdexcept>
#include <string>

namespace lee {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The V mass sits at or above the N+theta threshold, so m - m_N - omega
/// can vanish inside the integration range.
class StabilityViolation : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// The form factor vanishes on the whole physical domain.
class DegenerateModel : public Error {
 public:
  using Error::Error;
};

/// Secular function evaluated on one of its poles.
class PoleHit : public Error {
 public:
  using Error::Error;
};

/// Bare input whose physical mass has no root below the continuum threshold.
class NoBoundState : public Error {
 public:
  using Error::Error;
};

}  // namespace lee
