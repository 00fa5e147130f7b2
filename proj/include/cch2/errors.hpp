#pragma once

#include <stdexcept>
#include <string>

namespace cch2 {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Two bodies closer than the collision threshold; potentials are singular there.
class CollisionError : public Error {
 public:
  using Error::Error;
};

// -p.q fell below 1 by more than roundoff can explain; the points are not
// both on the upper hyperboloid sheet.
class ArgumentBelowOne : public Error {
 public:
  using Error::Error;
};

class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

class ChartRangeError : public Error {
 public:
  using Error::Error;
};

class NonSymmetricError : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class SizeLimitError : public Error {
 public:
  using Error::Error;
};

class InertiaMismatch : public Error {
 public:
  using Error::Error;
};

class ConeViolation : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class NoAnchor : public Error {
 public:
  using Error::Error;
};

class DegenerateCluster : public Error {
 public:
  using Error::Error;
};

}  // namespace cch2
