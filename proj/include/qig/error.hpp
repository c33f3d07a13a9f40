#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qig {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point outside the closed Bloch ball, or a malformed angle.
class InvalidState : public Error {
 public:
  using Error::Error;
};

// r = 0 or theta in {0, pi}: spherical coordinates are singular there.
class DegenerateCoordinates : public Error {
 public:
  using Error::Error;
};

// Quantity diverges on the pure-state boundary r = 1.
class PureStateError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of a scalar function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// No closed form is available for the requested number of copies.
class UnsupportedCopies : public Error {
 public:
  explicit UnsupportedCopies(int n)
      : Error("unsupported number of copies N=" + std::to_string(n)), copies(n) {}
  int copies;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

// One or more outcome probabilities are (numerically) zero at the point
// where Fisher information is requested.
class ZeroProbability : public Error {
 public:
  explicit ZeroProbability(std::vector<std::size_t> idx)
      : Error(describe(idx)), outcomes(std::move(idx)) {}
  std::vector<std::size_t> outcomes;

 private:
  static std::string describe(const std::vector<std::size_t>& idx) {
    std::string s = "zero-probability outcome(s):";
    for (auto i : idx) s += " " + std::to_string(i);
    return s;
  }
};

}  // namespace qig
