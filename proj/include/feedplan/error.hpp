#pragma once

#include <stdexcept>
#include <string>

namespace feedplan {

// Base for every error the library raises. Callers that only care about
// "did it work" catch this; the CLI maps the subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

// Mesh is not closed / not consistently wound, or a face index is out of range.
class TopologyError : public Error {
 public:
  using Error::Error;
};

class InvalidPlaneError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class InvalidStartError : public Error {
 public:
  using Error::Error;
};

class NoTrajectoryError : public Error {
 public:
  using Error::Error;
};

}  // namespace feedplan
