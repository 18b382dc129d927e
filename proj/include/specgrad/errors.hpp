#pragma once

#include <stdexcept>
#include <string>

namespace specgrad {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CurvatureNonPositive : Error {
  CurvatureNonPositive() : Error("s'y is not positive; no BB stepsize exists") {}
  explicit CurvatureNonPositive(const std::string& what) : Error(what) {}
};

struct DegeneratePair : Error {
  explicit DegeneratePair(const std::string& what = "degenerate (s, y) pair") : Error(what) {}
};

struct GammaOutOfRange : Error {
  explicit GammaOutOfRange(double gamma)
      : Error("gamma = " + std::to_string(gamma) + " outside [0, 1]") {}
};

struct NoSignChange : Error {
  explicit NoSignChange(const std::string& what = "no sign change in bracketing interval")
      : Error(what) {}
};

struct MissingParameter : Error {
  explicit MissingParameter(const std::string& name) : Error("missing parameter: " + name) {}
};

struct BadFraction : Error {
  explicit BadFraction(const std::string& what) : Error(what) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what = "dimension mismatch") : Error(what) {}
};

struct ZeroGradient : Error {
  ZeroGradient() : Error("gradient is zero") {}
};

struct InsufficientHistory : Error {
  explicit InsufficientHistory(const std::string& what = "not enough history") : Error(what) {}
};

struct TooShort : Error {
  explicit TooShort(const std::string& what = "sequence too short") : Error(what) {}
};

struct DimensionNotTwo : Error {
  DimensionNotTwo() : Error("operation requires a two-dimensional problem") {}
};

struct MissingEigenbasis : Error {
  MissingEigenbasis()
      : Error("gradient components in eigencoordinates were not recorded for this trace") {}
};

struct EmptyInput : Error {
  explicit EmptyInput(const std::string& what = "empty input") : Error(what) {}
};

struct ConfigParseError : Error {
  explicit ConfigParseError(const std::string& what) : Error(what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace specgrad
