#pragma once

#include <stdexcept>
#include <string>

namespace netinf {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid argument values (ranges, probabilities, configuration).
struct DomainError : Error {
  using Error::Error;
};

/// Mismatched matrix/vector dimensions.
struct DimensionError : Error {
  using Error::Error;
};

/// Input matrix is not symmetric within tolerance.
struct SymmetryError : Error {
  using Error::Error;
};

/// Random graph sampling failed to produce a connected graph.
struct ConnectivityError : Error {
  using Error::Error;
};

/// Malformed input file; message carries the offending line number.
struct ParseError : Error {
  using Error::Error;
};

/// Node id outside the declared vertex range.
struct IndexError : Error {
  using Error::Error;
};

/// File could not be opened, read, or written.
struct IoError : Error {
  using Error::Error;
};

/// Consensus rate outside the stable open interval (0, 1/lambda_max).
struct RateError : Error {
  using Error::Error;
};

/// Sub-exponential tail bound requested with degenerate (zero) parameters.
struct ZeroParamError : Error {
  using Error::Error;
};

/// Operation requires a nonzero matrix.
struct ZeroMatrixError : Error {
  using Error::Error;
};

/// The recovery program has an empty feasible set at the given epsilon1.
struct InfeasibleError : Error {
  using Error::Error;
};

/// Iterative solver exhausted its iteration budget before reaching tolerance.
struct NonConvergenceError : Error {
  using Error::Error;
};

/// Feasibility search could not bracket a feasible epsilon1.
struct SearchError : Error {
  using Error::Error;
};

}  // namespace netinf
