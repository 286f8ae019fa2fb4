#pragma once

#include <stdexcept>
#include <string>

namespace jacobi {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coefficient family produced a non-positive a_n or is otherwise misconfigured.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// The tail of a coefficient sequence does not behave as a convergent sequence.
class InconsistentTail : public Error {
 public:
  using Error::Error;
};

/// A tail sum cannot be bounded (divergent series or missing tail family).
class TailUnbounded : public Error {
 public:
  using Error::Error;
};

/// The operation does not apply to the regime of the model.
class RegimeMismatch : public Error {
 public:
  using Error::Error;
};

/// The Volterra solve failed its convergence or residual contract.
class NotConverged : public Error {
 public:
  using Error::Error;
};

/// {f, f~} is too far from its limiting value to extract k_+ and k_-.
class DegenerateWronskian : public Error {
 public:
  using Error::Error;
};

/// The Jost solution vanishes at an index used by the g_n construction.
class ZeroCrossing : public Error {
 public:
  using Error::Error;
};

/// Resolvent requested at a zero of the Jost function.
class PoleAtZ : public Error {
 public:
  using Error::Error;
};

/// Sturm counts became inconsistent: the bit budget is too small.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// |1 - beta_n^2| is below the tolerance in the Carleman construction.
class NearCritical : public Error {
 public:
  using Error::Error;
};

/// The log-scale accumulator left the representable range.
class RangeOverflow : public Error {
 public:
  using Error::Error;
};

/// Experiment or model configuration could not be parsed.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::string field = {}, int line = 0)
      : Error(what), field_(std::move(field)), line_(line) {}
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_ = 0;
};

}  // namespace jacobi
