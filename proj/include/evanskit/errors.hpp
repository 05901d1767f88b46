#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace evanskit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad shapes, out-of-range parameters, violated preconditions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Spectral hits: the evaluation point sits on (or numerically at) a spectrum.
// The CLI maps this family to exit status 2.
// ---------------------------------------------------------------------------

class SpectrumError : public Error {
 public:
  SpectrumError(const std::string& what, std::complex<double> lambda)
      : Error(what), lambda_(lambda) {}
  std::complex<double> lambda() const { return lambda_; }

 private:
  std::complex<double> lambda_;
};

class OnSpectrum : public SpectrumError {
 public:
  using SpectrumError::SpectrumError;
};

class DirichletEigenvalue : public SpectrumError {
 public:
  explicit DirichletEigenvalue(std::complex<double> lambda);
};

class RobinEigenvalue : public SpectrumError {
 public:
  explicit RobinEigenvalue(std::complex<double> lambda, long mode = -1);
  long mode() const { return mode_; }

 private:
  long mode_;
};

class ModeDirichletEigenvalue : public SpectrumError {
 public:
  ModeDirichletEigenvalue(long mode, std::complex<double> lambda);
  long mode() const { return mode_; }

 private:
  long mode_;
};

// ---------------------------------------------------------------------------
// Numerical failures (exit status 3).
// ---------------------------------------------------------------------------

class NumericalError : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public NumericalError {
 public:
  explicit SingularMatrix(double pivot);
  double pivot() const { return pivot_; }

 private:
  double pivot_;
};

class StiffnessError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ContourResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TruncationError : public NumericalError {
 public:
  TruncationError(const std::string& what, long suggestedModes)
      : NumericalError(what), suggested_(suggestedModes) {}
  long suggestedModes() const { return suggested_; }

 private:
  long suggested_;
};

class NotAnEigenvector : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class MonotonicityViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

std::string format_complex(std::complex<double> z);

}  // namespace evanskit
