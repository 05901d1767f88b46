#pragma once

// Serializable potential profiles: polynomials in the coordinate, or tabulated
// samples joined by a natural cubic spline. These back the configuration
// files; library callers may pass any callable instead.

#include <functional>
#include <string>
#include <vector>

#include "evanskit/numkernel.hpp"

namespace evanskit {

class ScalarProfile {
 public:
  ScalarProfile() = default;  // identically zero

  static ScalarProfile constant(cplx c);
  /// c0 + c1 x + c2 x^2 + ...
  static ScalarProfile polynomial(std::vector<cplx> coeffs);
  /// Natural cubic spline through (xs[i], values[i]); xs strictly increasing,
  /// at least two nodes. Evaluation outside the nodes clamps to the end values.
  static ScalarProfile table(std::vector<double> xs, std::vector<cplx> values);

  cplx operator()(double x) const;

  bool is_zero() const;
  bool is_real() const;
  bool is_polynomial() const { return kind_ == Kind::Polynomial; }
  const std::vector<cplx>& coefficients() const { return coeffs_; }
  const std::vector<double>& nodes() const { return xs_; }
  const std::vector<cplx>& values() const { return values_; }

  /// Same profile plus a constant.
  ScalarProfile shifted(cplx c) const;

  bool operator==(const ScalarProfile&) const = default;

 private:
  enum class Kind { Polynomial, Table };
  Kind kind_ = Kind::Polynomial;
  std::vector<cplx> coeffs_;
  std::vector<double> xs_;
  std::vector<cplx> values_;
  std::vector<cplx> second_;  // spline second derivatives
};

/// n x n matrix of scalar profiles.
class MatrixPotential {
 public:
  MatrixPotential() = default;
  explicit MatrixPotential(std::size_t n);  // zero potential

  static MatrixPotential diagonal(std::vector<ScalarProfile> entries);

  std::size_t size() const { return n_; }
  ScalarProfile& at(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const ScalarProfile& at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  CMatrix operator()(double x) const;
  std::function<CMatrix(double)> as_function() const;

  bool operator==(const MatrixPotential&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<ScalarProfile> entries_;
};

}  // namespace evanskit
