#pragma once

// Analytic matrix families T(lambda): Jordan chains at a characteristic value
// and algebraic multiplicity. A chain f_0, ..., f_{k-1} at lambda0 satisfies
//   sum_{l=0}^{j} T^{(l)}(lambda0) f_{j-l} / l! = 0,   j = 0, ..., k-1,
// and the multiplicity equals the winding of det T around lambda0.

#include <functional>
#include <vector>

#include "evanskit/numkernel.hpp"

namespace evanskit {

class MatrixPencil {
 public:
  using Eval = std::function<CMatrix(cplx)>;
  using Derivative = std::function<CMatrix(int order, cplx)>;

  /// T(lambda) = sum_j coeffs[j] (lambda - center)^j; derivatives are exact.
  static MatrixPencil polynomial(std::vector<CMatrix> coeffs, cplx center = 0.0);
  /// lambda I - A.
  static MatrixPencil linear(const CMatrix& A);
  /// Arbitrary analytic family; derivatives are taken numerically unless supplied.
  static MatrixPencil callable(std::size_t dim, Eval eval, Derivative derivative = {});

  std::size_t dim() const { return dim_; }
  CMatrix operator()(cplx lambda) const;
  /// T^{(order)}(lambda); order 0 is T itself.
  CMatrix derivative(int order, cplx lambda) const;
  bool exact_derivatives() const { return static_cast<bool>(derivative_); }

  /// S1 T(lambda) S2 for constant square S1, S2.
  MatrixPencil transformed(const CMatrix& S1, const CMatrix& S2) const;

 private:
  std::size_t dim_ = 0;
  Eval eval_;
  Derivative derivative_;
  CMatrix checked(CMatrix m) const;
};

struct JordanChain {
  cplx basePoint = 0;
  std::vector<CVector> vectors;  // f_0, ..., f_{k-1}

  std::size_t length() const { return vectors.size(); }
};

/// Chains are accepted when every residual is at most this.
double chain_tolerance(const MatrixPencil& T, cplx lambda0);

/// Residual norm of chain equation j for j = 0, ..., k-1.
std::vector<double> chain_residuals(const MatrixPencil& T, const JordanChain& chain);

bool chain_is_valid(const MatrixPencil& T, const JordanChain& chain);

/// Winding of det T(lambda) around the circle |lambda - lambda0| = radius.
long multiplicity(const MatrixPencil& T, cplx lambda0, double radius);

/// Orthonormal kernel basis of T(lambda0): singular values below 1e-8 sigma_max.
CMatrix pencil_kernel(const MatrixPencil& T, cplx lambda0);

struct ChainRank {
  long rank = 0;
  bool capped = false;  // the search stopped at maxLen: rank >= maxLen
  JordanChain chain;
};

/// Length of the longest chain found by greedy minimum-norm extension from f0.
/// Throws NotAnEigenvector when T(lambda0) f0 is not small.
ChainRank rank_of_eigenvector(const MatrixPencil& T, cplx lambda0, const CVector& f0,
                              long maxLen);

/// Sum of rank_of_eigenvector over the kernel basis of T(lambda0). Equals the
/// multiplicity when that basis is canonical, e.g. for a one-dimensional kernel
/// or when every chain has length one.
long multiplicity_from_chains(const MatrixPencil& T, cplx lambda0, long maxLen);

}  // namespace evanskit
