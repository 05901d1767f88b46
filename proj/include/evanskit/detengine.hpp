#pragma once

// p-modified Fredholm determinants
//
//   det_p(I + B) = prod_n (1 + mu_n) exp( sum_{k=1}^{p-1} (-1)^k mu_n^k / k )
//
// over the eigenvalues mu_n of B, for finite matrices and for the diagonal
// mode families of the disc model.

#include "evanskit/modes.hpp"
#include "evanskit/numkernel.hpp"

namespace evanskit {

class DetOrder {
 public:
  static constexpr int kMax = 8;
  explicit DetOrder(int p);
  int value() const { return p_; }

 private:
  int p_;
};

cplx det_p_finite(const CMatrix& B, DetOrder p);

/// log of one det_p factor: log(1 + z) + sum_{k=1}^{p-1} (-1)^k z^k / k.
cplx det_p_log_factor(cplx z, DetOrder p);

struct DetCheck {
  cplx lhs;
  cplx rhs;
  double residual;  // |lhs - rhs|
  double scale;     // max(1, |lhs|, |rhs|)
};

/// Compares det_p_finite(F) with det(I + F) exp(sum_{k<p} (-1)^k tr(F^k) / k).
DetCheck det_p_identity_check(const CMatrix& F, DetOrder p);

/// Compares det_p(I + A1 A2) with det_p(I + A2 A1); A1 is m x n, A2 is n x m.
DetCheck det_p_commute_check(const CMatrix& A1, const CMatrix& A2, DetOrder p);

struct ModeDeterminant {
  cplx value;
  double bound;         // certified |value - det_p(full family)| bound
  double tailConstant;  // C in |ratio_k - 1| <= C / k beyond the truncation
  long modes;           // K
};

/// det_p of the diagonal family diag(ratios(k)), |k| <= K, with a certified
/// bound on the neglected |k| > K tail. Requires p >= 2. Throws
/// TruncationError when the bound exceeds tailTol.
ModeDeterminant det_p_modes(const ModeSequence& ratios, DetOrder p, double tailTol);

}  // namespace evanskit
