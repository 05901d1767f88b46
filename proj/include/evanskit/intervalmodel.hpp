#pragma once

// Closed forms for L = -d^2/dx^2 on the unit interval (0, 1). These serve as
// exact references for the propagated (-1, 1) problems and for the contour
// engine.
//
// Rescaling: x in (-1, 1) maps to s = (x + 1) / 2 in (0, 1). Then
// -u'' = lambda u on (-1, 1) becomes -w'' = 4 lambda w on (0, 1), Dirichlet
// traces coincide and Neumann traces pick up a factor 1/2, so
//   M_(-1,1)(lambda) = M_(0,1)(4 lambda) / 2
//   det N_Theta,(-1,1)(lambda) = 4 det N_2Theta,(0,1)(4 lambda).
// Eigenvalues of (-1, 1) are those of (0, 1) divided by 4.

#include "evanskit/numkernel.hpp"

namespace evanskit::interval {

struct Theta2x2 {
  cplx t11 = 0, t12 = 0, t21 = 0, t22 = 0;

  static Theta2x2 scalar(cplx c) { return {c, 0, 0, c}; }
  static Theta2x2 from_matrix(const CMatrix& m);
  CMatrix matrix() const;
  cplx det() const { return t11 * t22 - t12 * t21; }
  cplx trace() const { return t11 + t22; }
};

/// cos(sqrt(lambda)), entire in lambda.
cplx cosqrt(cplx lambda);
/// sin(sqrt(lambda)) / sqrt(lambda), entire in lambda.
cplx sincqrt(cplx lambda);

/// Dirichlet-to-Neumann matrix [[a, -b], [-b, a]] on (0, 1).
/// Throws DirichletEigenvalue when sincqrt(lambda) vanishes.
CMatrix m_closed(cplx lambda);

/// det N_Theta(lambda) on (0, 1). Throws RobinEigenvalue when the
/// denominator vanishes.
cplx det_n_theta(cplx lambda, const Theta2x2& theta);

/// Dirichlet eigenvalues (k pi)^2, k = 1, 2, ...
double dirichlet_eigenvalue(int k);

// -- (-1, 1) versions, via the rescaling above ------------------------------

CMatrix m_closed_symmetric(cplx lambda);
cplx det_n_theta_symmetric(cplx lambda, const Theta2x2& theta);
/// (k pi / 2)^2
double dirichlet_eigenvalue_symmetric(int k);

}  // namespace evanskit::interval
