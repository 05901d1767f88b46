#pragma once

// Boundary maps and Evans functions for L u = -u'' + Q u on (-1, 1) with an
// n x n matrix potential.
//
// Trace conventions on C^{2n}:
//   Dirichlet  gamma_D u = [u(1); u(-1)]
//   Neumann    gamma_N u = [u'(1); -u'(-1)]
// and the Robin matrix is Theta = diag(Theta_plus, Theta_minus) in the same
// ordering.

#include <functional>

#include "evanskit/numkernel.hpp"
#include "evanskit/potential.hpp"

namespace evanskit {

struct Schrodinger1DProblem {
  std::size_t n = 1;
  std::function<CMatrix(double)> Q;  // n x n on [-1, 1]
  CMatrix thetaPlus;
  CMatrix thetaMinus;

  /// -u'' on (-1,1) tensored n times, Theta = 0.
  static Schrodinger1DProblem laplacian(std::size_t n = 1);
  static Schrodinger1DProblem from_potential(const MatrixPotential& q);

  Schrodinger1DProblem with_theta(const CMatrix& plus, const CMatrix& minus) const;
  /// Same Theta on both ends: Theta_plus = Theta_minus = c I.
  Schrodinger1DProblem with_theta(cplx c) const;
  /// Q + shift * I.
  Schrodinger1DProblem shifted(cplx shift) const;

  /// diag(Theta_plus, Theta_minus)
  CMatrix theta_big() const;

  /// Throws DimensionError unless Q(x) and Theta are n x n and finite.
  void validate() const;
};

struct PropagationOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double lambdaCap = 1e4;
};

/// Y_-, V_- and their derivatives evaluated at x = +1, with
/// Y_-(-1) = 0, Y_-'(-1) = I, V_-(-1) = I, V_-'(-1) = 0.
struct FundamentalSolutions {
  cplx lambda;
  CMatrix Y, Yp, V, Vp;
};

FundamentalSolutions fundamental_solutions(const Schrodinger1DProblem& p, cplx lambda,
                                           const PropagationOptions& opts = {});

/// Dirichlet (X) and Neumann (Z) trace blocks of the solution frame.
struct FrameMatrices {
  CMatrix X;
  CMatrix Z;
  cplx lambda;
};

FrameMatrices frame(const FundamentalSolutions& fs);
FrameMatrices frame(const Schrodinger1DProblem& p, cplx lambda,
                    const PropagationOptions& opts = {});

/// A matrix counts as singular when its smallest LU pivot is below this
/// fraction of its norm.
inline constexpr double kSingularTol = 1e-10;

/// Dirichlet-to-Neumann map Z X^{-1}. Throws DirichletEigenvalue.
CMatrix dtn(const FrameMatrices& f);

/// Robin-to-Dirichlet map X (Z + Theta X)^{-1}; defined across Dirichlet
/// eigenvalues. Throws RobinEigenvalue.
CMatrix robin_to_dirichlet(const FrameMatrices& f, const CMatrix& thetaBig);

/// det X
cplx evans_dirichlet(const FrameMatrices& f);
/// det(Z + Theta X)
cplx evans_robin(const FrameMatrices& f, const CMatrix& thetaBig);

/// Determinant of the Dirichlet Evans matrix [[Y_-, Y_+], [Y_-', Y_+']] at x.
cplx evans_dirichlet_at(const Schrodinger1DProblem& p, cplx lambda, double x,
                        const PropagationOptions& opts = {});
/// Determinant of the Robin Evans matrix built from W_+- = V_+- + Y_+- Theta_+-
/// at x, with V_+(1) = -I, V_+'(1) = 0.
cplx evans_robin_at(const Schrodinger1DProblem& p, cplx lambda, double x,
                    const PropagationOptions& opts = {});

struct EvansRatio {
  cplx value;             // E_D * Ehat_Theta / (E_Theta * Ehat_D)
  cplx viaDeterminants;   // det N_Theta * det Mhat_Thetahat
  double relativeMismatch;
};

/// Evans ratio of p against the reference problem phat. Throws OnSpectrum
/// when lambda sits in the Robin spectrum of p or the Dirichlet spectrum of
/// phat.
EvansRatio evans_ratio(const Schrodinger1DProblem& p, const Schrodinger1DProblem& phat,
                       cplx lambda, const PropagationOptions& opts = {});

}  // namespace evanskit
