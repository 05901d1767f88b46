#pragma once

// Souriau map W(lambda) = 2i N_{iI}(lambda) - I of a Schrodinger problem on
// (-1, 1). For real lambda it equals the Cayley transform (N + i)(N - i)^{-1}
// of the Neumann-to-Dirichlet map and is unitary; its eigenvalue -1 marks the
// Dirichlet spectrum. As lambda increases these eigenvalues rotate clockwise
// through -1, so the spectral flow through -1 counts Dirichlet eigenvalues
// with a minus sign.

#include <vector>

#include "evanskit/schrodinger1d.hpp"

namespace evanskit {

struct SouriauSample {
  cplx lambda;
  CMatrix W;
  bool viaContinuation = true;
  double cayleyMismatch = -1;  // relative gap to (N + i)(N - i)^{-1}; -1 when N does not exist
};

SouriauSample souriau(const Schrodinger1DProblem& p, cplx lambda,
                      const PropagationOptions& opts = {});

/// Throws PreconditionError unless Q(x) and Theta are Hermitian.
void require_symmetric(const Schrodinger1DProblem& p);

/// dim ker(I + W(lambda)) for real lambda: eigenvalues within 1e-6 of -1.
/// Throws ResolutionError for an eigenvalue at distance in [1e-6, 1e-4] or when
/// the winding of det(I + W) on a small circle disagrees.
long kernel_dim_at(const Schrodinger1DProblem& p, double lambda,
                   const PropagationOptions& opts = {});

struct Crossing {
  double lambda;
  long kernelDim;
  int direction;  // -1 clockwise
};

struct FlowTrace {
  std::vector<double> grid;
  std::vector<std::vector<double>> phases;  // sorted arguments of eig W per grid point
  std::vector<Crossing> crossings;
  long flow = 0;
};

struct FlowOptions {
  PropagationOptions propagation;
  std::size_t threads = 1;
  int maxRefineDepth = 30;
};

/// Spectral flow of W through -1 over [lambda1, lambda2].
FlowTrace spectral_flow(const Schrodinger1DProblem& p, double lambda1, double lambda2,
                        double gridStep, const FlowOptions& opts = {});

struct EvansMaslovReport {
  long windingOfEvans = 0;  // count_eigs of the Evans ratio
  long flow = 0;            // spectral flow of W
  long flowHat = 0;         // spectral flow of W-hat
  long rightSide() const { return flowHat - flow; }
  bool equal() const { return windingOfEvans == rightSide(); }
};

/// Winding of the Evans ratio of (p, phat) with Theta = iI around the
/// rectangle against sflow(W-hat) - sflow(W) over [lambda1, lambda2].
EvansMaslovReport evans_maslov_check(const Schrodinger1DProblem& p,
                                     const Schrodinger1DProblem& phat, double lambda1,
                                     double lambda2, double delta, double gridStep = 0.25,
                                     const FlowOptions& opts = {});

}  // namespace evanskit
