#pragma once

// Radial Schrodinger operators -Delta + q(|x|) on the unit disc, decomposed
// into Fourier modes e^{ik theta}. For each mode the Dirichlet-to-Neumann map
// acts as multiplication by d_k(lambda).
//
// q = 0: d_k(lambda) = sqrt(lambda) J_k'(sqrt(lambda)) / J_k(sqrt(lambda)), evaluated
// through the entire normalized series
//   s_k(lambda) = sum_m (-lambda/4)^m k! / (m! (k+m)!),
//   d_k(lambda) = k - lambda / (2(k+1)) * s_{k+1}(lambda) / s_k(lambda),
// which needs no branch of sqrt(lambda).
//
// General q: with t = -log r the mode equation becomes
//   -v'' + (e^{-2t}(q(e^{-t}) - lambda) + k^2) v = 0,   t > 0,
// and d_k = -v'(0) / v(0) for the solution decaying like e^{-|k| t}.

#include <functional>
#include <vector>

#include "evanskit/modes.hpp"
#include "evanskit/numkernel.hpp"

namespace evanskit::disc {

struct DiscConfig {
  std::function<double(double)> q;  // radial potential on [0, 1]; empty means q = 0
  double gamma = 0;                 // reference operator is -Delta + q + gamma
  cplx mu = 0, muHat = 0;           // Robin couplings of the two problems
  long maxMode = 64;

  double jostAtol = 1e-10;
  bool forceJost = false;  // use the ODE route even when q = 0

  bool q_is_zero() const { return !q; }
  double q_sup() const;
  void validate() const;
};

/// Relative size of s_k below which lambda counts as a mode Dirichlet eigenvalue.
inline constexpr double kModeSingularTol = 1e-9;

struct SeriesValue {
  cplx value;
  double magnitude;  // sum of |terms|
};

/// s_k(lambda) with compensated summation.
SeriesValue bessel_series(long k, cplx lambda);

/// d_k(lambda) for q = 0. Throws ModeDirichletEigenvalue near zeros of J_k(sqrt(lambda)).
cplx d_k(long k, cplx lambda);

struct JostValue {
  cplx v;    // v(0), normalized
  cplx vp;   // v'(0), same normalization
  double T;  // truncation point
};

/// Jost solution of mode k at t = 0 for the potential q (empty means 0).
/// The start value at T is multiplied by startScale; the result is renormalized,
/// so only the ratio vp / v is meaningful.
JostValue jost_solution(const DiscConfig& cfg, long k, cplx lambda, cplx startScale = 1.0);

/// -v'(0)/v(0). Throws ModeDirichletEigenvalue when v(0) vanishes.
cplx jost_dtn(const DiscConfig& cfg, long k, cplx lambda);

/// d_k through the series when q = 0 (unless forceJost), else through the Jost ODE.
cplx mode_dtn(const DiscConfig& cfg, long k, cplx lambda);

/// Real lambda in [lambdaMin, lambdaMax] where the mode-k Jost value v_k(0, lambda)
/// changes sign: the Dirichlet eigenvalues of mode k. Requires real q.
std::vector<double> mode_dirichlet_eigenvalues(const DiscConfig& cfg, long k, double lambdaMin,
                                               double lambdaMax, double step = 0.25);

/// (d_k(lambda - gamma) + muHat) / (d_k(lambda) + mu) for |k| <= maxMode.
/// Throws RobinEigenvalue(lambda, k) when a denominator vanishes.
ModeSequence mode_ratios(const DiscConfig& cfg, cplx lambda);

struct SchattenTable {
  cplx lambda;
  double p;
  std::vector<double> partialSums;  // S_p(K') = sum_{|k| <= K'} |ratio_k - 1|^p
  std::vector<double> increments;   // S_p(K') - S_p(K' - 1)
  std::vector<double> oneSidedSums; // sum_{0 <= k <= K'} |ratio_k - 1|^p
  double decayExponent;             // fitted exponent of |ratio_k - 1|^p over k in [K/4, K]
  bool decayMatches;                // decayExponent within 0.15 of -p
  double logSlope;                  // fitted slope of oneSidedSums against log K' over [K/4, K]
};

SchattenTable schatten_diag(const DiscConfig& cfg, cplx lambda, double p);

}  // namespace evanskit::disc
