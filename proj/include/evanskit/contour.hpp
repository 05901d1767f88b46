#pragma once

// Argument-principle engine. Winding numbers are computed by phase
// continuation: f is sampled along the contour and any segment whose phase
// jump exceeds pi/2 is bisected, so no derivative of f is needed and the
// result is an integer by construction.

#include <functional>

#include "evanskit/numkernel.hpp"

namespace evanskit {

using ScalarFunction = std::function<cplx(cplx)>;

struct Contour {
  enum class Kind { Rectangle, Circle };

  Kind kind = Kind::Circle;
  // rectangle [lambda1, lambda2] x [-delta, delta]
  double lambda1 = 0, lambda2 = 0, delta = 0;
  // circle
  cplx center = 0;
  double radius = 0;

  std::size_t initialSamples = 64;
  std::size_t maxRefineDepth = 20;

  static Contour rectangle(double lambda1, double lambda2, double delta);
  static Contour circle(cplx center, double radius);

  void validate() const;
};

struct WindingResult {
  long winding = 0;
  std::size_t samplesUsed = 0;
  double minModulusOnContour = 0;
};

/// Winding number of f around the (positively oriented) contour.
/// Throws OnSpectrum if |f| < 1e-10 * max|f| at a sample, and
/// ContourResolutionError if bisection exceeds the refinement depth.
WindingResult winding(const ScalarFunction& f, const Contour& c);

/// Order of zero minus order of pole (or the winding around an essential
/// singularity) at lambda0, from the circle of radius epsilon.
long multiplicity_at(const ScalarFunction& f, cplx lambda0, double epsilon);

struct CountResult {
  long count = 0;
  double deltaUsed = 0;
  WindingResult detail;
};

struct CountOptions {
  std::size_t initialSamples = 64;
  std::size_t maxRefineDepth = 20;
  int maxDeltaHalvings = 6;
};

/// Winding of an Evans-type function around [lambda1, lambda2] x [-delta, delta].
/// When a sample hits a non-real spectral point, delta is halved (up to
/// maxDeltaHalvings times); spectral hits on the real axis are rethrown.
CountResult count_eigs(const ScalarFunction& evans, double lambda1, double lambda2, double delta,
                       const CountOptions& opts = {});

}  // namespace evanskit
