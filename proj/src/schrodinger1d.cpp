#include "evanskit/schrodinger1d.hpp"

#include <cmath>

namespace evanskit {

Schrodinger1DProblem Schrodinger1DProblem::laplacian(std::size_t n) {
  Schrodinger1DProblem p;
  p.n = n;
  p.Q = [n](double) { return CMatrix::Zero(n, n).eval(); };
  p.thetaPlus = CMatrix::Zero(n, n);
  p.thetaMinus = CMatrix::Zero(n, n);
  return p;
}

Schrodinger1DProblem Schrodinger1DProblem::from_potential(const MatrixPotential& q) {
  Schrodinger1DProblem p = laplacian(q.size());
  p.Q = q.as_function();
  return p;
}

Schrodinger1DProblem Schrodinger1DProblem::with_theta(const CMatrix& plus,
                                                      const CMatrix& minus) const {
  Schrodinger1DProblem p = *this;
  p.thetaPlus = plus;
  p.thetaMinus = minus;
  return p;
}

Schrodinger1DProblem Schrodinger1DProblem::with_theta(cplx c) const {
  const CMatrix t = c * CMatrix::Identity(n, n);
  return with_theta(t, t);
}

Schrodinger1DProblem Schrodinger1DProblem::shifted(cplx shift) const {
  Schrodinger1DProblem p = *this;
  p.Q = [q = Q, shift, n = n](double x) {
    return (q(x) + shift * CMatrix::Identity(n, n)).eval();
  };
  return p;
}

CMatrix Schrodinger1DProblem::theta_big() const {
  CMatrix t = CMatrix::Zero(2 * n, 2 * n);
  t.topLeftCorner(n, n) = thetaPlus;
  t.bottomRightCorner(n, n) = thetaMinus;
  return t;
}

void Schrodinger1DProblem::validate() const {
  if (n == 0) throw DimensionError("problem size must be positive");
  if (!Q) throw DimensionError("potential is not set");
  const auto nn = static_cast<Eigen::Index>(n);
  if (thetaPlus.rows() != nn || thetaPlus.cols() != nn || thetaMinus.rows() != nn ||
      thetaMinus.cols() != nn)
    throw DimensionError("Robin matrices must be n x n");
  require_finite(thetaPlus, "thetaPlus");
  require_finite(thetaMinus, "thetaMinus");
  for (double x : {-1.0, 0.0, 1.0}) {
    const CMatrix q = Q(x);
    if (q.rows() != nn || q.cols() != nn) throw DimensionError("potential must be n x n");
    require_finite(q, "potential");
  }
}

namespace {

struct MatrixSolution {
  CMatrix U, Up;
};

/// Carries the n x m matrix solution (U, U') of U'' = (Q - lambda) U from x0 to x1.
MatrixSolution carry(const Schrodinger1DProblem& p, cplx lambda, const CMatrix& U0,
                     const CMatrix& U0p, double x0, double x1, const PropagationOptions& opts) {
  if (x0 == x1) return {U0, U0p};
  const Eigen::Index n = static_cast<Eigen::Index>(p.n);
  const Eigen::Index m = U0.cols();
  const Eigen::Index block = n * m;

  OdeSystem sys;
  sys.dimension = static_cast<std::size_t>(2 * block);
  sys.rhs = [&p, lambda, n, m, block](double x, const CVector& y, CVector& dy) {
    CMatrix q = p.Q(x);
    q.diagonal().array() -= lambda;
    Eigen::Map<const CMatrix> u(y.data(), n, m);
    Eigen::Map<CMatrix> du(dy.data(), n, m);
    Eigen::Map<CMatrix> dup(dy.data() + block, n, m);
    du = Eigen::Map<const CMatrix>(y.data() + block, n, m);
    dup.noalias() = q * u;
  };

  CVector y0(2 * block);
  Eigen::Map<CMatrix>(y0.data(), n, m) = U0;
  Eigen::Map<CMatrix>(y0.data() + block, n, m) = U0p;
  const CVector y1 = propagate(sys, x0, x1, y0, opts.rtol, opts.atol);
  return {Eigen::Map<const CMatrix>(y1.data(), n, m),
          Eigen::Map<const CMatrix>(y1.data() + block, n, m)};
}

void check_lambda(cplx lambda, const PropagationOptions& opts) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
    throw PreconditionError("lambda must be finite");
  if (std::abs(lambda) > opts.lambdaCap)
    throw PreconditionError("|lambda| = " + std::to_string(std::abs(lambda)) +
                            " exceeds the propagation cap");
}

bool singular(const CMatrix& m) {
  return !(smallest_pivot(m) > kSingularTol * norm_inf(m));
}

}  // namespace

FundamentalSolutions fundamental_solutions(const Schrodinger1DProblem& p, cplx lambda,
                                           const PropagationOptions& opts) {
  check_lambda(lambda, opts);
  const auto n = static_cast<Eigen::Index>(p.n);
  // columns [Y_- | V_-], started at x = -1
  CMatrix U0(n, 2 * n), U0p(n, 2 * n);
  U0 << CMatrix::Zero(n, n), CMatrix::Identity(n, n);
  U0p << CMatrix::Identity(n, n), CMatrix::Zero(n, n);
  const MatrixSolution s = carry(p, lambda, U0, U0p, -1.0, 1.0, opts);
  return {lambda, s.U.leftCols(n), s.Up.leftCols(n), s.U.rightCols(n), s.Up.rightCols(n)};
}

FrameMatrices frame(const FundamentalSolutions& fs) {
  const Eigen::Index n = fs.Y.rows();
  FrameMatrices f;
  f.lambda = fs.lambda;
  f.X.resize(2 * n, 2 * n);
  f.Z.resize(2 * n, 2 * n);
  f.X << fs.Y, fs.V, CMatrix::Zero(n, n), CMatrix::Identity(n, n);
  f.Z << fs.Yp, fs.Vp, -CMatrix::Identity(n, n), CMatrix::Zero(n, n);
  return f;
}

FrameMatrices frame(const Schrodinger1DProblem& p, cplx lambda, const PropagationOptions& opts) {
  return frame(fundamental_solutions(p, lambda, opts));
}

CMatrix dtn(const FrameMatrices& f) {
  try {
    return solve_right(f.Z, f.X, kSingularTol);
  } catch (const SingularMatrix&) {
    throw DirichletEigenvalue(f.lambda);
  }
}

CMatrix robin_to_dirichlet(const FrameMatrices& f, const CMatrix& thetaBig) {
  if (thetaBig.rows() != f.X.rows() || thetaBig.cols() != f.X.cols())
    throw DimensionError("robin_to_dirichlet: Theta must be 2n x 2n");
  try {
    return solve_right(f.X, f.Z + thetaBig * f.X, kSingularTol);
  } catch (const SingularMatrix&) {
    throw RobinEigenvalue(f.lambda);
  }
}

cplx evans_dirichlet(const FrameMatrices& f) { return det(f.X); }

cplx evans_robin(const FrameMatrices& f, const CMatrix& thetaBig) {
  if (thetaBig.rows() != f.X.rows() || thetaBig.cols() != f.X.cols())
    throw DimensionError("evans_robin: Theta must be 2n x 2n");
  return det(f.Z + thetaBig * f.X);
}

cplx evans_dirichlet_at(const Schrodinger1DProblem& p, cplx lambda, double x,
                        const PropagationOptions& opts) {
  check_lambda(lambda, opts);
  if (x < -1.0 || x > 1.0) throw PreconditionError("x must lie in [-1, 1]");
  const auto n = static_cast<Eigen::Index>(p.n);
  const CMatrix I = CMatrix::Identity(n, n), O = CMatrix::Zero(n, n);
  const MatrixSolution minus = carry(p, lambda, O, I, -1.0, x, opts);
  const MatrixSolution plus = carry(p, lambda, O, I, 1.0, x, opts);
  CMatrix E(2 * n, 2 * n);
  E << minus.U, plus.U, minus.Up, plus.Up;
  return det(E);
}

cplx evans_robin_at(const Schrodinger1DProblem& p, cplx lambda, double x,
                    const PropagationOptions& opts) {
  check_lambda(lambda, opts);
  if (x < -1.0 || x > 1.0) throw PreconditionError("x must lie in [-1, 1]");
  const auto n = static_cast<Eigen::Index>(p.n);
  const CMatrix I = CMatrix::Identity(n, n);
  // W_- = V_- + Y_- Theta_-:  W_-(-1) = I, W_-'(-1) = Theta_-
  // W_+ = V_+ + Y_+ Theta_+:  W_+(1) = -I, W_+'(1) = Theta_+
  const MatrixSolution minus = carry(p, lambda, I, p.thetaMinus, -1.0, x, opts);
  const MatrixSolution plus = carry(p, lambda, -I, p.thetaPlus, 1.0, x, opts);
  CMatrix E(2 * n, 2 * n);
  E << minus.U, plus.U, minus.Up, plus.Up;
  return det(E);
}

EvansRatio evans_ratio(const Schrodinger1DProblem& p, const Schrodinger1DProblem& phat,
                       cplx lambda, const PropagationOptions& opts) {
  if (p.n != phat.n) throw DimensionError("evans_ratio: problems differ in size");
  const FrameMatrices f = frame(p, lambda, opts);
  const FrameMatrices fh = frame(phat, lambda, opts);
  const CMatrix theta = p.theta_big(), thetaHat = phat.theta_big();

  const CMatrix robin = f.Z + theta * f.X;
  if (singular(robin))
    throw OnSpectrum("evans_ratio: lambda = " + format_complex(lambda) +
                         " is in the Robin spectrum of the problem",
                     lambda);
  if (singular(fh.X))
    throw OnSpectrum("evans_ratio: lambda = " + format_complex(lambda) +
                         " is in the Dirichlet spectrum of the reference",
                     lambda);

  EvansRatio r;
  r.value = det(f.X) * det(fh.Z + thetaHat * fh.X) / (det(robin) * det(fh.X));
  r.viaDeterminants = det(solve_right(f.X, robin, 0.0)) * det(solve_right(fh.Z, fh.X, 0.0) + thetaHat);
  const double scale = std::max(std::abs(r.value), std::abs(r.viaDeterminants));
  r.relativeMismatch = scale == 0 ? 0.0 : std::abs(r.value - r.viaDeterminants) / scale;
  return r;
}

}  // namespace evanskit
