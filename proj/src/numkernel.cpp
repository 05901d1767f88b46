#include "evanskit/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace evanskit {

double norm_inf(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

void require_finite(const CMatrix& m, const char* what) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const cplx z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw DimensionError(std::string(what) + ": non-finite entry");
  }
}

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols())
    throw DimensionError(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
}

double min_abs_diagonal(const CMatrix& lu) {
  double p = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < lu.rows(); ++i) p = std::min(p, std::abs(lu(i, i)));
  return p;
}

}  // namespace

cplx det(const CMatrix& m) {
  require_square(m, "det");
  if (m.rows() == 0) return 1.0;
  if (m.rows() == 1) return m(0, 0);
  return m.partialPivLu().determinant();
}

double smallest_pivot(const CMatrix& m) {
  require_square(m, "smallest_pivot");
  if (m.rows() == 0) return std::numeric_limits<double>::infinity();
  return min_abs_diagonal(m.partialPivLu().matrixLU());
}

std::vector<cplx> eig(const CMatrix& m, std::size_t cap) {
  require_square(m, "eig");
  if (static_cast<std::size_t>(m.rows()) > cap)
    throw DimensionError("eig: dimension " + std::to_string(m.rows()) + " exceeds cap " +
                         std::to_string(cap));
  if (m.rows() == 0) return {};
  if (m.rows() == 1) return {m(0, 0)};
  Eigen::ComplexEigenSolver<CMatrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eig: shifted QR iteration did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

CMatrix solve(const CMatrix& m, const CMatrix& b, double relTol) {
  require_square(m, "solve");
  if (b.rows() != m.rows()) throw DimensionError("solve: right-hand side has wrong row count");
  Eigen::PartialPivLU<CMatrix> lu(m);
  const double pivot = min_abs_diagonal(lu.matrixLU());
  if (!(pivot > relTol * norm_inf(m))) throw SingularMatrix(pivot);
  return lu.solve(b);
}

CMatrix solve_right(const CMatrix& b, const CMatrix& m, double relTol) {
  require_square(m, "solve_right");
  if (b.cols() != m.rows()) throw DimensionError("solve_right: left factor has wrong column count");
  // b m^{-1} = (m^T \ b^T)^T
  Eigen::PartialPivLU<CMatrix> lu(m.transpose());
  const double pivot = min_abs_diagonal(lu.matrixLU());
  if (!(pivot > relTol * norm_inf(m))) throw SingularMatrix(pivot);
  return lu.solve(b.transpose()).transpose();
}

std::vector<double> singular_values(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

CMatrix kernel_basis(const CMatrix& m, double relTol) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > relTol * smax) ++rank;
  if (smax == 0.0) rank = 0;
  return svd.matrixV().rightCols(m.cols() - rank);
}

CVector least_squares(const CMatrix& m, const CVector& b) {
  return m.completeOrthogonalDecomposition().solve(b);
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4), FSAL, with the classical PI-free step controller.
// ---------------------------------------------------------------------------

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// fifth-order minus embedded fourth-order weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

CVector propagate(const OdeSystem& sys, double x0, double x1, const CVector& y0, double rtol,
                  double atol, PropagateStats* stats) {
  if (!(x0 != x1)) throw PreconditionError("propagate: empty interval");
  if (!(rtol > 1e-14 && rtol < 1e-2) || !(atol > 1e-14 && atol < 1e-2))
    throw PreconditionError("propagate: tolerances must lie in (1e-14, 1e-2)");
  if (static_cast<std::size_t>(y0.size()) != sys.dimension)
    throw DimensionError("propagate: initial state has wrong dimension");

  const std::size_t n = sys.dimension;
  const double span = std::abs(x1 - x0);
  const double dir = x1 > x0 ? 1.0 : -1.0;
  const double hmin = 1e-14 * span;

  CVector y = y0, ytmp(n), ynew(n), err(n);
  CVector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);

  double x = x0;
  sys.rhs(x, y, k1);

  // initial step from the usual derivative-magnitude heuristic
  double h;
  {
    double d0 = 0, d1 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = std::max(rtol * std::abs(y(i)), atol);
      d0 = std::max(d0, std::abs(y(i)) / sc);
      d1 = std::max(d1, std::abs(k1(i)) / sc);
    }
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
    h = std::min({h, 0.1 * span, span});
    h = std::max(h, 100 * hmin);
  }

  std::size_t accepted = 0, rejected = 0;
  constexpr std::size_t kMaxSteps = 2'000'000;
  bool lastRejected = false;

  while (dir * (x1 - x) > 0) {
    if (accepted + rejected > kMaxSteps)
      throw StiffnessError("propagate: step budget exhausted");
    bool last = false;
    if (h >= std::abs(x1 - x)) {
      h = std::abs(x1 - x);
      last = true;
    }
    const double hs = dir * h;

    ytmp = y + hs * (a21 * k1);
    sys.rhs(x + c2 * hs, ytmp, k2);
    ytmp = y + hs * (a31 * k1 + a32 * k2);
    sys.rhs(x + c3 * hs, ytmp, k3);
    ytmp = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
    sys.rhs(x + c4 * hs, ytmp, k4);
    ytmp = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    sys.rhs(x + c5 * hs, ytmp, k5);
    ytmp = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    sys.rhs(x + hs, ytmp, k6);
    ynew = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    sys.rhs(x + hs, ynew, k7);
    err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double errNorm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = std::max(rtol * std::max(std::abs(y(i)), std::abs(ynew(i))), atol);
      const double r = std::abs(err(i)) / sc;
      if (!std::isfinite(r) || !std::isfinite(std::abs(ynew(i)))) {
        errNorm = 1e10;
        break;
      }
      errNorm = std::max(errNorm, r);
    }

    if (errNorm <= 1.0) {
      x = last ? x1 : x + hs;
      y = ynew;
      k1 = k7;
      ++accepted;
      double fac = errNorm == 0 ? 5.0 : 0.9 * std::pow(errNorm, -0.2);
      fac = std::clamp(fac, 0.2, lastRejected ? 1.0 : 5.0);
      h *= fac;
      lastRejected = false;
    } else {
      ++rejected;
      h *= std::max(0.2, 0.9 * std::pow(errNorm, -0.2));
      lastRejected = true;
      if (h < hmin)
        throw StiffnessError("propagate: step size underflow near x = " + std::to_string(x));
    }
  }
  if (stats) {
    stats->accepted = accepted;
    stats->rejected = rejected;
  }
  return y;
}

}  // namespace evanskit
