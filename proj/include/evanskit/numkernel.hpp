#pragma once

// Dense complex linear algebra and adaptive ODE propagation shared by every
// model in the toolkit. Matrices here are small (a few hundred rows at most),
// so everything is dense and allocation-happy.

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "evanskit/errors.hpp"

namespace evanskit {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

/// Infinity norm (max absolute row sum).
double norm_inf(const CMatrix& m);

/// Throws DimensionError unless every entry is finite.
void require_finite(const CMatrix& m, const char* what);

/// Determinant by partially pivoted LU.
cplx det(const CMatrix& m);

/// Smallest |U_ii| of the partially pivoted LU factorization.
double smallest_pivot(const CMatrix& m);

inline constexpr std::size_t kDefaultEigCap = 256;

/// Eigenvalues with algebraic multiplicity (Hessenberg reduction + shifted QR).
std::vector<cplx> eig(const CMatrix& m, std::size_t cap = kDefaultEigCap);

/// Solves m x = b. A pivot below `relTol * norm_inf(m)` raises SingularMatrix.
CMatrix solve(const CMatrix& m, const CMatrix& b, double relTol = 1e-13);

/// Right division b * m^{-1}, with the same singularity rule as solve().
CMatrix solve_right(const CMatrix& b, const CMatrix& m, double relTol = 1e-13);

/// Singular values, descending.
std::vector<double> singular_values(const CMatrix& m);

/// Orthonormal basis (as columns) of the numerical kernel: right singular
/// vectors whose singular value is below `relTol * sigma_max`.
CMatrix kernel_basis(const CMatrix& m, double relTol);

/// Minimum-norm least-squares solution of m x = b.
CVector least_squares(const CMatrix& m, const CVector& b);

struct OdeSystem {
  std::size_t dimension = 0;
  /// dy = f(x, y); dy is pre-sized to `dimension`.
  std::function<void(double x, const CVector& y, CVector& dy)> rhs;
};

struct PropagateStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

/// Integrates y' = f(x, y) from x0 to x1 (either direction) with the
/// Dormand-Prince 5(4) pair. The local error of every component is held
/// below max(rtol * |y|, atol).
CVector propagate(const OdeSystem& sys, double x0, double x1, const CVector& y0,
                  double rtol, double atol, PropagateStats* stats = nullptr);

}  // namespace evanskit
