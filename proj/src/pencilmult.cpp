#include "evanskit/pencilmult.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "evanskit/contour.hpp"

namespace evanskit {

namespace {

constexpr double kChainTol = 1e-8;
constexpr double kKernelTol = 1e-8;

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

MatrixPencil MatrixPencil::polynomial(std::vector<CMatrix> coeffs, cplx center) {
  if (coeffs.empty()) throw DimensionError("pencil: no coefficients");
  const Eigen::Index n = coeffs.front().rows();
  for (const auto& c : coeffs)
    if (c.rows() != n || c.cols() != n) throw DimensionError("pencil: coefficients must be n x n");
  MatrixPencil p;
  p.dim_ = static_cast<std::size_t>(n);
  p.derivative_ = [coeffs, center, n](int order, cplx lambda) {
    CMatrix s = CMatrix::Zero(n, n);
    const cplx x = lambda - center;
    // Horner on the differentiated polynomial
    for (int j = static_cast<int>(coeffs.size()) - 1; j >= order; --j)
      s = (s * x + coeffs[static_cast<std::size_t>(j)] * (factorial(j) / factorial(j - order))).eval();
    return s;
  };
  p.eval_ = [d = p.derivative_](cplx lambda) { return d(0, lambda); };
  return p;
}

MatrixPencil MatrixPencil::linear(const CMatrix& A) {
  if (A.rows() != A.cols()) throw DimensionError("pencil: A must be square");
  const Eigen::Index n = A.rows();
  return polynomial({-A, CMatrix::Identity(n, n)});
}

MatrixPencil MatrixPencil::callable(std::size_t dim, Eval eval, Derivative derivative) {
  if (dim == 0) throw DimensionError("pencil: dimension must be positive");
  if (!eval) throw DimensionError("pencil: no evaluation function");
  MatrixPencil p;
  p.dim_ = dim;
  p.eval_ = std::move(eval);
  p.derivative_ = std::move(derivative);
  return p;
}

CMatrix MatrixPencil::checked(CMatrix m) const {
  const auto n = static_cast<Eigen::Index>(dim_);
  if (m.rows() != n || m.cols() != n)
    throw DimensionError("pencil: evaluation returned " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected " + std::to_string(n));
  return m;
}

CMatrix MatrixPencil::operator()(cplx lambda) const { return checked(eval_(lambda)); }

CMatrix MatrixPencil::derivative(int order, cplx lambda) const {
  if (order < 0) throw PreconditionError("pencil: negative derivative order");
  if (order == 0) return (*this)(lambda);
  if (derivative_) return checked(derivative_(order, lambda));
  const double s = std::max(1.0, std::abs(lambda));
  if (order == 1) {
    const double h = 1e-5 * s;
    return ((*this)(lambda + h) - (*this)(lambda - h)) / (2 * h);
  }
  // higher orders: trapezoid rule on the Cauchy integral over a small circle
  constexpr int N = 32;
  const double r = 0.1 * s;
  const auto n = static_cast<Eigen::Index>(dim_);
  CMatrix acc = CMatrix::Zero(n, n);
  for (int j = 0; j < N; ++j) {
    const cplx w = std::polar(1.0, 2 * kPi * j / N);
    acc += (*this)(lambda + r * w) * std::pow(w, -order);
  }
  return acc * (factorial(order) / (N * std::pow(r, order)));
}

MatrixPencil MatrixPencil::transformed(const CMatrix& S1, const CMatrix& S2) const {
  const auto n = static_cast<Eigen::Index>(dim_);
  if (S1.rows() != n || S1.cols() != n || S2.rows() != n || S2.cols() != n)
    throw DimensionError("pencil: transforms must be n x n");
  MatrixPencil p;
  p.dim_ = dim_;
  p.eval_ = [base = *this, S1, S2](cplx l) { return (S1 * base(l) * S2).eval(); };
  if (derivative_)
    p.derivative_ = [base = *this, S1, S2](int k, cplx l) {
      return (S1 * base.derivative(k, l) * S2).eval();
    };
  return p;
}

double chain_tolerance(const MatrixPencil& T, cplx lambda0) {
  return kChainTol * std::max(1.0, norm_inf(T(lambda0)));
}

namespace {

/// sum_{l=1}^{j} T^{(l)} f_{j-l} / l!, the part of chain equation j not involving f_j.
CVector chain_tail(const std::vector<CMatrix>& derivs, const std::vector<CVector>& f,
                   std::size_t j) {
  CVector s = CVector::Zero(derivs.front().rows());
  for (std::size_t l = 1; l <= j; ++l) s += derivs[l] * f[j - l] / factorial(static_cast<int>(l));
  return s;
}

std::vector<CMatrix> derivatives(const MatrixPencil& T, cplx lambda0, std::size_t count) {
  std::vector<CMatrix> d;
  for (std::size_t l = 0; l < count; ++l) d.push_back(T.derivative(static_cast<int>(l), lambda0));
  return d;
}

}  // namespace

std::vector<double> chain_residuals(const MatrixPencil& T, const JordanChain& chain) {
  if (chain.vectors.empty()) throw PreconditionError("chain_residuals: empty chain");
  const auto n = static_cast<Eigen::Index>(T.dim());
  for (const auto& v : chain.vectors)
    if (v.size() != n) throw DimensionError("chain_residuals: vector length differs from dim");
  if (chain.vectors.front().norm() == 0)
    throw PreconditionError("chain_residuals: f_0 must be nonzero");
  const auto d = derivatives(T, chain.basePoint, chain.length());
  std::vector<double> r;
  for (std::size_t j = 0; j < chain.length(); ++j)
    r.push_back((d[0] * chain.vectors[j] + chain_tail(d, chain.vectors, j)).norm());
  return r;
}

bool chain_is_valid(const MatrixPencil& T, const JordanChain& chain) {
  const double tol = chain_tolerance(T, chain.basePoint);
  const auto r = chain_residuals(T, chain);
  return std::all_of(r.begin(), r.end(), [tol](double x) { return x <= tol; });
}

long multiplicity(const MatrixPencil& T, cplx lambda0, double radius) {
  return multiplicity_at([&T](cplx l) { return det(T(l)); }, lambda0, radius);
}

CMatrix pencil_kernel(const MatrixPencil& T, cplx lambda0) {
  return kernel_basis(T(lambda0), kKernelTol);
}

ChainRank rank_of_eigenvector(const MatrixPencil& T, cplx lambda0, const CVector& f0,
                              long maxLen) {
  if (maxLen < 1) throw PreconditionError("rank_of_eigenvector: maxLen must be positive");
  if (f0.size() != static_cast<Eigen::Index>(T.dim()))
    throw DimensionError("rank_of_eigenvector: vector length differs from dim");
  const double tol = chain_tolerance(T, lambda0);
  const CMatrix T0 = T(lambda0);
  const double nf = f0.norm();
  if (nf == 0 || (T0 * f0).norm() > tol * nf)
    throw NotAnEigenvector("rank_of_eigenvector: |T(lambda0) f0| / |f0| = " +
                           std::to_string(nf == 0 ? 0.0 : (T0 * f0).norm() / nf) +
                           " exceeds the tolerance");

  Eigen::JacobiSVD<CMatrix> svd(T0, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kKernelTol);

  ChainRank out;
  out.chain.basePoint = lambda0;
  out.chain.vectors.push_back(f0 / nf);
  std::vector<CMatrix> d{T0};
  while (static_cast<long>(out.chain.length()) < maxLen) {
    const std::size_t j = out.chain.length();
    d.push_back(T.derivative(static_cast<int>(j), lambda0));
    const CVector rhs = -chain_tail(d, out.chain.vectors, j);
    const CVector fj = svd.solve(rhs);
    if ((T0 * fj - rhs).norm() > tol) break;
    out.chain.vectors.push_back(fj);
  }
  out.rank = static_cast<long>(out.chain.length());
  out.capped = out.rank >= maxLen;
  return out;
}

long multiplicity_from_chains(const MatrixPencil& T, cplx lambda0, long maxLen) {
  const CMatrix K = pencil_kernel(T, lambda0);
  long m = 0;
  for (Eigen::Index i = 0; i < K.cols(); ++i) m += rank_of_eigenvector(T, lambda0, K.col(i), maxLen).rank;
  return m;
}

}  // namespace evanskit
