#include "evanskit/intervalmodel.hpp"

#include <cmath>

namespace evanskit::interval {

Theta2x2 Theta2x2::from_matrix(const CMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw DimensionError("Theta2x2 needs a 2x2 matrix");
  return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

CMatrix Theta2x2::matrix() const {
  CMatrix m(2, 2);
  m << t11, t12, t21, t22;
  return m;
}

namespace {
constexpr double kSeriesCutoff = 1e-6;
}

cplx cosqrt(cplx lambda) {
  if (std::abs(lambda) < kSeriesCutoff) return 1.0 - lambda / 2.0 + lambda * lambda / 24.0;
  return std::cos(std::sqrt(lambda));
}

cplx sincqrt(cplx lambda) {
  if (std::abs(lambda) < kSeriesCutoff) return 1.0 - lambda / 6.0 + lambda * lambda / 120.0;
  const cplx w = std::sqrt(lambda);
  return std::sin(w) / w;
}

CMatrix m_closed(cplx lambda) {
  const cplx s = sincqrt(lambda);
  if (std::abs(s) < 1e-12) throw DirichletEigenvalue(lambda);
  const cplx a = cosqrt(lambda) / s, b = 1.0 / s;
  CMatrix m(2, 2);
  m << a, -b, -b, a;
  return m;
}

cplx det_n_theta(cplx lambda, const Theta2x2& theta) {
  const cplx s = sincqrt(lambda), c = cosqrt(lambda);
  const cplx t1 = (theta.det() - lambda) * s, t2 = theta.trace() * c, t3 = theta.t12 + theta.t21;
  const cplx den = t1 + t2 + t3;
  const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
  if (std::abs(den) <= 1e-12 * scale) throw RobinEigenvalue(lambda);
  return s / den;
}

double dirichlet_eigenvalue(int k) { return (k * kPi) * (k * kPi); }

CMatrix m_closed_symmetric(cplx lambda) {
  try {
    return 0.5 * m_closed(4.0 * lambda);
  } catch (const DirichletEigenvalue&) {
    throw DirichletEigenvalue(lambda);
  }
}

cplx det_n_theta_symmetric(cplx lambda, const Theta2x2& theta) {
  const Theta2x2 doubled{2.0 * theta.t11, 2.0 * theta.t12, 2.0 * theta.t21, 2.0 * theta.t22};
  try {
    return 4.0 * det_n_theta(4.0 * lambda, doubled);
  } catch (const RobinEigenvalue&) {
    throw RobinEigenvalue(lambda);
  }
}

double dirichlet_eigenvalue_symmetric(int k) { return dirichlet_eigenvalue(k) / 4.0; }

}  // namespace evanskit::interval
