#include "evanskit/potential.hpp"

#include <algorithm>

namespace evanskit {

ScalarProfile ScalarProfile::constant(cplx c) { return polynomial({c}); }

ScalarProfile ScalarProfile::polynomial(std::vector<cplx> coeffs) {
  ScalarProfile p;
  while (!coeffs.empty() && coeffs.back() == cplx(0)) coeffs.pop_back();
  p.coeffs_ = std::move(coeffs);
  return p;
}

ScalarProfile ScalarProfile::table(std::vector<double> xs, std::vector<cplx> values) {
  const std::size_t m = xs.size();
  if (m < 2 || values.size() != m)
    throw DimensionError("table profile needs at least two nodes and matching values");
  for (std::size_t i = 1; i < m; ++i)
    if (!(xs[i] > xs[i - 1])) throw DimensionError("table nodes must be strictly increasing");

  ScalarProfile p;
  p.kind_ = Kind::Table;
  p.xs_ = std::move(xs);
  p.values_ = std::move(values);

  // natural spline: tridiagonal solve for the second derivatives
  std::vector<cplx> m2(m, 0.0), u(m, 0.0);
  const auto& x = p.xs_;
  const auto& y = p.values_;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double sig = (x[i] - x[i - 1]) / (x[i + 1] - x[i - 1]);
    const cplx q = sig * m2[i - 1] + 2.0;
    m2[i] = (sig - 1.0) / q;
    const cplx d = (y[i + 1] - y[i]) / (x[i + 1] - x[i]) - (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
    u[i] = (6.0 * d / (x[i + 1] - x[i - 1]) - sig * u[i - 1]) / q;
  }
  m2[m - 1] = 0.0;
  for (std::size_t k = m - 1; k-- > 0;) m2[k] = m2[k] * m2[k + 1] + u[k];
  p.second_ = std::move(m2);
  return p;
}

cplx ScalarProfile::operator()(double x) const {
  if (kind_ == Kind::Polynomial) {
    cplx acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  if (x <= xs_.front()) return values_.front();
  if (x >= xs_.back()) return values_.back();
  const auto hi = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
  const std::size_t lo = hi - 1;
  const double h = xs_[hi] - xs_[lo];
  const double a = (xs_[hi] - x) / h, b = (x - xs_[lo]) / h;
  return a * values_[lo] + b * values_[hi] +
         ((a * a * a - a) * second_[lo] + (b * b * b - b) * second_[hi]) * (h * h) / 6.0;
}

bool ScalarProfile::is_zero() const {
  if (kind_ == Kind::Polynomial) return coeffs_.empty();
  return std::all_of(values_.begin(), values_.end(), [](cplx v) { return v == cplx(0); });
}

bool ScalarProfile::is_real() const {
  const auto& v = kind_ == Kind::Polynomial ? coeffs_ : values_;
  return std::all_of(v.begin(), v.end(), [](cplx z) { return z.imag() == 0.0; });
}

ScalarProfile ScalarProfile::shifted(cplx c) const {
  if (kind_ == Kind::Polynomial) {
    auto coeffs = coeffs_;
    if (coeffs.empty()) coeffs.push_back(0.0);
    coeffs[0] += c;
    return polynomial(std::move(coeffs));
  }
  auto vals = values_;
  for (auto& v : vals) v += c;
  return table(xs_, std::move(vals));
}

MatrixPotential::MatrixPotential(std::size_t n) : n_(n), entries_(n * n) {}

MatrixPotential MatrixPotential::diagonal(std::vector<ScalarProfile> entries) {
  MatrixPotential q(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) q.at(i, i) = std::move(entries[i]);
  return q;
}

CMatrix MatrixPotential::operator()(double x) const {
  CMatrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = entries_[i * n_ + j](x);
  return m;
}

std::function<CMatrix(double)> MatrixPotential::as_function() const {
  return [q = *this](double x) { return q(x); };
}

}  // namespace evanskit
