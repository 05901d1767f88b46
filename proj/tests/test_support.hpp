#pragma once

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "evanskit/numkernel.hpp"

namespace evanskit::testing {

inline CMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols,
                             double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = cplx(g(rng), g(rng));
  return m;
}

/// Identity plus a small perturbation; condition number stays modest.
inline CMatrix random_well_conditioned(std::mt19937_64& rng, Eigen::Index n) {
  return CMatrix::Identity(n, n) + random_matrix(rng, n, n, 0.3 / std::sqrt(double(n)));
}

inline CMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
  CMatrix a = random_matrix(rng, n, n, scale);
  return 0.5 * (a + a.adjoint());
}

/// Greedy multiset distance: max over a of min over unmatched b of |a - b|.
inline double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return 1e300;
  double worst = 0;
  for (const cplx& z : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [&](cplx u, cplx v) { return std::abs(u - z) < std::abs(v - z); });
    worst = std::max(worst, std::abs(*it - z));
    b.erase(it);
  }
  return worst;
}

}  // namespace evanskit::testing
