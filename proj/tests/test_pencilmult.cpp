#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "evanskit/contour.hpp"
#include "evanskit/pencilmult.hpp"
#include "test_support.hpp"

using namespace evanskit;

namespace {

CMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

CVector vec(std::initializer_list<cplx> xs) {
  CVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (cplx x : xs) v(i++) = x;
  return v;
}

// diag(1, lambda^2)
MatrixPencil example_diag() {
  return MatrixPencil::polynomial({mat2(1, 0, 0, 0), mat2(0, 0, 0, 0), mat2(0, 0, 0, 1)});
}

// [[lambda, 1], [0, lambda]]
MatrixPencil example_jordan() {
  return MatrixPencil::polynomial({mat2(0, 1, 0, 0), mat2(1, 0, 0, 1)});
}

}  // namespace

TEST_CASE("polynomial evaluation and exact derivatives") {
  const auto T = example_diag();
  CHECK((T(cplx(2, 1)) - mat2(1, 0, 0, cplx(2, 1) * cplx(2, 1))).norm() < 1e-15);
  CHECK((T.derivative(1, 3.0) - mat2(0, 0, 0, 6)).norm() < 1e-15);
  CHECK((T.derivative(2, 3.0) - mat2(0, 0, 0, 2)).norm() < 1e-15);
  CHECK(T.derivative(3, 3.0).norm() == 0.0);

  const auto shifted = MatrixPencil::polynomial({mat2(0, 0, 0, 0), mat2(1, 0, 0, 1)}, 2.0);
  CHECK((shifted(5.0) - mat2(3, 0, 0, 3)).norm() < 1e-15);
}

TEST_CASE("numerical derivatives of a callable family") {
  const auto T = MatrixPencil::callable(2, [](cplx l) {
    return mat2(std::sin(l), std::exp(l), l * l * l, 1.0);
  });
  CHECK(!T.exact_derivatives());
  const cplx l0(0.4, 0.2);
  CHECK((T.derivative(1, l0) - mat2(std::cos(l0), std::exp(l0), 3.0 * l0 * l0, 0)).norm() < 1e-9);
  CHECK((T.derivative(2, l0) - mat2(-std::sin(l0), std::exp(l0), 6.0 * l0, 0)).norm() < 1e-9);
  CHECK((T.derivative(3, l0) - mat2(-std::cos(l0), std::exp(l0), 6.0, 0)).norm() < 1e-9);
}

TEST_CASE("chain residuals") {
  const auto D = example_diag();
  JordanChain c{0.0, {vec({0, 1}), vec({0, 0})}};
  for (double r : chain_residuals(D, c)) CHECK(r == 0.0);
  CHECK(chain_is_valid(D, c));
  c.vectors[1] = vec({0, 1});  // f_1 = f_0 is also allowed
  CHECK(chain_is_valid(D, c));

  // third equation: D(0) f_2 + D'(0) f_1 + D''(0) f_0 / 2 = (x, 1) for f_2 = (x, y)
  for (const CVector& f2 : {vec({0, 0}), vec({0, 5}), vec({1, 0})}) {
    JordanChain c3{0.0, {vec({0, 1}), vec({0, 0}), f2}};
    const auto r = chain_residuals(D, c3);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == 0.0);
    CHECK(r[1] == 0.0);
    CHECK(std::abs(r[2] - std::hypot(std::abs(f2(0)), 1.0)) < 1e-15);
    CHECK(!chain_is_valid(D, c3));
  }

  // linear pencil: (A - l0) f_1 = f_0 classical chain
  CMatrix A(3, 3);
  A << 2, 1, 0, 0, 2, 1, 0, 0, 2;
  const JordanChain lin{2.0, {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}};
  for (double r : chain_residuals(MatrixPencil::linear(A), lin)) CHECK(r < 1e-15);

  CHECK_THROWS_AS(chain_residuals(D, JordanChain{0.0, {}}), PreconditionError);
  CHECK_THROWS_AS(chain_residuals(D, JordanChain{0.0, {vec({0, 0})}}), PreconditionError);
  CHECK_THROWS_AS(chain_residuals(D, JordanChain{0.0, {vec({1, 0, 0})}}), DimensionError);
}

TEST_CASE("multiplicity of the worked examples") {
  CHECK(multiplicity(example_diag(), 0.0, 0.5) == 2);
  CHECK(multiplicity(example_jordan(), 0.0, 0.5) == 2);
  CMatrix A = CMatrix::Zero(3, 3);
  A(2, 2) = 3;
  CHECK(multiplicity(MatrixPencil::linear(A), 0.0, 0.5) == 2);
  CHECK(multiplicity(MatrixPencil::linear(A), 3.0, 0.5) == 1);
  CHECK(multiplicity(MatrixPencil::linear(A), 1.5, 0.5) == 0);
  CHECK_THROWS_AS(multiplicity(example_diag(), 0.5, 0.5), OnSpectrum);
}

TEST_CASE("rank of eigenvectors") {
  CHECK(rank_of_eigenvector(example_diag(), 0.0, vec({0, 1}), 10).rank == 2);
  CHECK(rank_of_eigenvector(example_jordan(), 0.0, vec({1, 0}), 10).rank == 2);
  CHECK_THROWS_AS(rank_of_eigenvector(example_diag(), 0.0, vec({1, 0}), 10), NotAnEigenvector);
  CHECK_THROWS_AS(rank_of_eigenvector(example_jordan(), 0.0, vec({0, 1}), 10), NotAnEigenvector);

  std::mt19937_64 rng(3);
  const CMatrix S = testing::random_well_conditioned(rng, 4);
  CMatrix D = CMatrix::Zero(4, 4);
  D.diagonal() << 1.0, 2.0, 2.0, -1.0;
  const auto T = MatrixPencil::linear(S * D * S.inverse());
  for (Eigen::Index i = 0; i < 4; ++i) {
    const auto r = rank_of_eigenvector(T, D(i, i), S.col(i), 10);
    CHECK(r.rank == 1);
    CHECK(!r.capped);
  }

  // chain found by the search satisfies the chain equations
  CMatrix J = CMatrix::Zero(4, 4);
  J << 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 5;
  const auto TJ = MatrixPencil::linear(S * J * S.inverse());
  const auto r = rank_of_eigenvector(TJ, 1.0, S.col(0), 10);
  CHECK(r.rank == 3);
  CHECK(chain_is_valid(TJ, r.chain));

  const auto capped = rank_of_eigenvector(TJ, 1.0, S.col(0), 2);
  CHECK(capped.rank == 2);
  CHECK(capped.capped);
}

TEST_CASE("sum rule") {
  CHECK(multiplicity_from_chains(example_diag(), 0.0, 10) == 2);
  CHECK(multiplicity_from_chains(example_jordan(), 0.0, 10) == 2);
  CMatrix A = CMatrix::Zero(3, 3);
  A(2, 2) = 3;
  CHECK(multiplicity_from_chains(MatrixPencil::linear(A), 0.0, 10) == 2);

  // non-polynomial family with numerical derivatives: diag(sin l, l^2, e^l)
  const auto T = MatrixPencil::callable(3, [](cplx l) {
    CMatrix m = CMatrix::Zero(3, 3);
    m.diagonal() << std::sin(l), l * l, std::exp(l);
    return m;
  });
  CHECK(multiplicity(T, 0.0, 0.5) == 3);
  CHECK(rank_of_eigenvector(T, 0.0, vec({1, 0, 0}), 10).rank == 1);
  CHECK(rank_of_eigenvector(T, 0.0, vec({0, 1, 0}), 10).rank == 2);
}

TEST_CASE("linear pencils match eigenvalue clustering") {
  std::mt19937_64 rng(17);
  for (Eigen::Index n = 1; n <= 6; ++n) {
    const CMatrix A = testing::random_matrix(rng, n, n);
    const auto ev = eig(A);
    const auto T = MatrixPencil::linear(A);
    for (cplx mu : ev) {
      double gap = 1e300;
      long cluster = 0;
      for (cplx nu : ev) {
        if (std::abs(nu - mu) < 1e-6)
          ++cluster;
        else
          gap = std::min(gap, std::abs(nu - mu));
      }
      const double radius = std::min(0.5, gap / 2);
      CHECK(multiplicity(T, mu, radius) == cluster);
      CHECK(winding([&](cplx l) { return (l * CMatrix::Identity(n, n) - A).determinant(); },
                    Contour::circle(mu, radius))
                .winding == cluster);
    }
  }

  // Jordan structure: blocks of size 3 and 2 at 1, simple eigenvalue at -2
  CMatrix J = CMatrix::Zero(6, 6);
  J.diagonal() << 1, 1, 1, 1, 1, -2;
  J(0, 1) = J(1, 2) = J(3, 4) = 1;
  const CMatrix S = testing::random_well_conditioned(rng, 6);
  const auto T = MatrixPencil::linear(S * J * S.inverse());
  CHECK(multiplicity(T, 1.0, 0.5) == 5);
  CHECK(multiplicity(T, -2.0, 0.5) == 1);
  CHECK(rank_of_eigenvector(T, 1.0, S.col(0), 10).rank == 3);
  CHECK(rank_of_eigenvector(T, 1.0, S.col(3), 10).rank == 2);
}

TEST_CASE("equivalence invariance") {
  std::mt19937_64 rng(29);
  const CMatrix S1 = testing::random_well_conditioned(rng, 2),
                S2 = testing::random_well_conditioned(rng, 2);
  for (const auto& T : {example_diag(), example_jordan()}) {
    const auto U = T.transformed(S1, S2);
    CHECK(multiplicity(U, 0.0, 0.5) == multiplicity(T, 0.0, 0.5));
    CHECK(multiplicity_from_chains(U, 0.0, 10) == 2);
  }
  CHECK_THROWS_AS(example_diag().transformed(CMatrix::Identity(3, 3), S2), DimensionError);
}
