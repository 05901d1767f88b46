#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "evanskit/detengine.hpp"
#include "evanskit/errors.hpp"
#include "test_support.hpp"

using namespace evanskit;

TEST_CASE("order range") {
  CHECK_THROWS_AS(DetOrder(0), PreconditionError);
  CHECK_THROWS_AS(DetOrder(9), PreconditionError);
  CHECK(DetOrder(8).value() == 8);
}

TEST_CASE("p = 1 is the ordinary determinant") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix B = testing::random_matrix(rng, 4, 4);
    const cplx a = det_p_finite(B, DetOrder(1));
    const cplx b = (CMatrix::Identity(4, 4) + B).determinant();
    CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
  }
}

TEST_CASE("hand values") {
  CMatrix one(1, 1);
  one << 1.0;
  CHECK(std::abs(det_p_finite(one, DetOrder(2)) - 2.0 * std::exp(-1.0)) < 1e-15);
  CHECK(std::abs(det_p_finite(one, DetOrder(2)) - 0.735758882) < 1e-9);
  // p = 3: 2 exp(-1 + 1/2)
  CHECK(std::abs(det_p_finite(one, DetOrder(3)) - 2.0 * std::exp(-0.5)) < 1e-15);
  for (int p = 1; p <= 8; ++p) CHECK(det_p_finite(CMatrix::Zero(3, 3), DetOrder(p)) == cplx(1.0));
  CHECK_THROWS_AS(det_p_finite(CMatrix::Zero(2, 3), DetOrder(2)), DimensionError);
}

TEST_CASE("finite rank identity") {
  std::mt19937_64 rng(5);
  const CMatrix F = testing::random_matrix(rng, 5, 5);
  const DetCheck c = det_p_identity_check(F, DetOrder(3));
  CHECK(c.residual <= 1e-10 * c.scale);
  for (int p = 1; p <= 8; ++p) {
    const DetCheck r = det_p_identity_check(0.3 * F, DetOrder(p));
    CHECK(r.residual <= 1e-10 * r.scale);
  }

  CMatrix nil(2, 2);
  nil << 0, 1, 0, 0;
  for (int p = 1; p <= 8; ++p) {
    const DetCheck r = det_p_identity_check(nil, DetOrder(p));
    CHECK(std::abs(r.lhs - 1.0) < 1e-15);
    CHECK(std::abs(r.rhs - 1.0) < 1e-15);
  }
  CHECK(det_p_identity_check(CMatrix::Zero(4, 4), DetOrder(4)).residual == 0.0);
}

TEST_CASE("commuting the factors") {
  std::mt19937_64 rng(9);
  const CMatrix A1 = testing::random_matrix(rng, 3, 5), A2 = testing::random_matrix(rng, 5, 3);
  const DetCheck c = det_p_commute_check(A1, A2, DetOrder(2));
  CHECK(c.residual <= 1e-9 * c.scale);
  for (int p = 1; p <= 5; ++p) {
    const DetCheck r = det_p_commute_check(0.2 * A1, A2, DetOrder(p));
    CHECK(r.residual <= 1e-9 * r.scale);
  }
  const DetCheck z = det_p_commute_check(A1, CMatrix::Zero(5, 3), DetOrder(3));
  CHECK(z.lhs == cplx(1.0));
  CHECK(z.rhs == cplx(1.0));

  const CMatrix S = testing::random_well_conditioned(rng, 4), B = testing::random_matrix(rng, 4, 4);
  const DetCheck sim = det_p_commute_check(S, S.inverse() * B, DetOrder(2));
  CHECK(sim.residual <= 1e-10 * sim.scale);

  CHECK_THROWS_AS(det_p_commute_check(A1, A1, DetOrder(2)), DimensionError);
}

TEST_CASE("similarity invariance and p = 1 multiplicativity") {
  std::mt19937_64 rng(21);
  const CMatrix B = testing::random_matrix(rng, 4, 4), S = testing::random_well_conditioned(rng, 4);
  const CMatrix I = CMatrix::Identity(4, 4);
  const CMatrix conj = S.inverse() * (I + B) * S - I;
  for (int p = 1; p <= 4; ++p) {
    const cplx a = det_p_finite(B, DetOrder(p)), b = det_p_finite(conj, DetOrder(p));
    CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
  }
  const CMatrix B2 = testing::random_matrix(rng, 4, 4);
  const cplx lhs = det_p_finite((I + B) * (I + B2) - I, DetOrder(1));
  const cplx rhs = det_p_finite(B, DetOrder(1)) * det_p_finite(B2, DetOrder(1));
  CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
}

namespace {

ModeSequence harmonic_family(long K, cplx c) {
  ModeSequence m;
  for (long k = 0; k <= K; ++k) m.byAbsMode.push_back(1.0 + c / double(k + 1));
  return m;
}

}  // namespace

TEST_CASE("mode determinants") {
  ModeSequence ones;
  ones.byAbsMode.assign(33, 1.0);
  const ModeDeterminant u = det_p_modes(ones, DetOrder(2), 1e-12);
  CHECK(u.value == cplx(1.0));
  CHECK(u.bound == 0.0);

  CHECK_THROWS_AS(det_p_modes(ones, DetOrder(1), 1e-6), PreconditionError);

  // z_k = c / (k + 1): exact infinite product for p = 2 from
  // prod_{n>=1} (1 + c/n) e^{-c/n} = e^{-gamma c} / Gamma(1 + c)
  const cplx c(0.3, 0.0);
  const double euler = 0.57721566490153286;
  const double h = std::exp(-euler * c.real()) / std::tgamma(1.0 + c.real());
  // two-sided family: k = 0 once, k >= 1 twice, so the product is h^2 / (1 + c) e^{c}
  const cplx exact = h * h / ((1.0 + c) * std::exp(-c));
  const ModeDeterminant d = det_p_modes(harmonic_family(4000, c), DetOrder(2), 1e-3);
  CHECK(std::abs(d.value - exact) <= d.bound);
  CHECK(d.bound < 1e-3);

  try {
    det_p_modes(harmonic_family(40, c), DetOrder(2), 1e-8);
    FAIL("expected a truncation error");
  } catch (const TruncationError& e) {
    CHECK(e.suggestedModes() > 40);
  }
}
