#include "evanskit/detengine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evanskit/errors.hpp"

namespace evanskit {

DetOrder::DetOrder(int p) : p_(p) {
  if (p < 1 || p > kMax)
    throw PreconditionError("det order p = " + std::to_string(p) + " outside 1..8");
}

namespace {

cplx correction_sum(cplx z, int p) {
  cplx s = 0, zk = 1;
  for (int k = 1; k < p; ++k) {
    zk *= z;
    s += ((k % 2) ? -1.0 : 1.0) * zk / double(k);
  }
  return s;
}

DetCheck make_check(cplx a, cplx b) {
  return {a, b, std::abs(a - b), std::max({1.0, std::abs(a), std::abs(b)})};
}

}  // namespace

cplx det_p_log_factor(cplx z, DetOrder p) { return std::log(1.0 + z) + correction_sum(z, p.value()); }

cplx det_p_finite(const CMatrix& B, DetOrder p) {
  if (B.rows() != B.cols()) throw DimensionError("det_p_finite: matrix must be square");
  if (B.size() == 0) return 1.0;
  const std::vector<cplx> mu = eig(B);
  cplx prod = 1.0, corr = 0.0;
  for (const cplx m : mu) {
    prod *= 1.0 + m;
    corr += correction_sum(m, p.value());
  }
  return prod * std::exp(corr);
}

DetCheck det_p_identity_check(const CMatrix& F, DetOrder p) {
  if (F.rows() != F.cols()) throw DimensionError("det_p_identity_check: matrix must be square");
  const Eigen::Index n = F.rows();
  cplx s = 0;
  CMatrix Fk = CMatrix::Identity(n, n);
  for (int k = 1; k < p.value(); ++k) {
    Fk = Fk * F;
    s += ((k % 2) ? -1.0 : 1.0) * Fk.trace() / double(k);
  }
  const cplx rhs = (n == 0 ? cplx(1.0) : det(CMatrix::Identity(n, n) + F)) * std::exp(s);
  return make_check(det_p_finite(F, p), rhs);
}

DetCheck det_p_commute_check(const CMatrix& A1, const CMatrix& A2, DetOrder p) {
  if (A1.cols() != A2.rows() || A1.rows() != A2.cols())
    throw DimensionError("det_p_commute_check: shapes " + std::to_string(A1.rows()) + "x" +
                         std::to_string(A1.cols()) + " and " + std::to_string(A2.rows()) + "x" +
                         std::to_string(A2.cols()) + " do not compose both ways");
  return make_check(det_p_finite(A1 * A2, p), det_p_finite(A2 * A1, p));
}

ModeDeterminant det_p_modes(const ModeSequence& ratios, DetOrder p, double tailTol) {
  const int pp = p.value();
  if (pp < 2) throw PreconditionError("det_p_modes: the mode family is not trace class, need p >= 2");
  if (!(tailTol > 0)) throw PreconditionError("det_p_modes: tail tolerance must be positive");
  const long K = ratios.max_mode();
  if (K < 8) throw PreconditionError("det_p_modes: need at least 8 modes");

  cplx logSum = det_p_log_factor(ratios(0) - 1.0, p);
  for (long k = 1; k <= K; ++k) logSum += 2.0 * det_p_log_factor(ratios(k) - 1.0, p);

  double C = 0;
  for (long k = (3 * K) / 4; k <= K; ++k) C = std::max(C, double(k) * std::abs(ratios(k) - 1.0));
  C *= 1.25;

  ModeDeterminant out;
  out.modes = K;
  out.tailConstant = C;
  out.value = std::exp(logSum);
  if (C == 0) {
    out.bound = 0;
    return out;
  }
  const double q = C / double(K);
  const auto suggest = [&](double factor) {
    return static_cast<long>(std::ceil(double(K) * std::max(2.0, factor)));
  };
  if (q >= 0.5)
    throw TruncationError("det_p_modes: modes not yet in the decay regime (C/K = " +
                              std::to_string(q) + "); try K >= " + std::to_string(suggest(4 * q)),
                          suggest(4 * q));
  const double tail = 2.0 * std::pow(C, pp) * std::pow(double(K), 1.0 - pp) /
                      (pp * (pp - 1.0) * (1.0 - q));
  out.bound = std::abs(out.value) * std::expm1(tail);
  if (out.bound > tailTol) {
    const double factor = 1.1 * std::pow(out.bound / tailTol, 1.0 / (pp - 1.0));
    const long k2 = suggest(factor);
    throw TruncationError("det_p_modes: tail bound " + std::to_string(out.bound) +
                              " exceeds tolerance at K = " + std::to_string(K) +
                              "; try K >= " + std::to_string(k2),
                          k2);
  }
  return out;
}

}  // namespace evanskit
