#include "evanskit/discmodel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evanskit/errors.hpp"

namespace evanskit::disc {

namespace {

// Neumaier summation, real and imaginary parts separately
struct CompensatedSum {
  double re = 0, im = 0, cre = 0, cim = 0;

  static void add(double& s, double& c, double x) {
    const double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  void add(cplx z) {
    add(re, cre, z.real());
    add(im, cim, z.imag());
  }
  cplx value() const { return {re + cre, im + cim}; }
};

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den == 0 ? 0.0 : (n * sxy - sx * sy) / den;
}

}  // namespace

double DiscConfig::q_sup() const {
  if (!q) return 0;
  double m = 0;
  for (int i = 0; i <= 64; ++i) m = std::max(m, std::abs(q(i / 64.0)));
  return m;
}

void DiscConfig::validate() const {
  if (maxMode < 8) throw PreconditionError("disc: maxMode must be at least 8");
  if (!(jostAtol > 0 && jostAtol < 1e-2)) throw PreconditionError("disc: jost atol out of range");
  if (!std::isfinite(gamma)) throw PreconditionError("disc: gamma must be finite");
  if (q)
    for (int i = 0; i <= 16; ++i)
      if (!std::isfinite(q(i / 16.0))) throw PreconditionError("disc: potential is not finite");
}

SeriesValue bessel_series(long k, cplx lambda) {
  if (k < 0) k = -k;
  const cplx x = -lambda / 4.0;
  CompensatedSum sum;
  double magnitude = 0;
  cplx term = 1.0;
  for (long m = 0; m < 2000; ++m) {
    if (m > 0) term *= x / (double(m) * double(k + m));
    sum.add(term);
    magnitude += std::abs(term);
    const double ratio = std::abs(x) / (double(m + 1) * double(k + m + 1));
    if (ratio < 0.5 && std::abs(term) < 1e-18 * std::max(std::abs(sum.value()), 1e-300)) break;
  }
  return {sum.value(), magnitude};
}

cplx d_k(long k, cplx lambda) {
  if (k < 0) k = -k;
  const SeriesValue s = bessel_series(k, lambda);
  if (std::abs(s.value) < kModeSingularTol * s.magnitude) throw ModeDirichletEigenvalue(k, lambda);
  const SeriesValue s1 = bessel_series(k + 1, lambda);
  return double(k) - lambda / (2.0 * double(k + 1)) * s1.value / s.value;
}

JostValue jost_solution(const DiscConfig& cfg, long k, cplx lambda, cplx startScale) {
  if (k < 0) k = -k;
  if (startScale == 0.0) throw PreconditionError("jost: start scale must be nonzero");
  const double qs = cfg.q_sup();
  const double T = std::max(8.0, 0.5 * std::log((std::abs(lambda) + qs) / cfg.jostAtol));
  const double kk = double(k) * double(k);

  OdeSystem sys;
  sys.dimension = 2;
  sys.rhs = [&cfg, lambda, kk](double t, const CVector& y, CVector& dy) {
    const double r = std::exp(-t);
    const double qv = cfg.q ? cfg.q(r) : 0.0;
    dy(0) = y(1);
    dy(1) = (r * r * (qv - lambda) + kk) * y(0);
  };

  // normalized start e^{-|k|T} (1, -|k|): only the direction matters
  CVector y(2);
  y << startScale, -double(k) * startScale;
  const double growth = std::max({1.0, double(k), std::sqrt(std::abs(lambda) + qs)});
  const double h = 1.0 / growth;
  double t = T;
  while (t > 0) {
    const double next = std::max(0.0, t - h);
    y = propagate(sys, t, next, y, 1e-11, 1e-13);
    const double nrm = std::max(std::abs(y(0)), std::abs(y(1)));
    if (!(nrm > 0) || !std::isfinite(nrm))
      throw StiffnessError("jost: solution degenerated at t = " + std::to_string(next));
    y /= nrm;
    t = next;
  }
  return {y(0), y(1), T};
}

cplx jost_dtn(const DiscConfig& cfg, long k, cplx lambda) {
  const JostValue j = jost_solution(cfg, k, lambda);
  if (std::abs(j.v) < kModeSingularTol * std::max(std::abs(j.v), std::abs(j.vp)))
    throw ModeDirichletEigenvalue(k < 0 ? -k : k, lambda);
  return -j.vp / j.v;
}

cplx mode_dtn(const DiscConfig& cfg, long k, cplx lambda) {
  if (cfg.q_is_zero() && !cfg.forceJost) return d_k(k, lambda);
  return jost_dtn(cfg, k, lambda);
}

std::vector<double> mode_dirichlet_eigenvalues(const DiscConfig& cfg, long k, double lambdaMin,
                                               double lambdaMax, double step) {
  if (!(lambdaMin < lambdaMax) || !(step > 0))
    throw PreconditionError("mode_dirichlet_eigenvalues: bad search window");
  const auto value = [&](double lam) {
    const JostValue j = jost_solution(cfg, k, lam);
    return j.v.real() / std::hypot(std::abs(j.v), std::abs(j.vp));
  };
  std::vector<double> roots;
  double a = lambdaMin, fa = value(a);
  while (a < lambdaMax) {
    const double b = std::min(lambdaMax, a + step);
    const double fb = value(b);
    if (fa == 0) {
      roots.push_back(a);
    } else if ((fa < 0) != (fb < 0) && fb != 0) {
      double lo = a, hi = b, flo = fa;
      for (int it = 0; it < 80 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = value(mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  if (fa == 0 && (roots.empty() || roots.back() != a)) roots.push_back(a);
  return roots;
}

ModeSequence mode_ratios(const DiscConfig& cfg, cplx lambda) {
  cfg.validate();
  ModeSequence out;
  out.lambda = lambda;
  out.byAbsMode.resize(static_cast<std::size_t>(cfg.maxMode + 1));
  for (long k = 0; k <= cfg.maxMode; ++k) {
    const cplx den = mode_dtn(cfg, k, lambda) + cfg.mu;
    const cplx dk = den - cfg.mu;
    if (std::abs(den) < 1e-12 * std::max(1.0, std::abs(dk))) throw RobinEigenvalue(lambda, k);
    const cplx num = mode_dtn(cfg, k, lambda - cfg.gamma) + cfg.muHat;
    out.byAbsMode[static_cast<std::size_t>(k)] = num == den ? cplx(1.0) : num / den;
  }
  return out;
}

SchattenTable schatten_diag(const DiscConfig& cfg, cplx lambda, double p) {
  if (!(p > 0)) throw PreconditionError("schatten_diag: p must be positive");
  const ModeSequence r = mode_ratios(cfg, lambda);
  const long K = r.max_mode();
  SchattenTable t;
  t.lambda = lambda;
  t.p = p;
  double two = 0, one = 0;
  for (long k = 0; k <= K; ++k) {
    const double a = std::pow(std::abs(r(k) - 1.0), p);
    const double inc = k == 0 ? a : 2 * a;
    two += inc;
    one += a;
    t.partialSums.push_back(two);
    t.increments.push_back(inc);
    t.oneSidedSums.push_back(one);
  }

  std::vector<double> lx, ly, sx, sy;
  for (long k = std::max(1L, K / 4); k <= K; ++k) {
    const double a = t.increments[static_cast<std::size_t>(k)];
    if (a > 0) {
      lx.push_back(std::log(double(k)));
      ly.push_back(std::log(a));
    }
    sx.push_back(std::log(double(k)));
    sy.push_back(t.oneSidedSums[static_cast<std::size_t>(k)]);
  }
  t.decayExponent = lx.size() >= 2 ? fit_slope(lx, ly) : 0.0;
  t.decayMatches = lx.size() >= 2 && std::abs(t.decayExponent + p) <= 0.15;
  t.logSlope = fit_slope(sx, sy);
  return t;
}

}  // namespace evanskit::disc
