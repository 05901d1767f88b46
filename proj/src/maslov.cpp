#include "evanskit/maslov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "evanskit/contour.hpp"
#include "evanskit/parallel.hpp"

namespace evanskit {

namespace {

constexpr double kKernelTol = 1e-6;
constexpr double kAmbiguousTol = 1e-4;
constexpr double kMaxMove = 0.5;

std::vector<cplx> w_eigenvalues(const Schrodinger1DProblem& p, double lambda,
                                const PropagationOptions& opts) {
  return eig(souriau(p, lambda, opts).W);
}

/// Greedy nearest-neighbour matching of b to a; returns b reordered.
std::vector<cplx> match(const std::vector<cplx>& a, std::vector<cplx> b) {
  std::vector<cplx> out;
  for (const cplx z : a) {
    auto it = std::min_element(b.begin(), b.end(), [z](cplx u, cplx v) {
      return std::abs(u - z) < std::abs(v - z);
    });
    out.push_back(*it);
    b.erase(it);
  }
  return out;
}

double max_move(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

bool crosses(cplx a, cplx b);

/// True when some match is not clearly closer than a runner-up candidate
/// whose pairing would change the crossing verdict.
bool ambiguous(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d1 = std::abs(a[k] - b[k]);
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (j == k || std::abs(b[j] - b[k]) < 1e-6) continue;
      if (std::abs(a[k] - b[j]) < 2 * d1 && crosses(a[k], b[j]) != crosses(a[k], b[k]))
        return true;
    }
  }
  return false;
}

bool crosses(cplx a, cplx b) {
  return a.real() < 0 && b.real() < 0 && ((a.imag() < 0) != (b.imag() < 0));
}

std::vector<double> sorted_phases(const std::vector<cplx>& ev) {
  std::vector<double> ph;
  for (const cplx z : ev) ph.push_back(std::arg(z));
  std::sort(ph.begin(), ph.end());
  return ph;
}

struct Bracket {
  double a, b;
  cplx ma, mb;
};

}  // namespace

SouriauSample souriau(const Schrodinger1DProblem& p, cplx lambda, const PropagationOptions& opts) {
  p.validate();
  const FrameMatrices f = frame(p, lambda, opts);
  const Eigen::Index m = f.X.rows();
  const CMatrix I = CMatrix::Identity(m, m);
  const cplx i(0, 1);
  SouriauSample s;
  s.lambda = lambda;
  s.W = 2.0 * i * robin_to_dirichlet(f, i * I) - I;
  if (smallest_pivot(f.Z) > kSingularTol * norm_inf(f.Z) &&
      smallest_pivot(f.X - i * f.Z) > kSingularTol * norm_inf(f.X - i * f.Z)) {
    // (N + i)(N - i)^{-1} with N = X Z^{-1} equals (X + iZ)(X - iZ)^{-1}
    const CMatrix cayley = solve_right(f.X + i * f.Z, f.X - i * f.Z, 0.0);
    s.cayleyMismatch = (cayley - s.W).norm() / std::max(1.0, s.W.norm());
  }
  return s;
}

void require_symmetric(const Schrodinger1DProblem& p) {
  p.validate();
  const auto hermitian = [](const CMatrix& m) {
    return (m - m.adjoint()).norm() <= 1e-12 * std::max(1.0, m.norm());
  };
  if (!hermitian(p.thetaPlus) || !hermitian(p.thetaMinus))
    throw PreconditionError("spectral flow needs Hermitian Robin matrices");
  for (int j = 0; j <= 16; ++j) {
    const double x = -1.0 + j / 8.0;
    if (!hermitian(p.Q(x)))
      throw PreconditionError("spectral flow needs a Hermitian potential; Q(" + std::to_string(x) +
                              ") is not");
  }
}

long kernel_dim_at(const Schrodinger1DProblem& p, double lambda, const PropagationOptions& opts) {
  const auto ev = w_eigenvalues(p, lambda, opts);
  long count = 0;
  for (const cplx z : ev) {
    const double d = std::abs(z + 1.0);
    if (d < kKernelTol)
      ++count;
    else if (d < kAmbiguousTol)
      throw ResolutionError("kernel_dim_at: eigenvalue of W at distance " + std::to_string(d) +
                            " from -1 at lambda = " + std::to_string(lambda));
  }
  const double radius = 1e-3 * std::max(1.0, std::abs(lambda));
  const auto f = [&](cplx l) {
    const CMatrix W = souriau(p, l, opts).W;
    return det(CMatrix::Identity(W.rows(), W.cols()) + W);
  };
  const long wound = multiplicity_at(f, lambda, radius);
  if (wound != count)
    throw ResolutionError("kernel_dim_at: " + std::to_string(count) +
                          " eigenvalues at -1 but det(I + W) winds " + std::to_string(wound) +
                          " times near lambda = " + std::to_string(lambda));
  return count;
}

FlowTrace spectral_flow(const Schrodinger1DProblem& p, double lambda1, double lambda2,
                        double gridStep, const FlowOptions& opts) {
  if (!(lambda1 < lambda2)) throw PreconditionError("spectral_flow: need lambda1 < lambda2");
  if (!(gridStep > 0)) throw PreconditionError("spectral_flow: grid step must be positive");
  require_symmetric(p);
  const auto& po = opts.propagation;
  for (double e : {lambda1, lambda2})
    if (kernel_dim_at(p, e, po) != 0)
      throw OnSpectrum("spectral_flow: endpoint " + std::to_string(e) +
                           " is a Dirichlet eigenvalue",
                       e);

  FlowTrace trace;
  const auto cells = static_cast<std::size_t>(std::ceil((lambda2 - lambda1) / gridStep));
  for (std::size_t i = 0; i <= cells; ++i)
    trace.grid.push_back(i == cells ? lambda2 : lambda1 + double(i) * gridStep);
  std::vector<std::vector<cplx>> ev(trace.grid.size());
  parallel_for(trace.grid.size(), opts.threads,
               [&](std::size_t i) { ev[i] = w_eigenvalues(p, trace.grid[i], po); });
  for (const auto& e : ev) trace.phases.push_back(sorted_phases(e));

  std::vector<Bracket> brackets;
  // walks (a, b), bisecting until every eigenvalue moves less than kMaxMove
  // and the matching between the two ends is unambiguous
  const auto walk = [&](auto&& self, double a, const std::vector<cplx>& ea, double b,
                        const std::vector<cplx>& ebRaw, int depth) -> void {
    const auto eb = match(ea, ebRaw);
    const bool jump = max_move(ea, eb) > kMaxMove;
    if (jump && depth >= opts.maxRefineDepth)
      throw ResolutionError("spectral_flow: eigenvalues of W jump near lambda = " +
                            std::to_string(a));
    if (jump || (ambiguous(ea, eb) && depth < opts.maxRefineDepth)) {
      const double m = 0.5 * (a + b);
      const auto em = w_eigenvalues(p, m, po);
      self(self, a, ea, m, em, depth + 1);
      self(self, m, match(ea, em), b, ebRaw, depth + 1);
      return;
    }
    for (std::size_t k = 0; k < ea.size(); ++k)
      if (crosses(ea[k], eb[k])) brackets.push_back({a, b, ea[k], eb[k]});
  };
  for (std::size_t i = 0; i + 1 < ev.size(); ++i)
    walk(walk, trace.grid[i], ev[i], trace.grid[i + 1], ev[i + 1], 0);

  // bisection on the imaginary part of the tracked eigenvalue
  std::vector<double> roots(brackets.size());
  parallel_for(brackets.size(), opts.threads, [&](std::size_t j) {
    Bracket br = brackets[j];
    for (int it = 0; it < 100 && br.b - br.a > 1e-13 * std::max(1.0, std::abs(br.a)); ++it) {
      const double m = 0.5 * (br.a + br.b);
      const auto em = w_eigenvalues(p, m, po);
      const cplx guess = 0.5 * (br.ma + br.mb);
      const cplx mm = *std::min_element(em.begin(), em.end(), [guess](cplx u, cplx v) {
        return std::abs(u - guess) < std::abs(v - guess);
      });
      if ((mm.imag() < 0) == (br.ma.imag() < 0)) {
        br.a = m;
        br.ma = mm;
      } else {
        br.b = m;
        br.mb = mm;
      }
    }
    roots[j] = 0.5 * (br.a + br.b);
  });
  std::sort(roots.begin(), roots.end());

  const double h = 1e-4 * (lambda2 - lambda1);
  for (std::size_t j = 0; j < roots.size();) {
    std::size_t k = j + 1;
    while (k < roots.size() && roots[k] - roots[j] < 1e-8 * std::max(1.0, std::abs(roots[j]))) ++k;
    const double at = roots[j];
    const long group = static_cast<long>(k - j);
    const long dim = kernel_dim_at(p, at, po);
    if (dim != group)
      throw ResolutionError("spectral_flow: " + std::to_string(group) +
                            " eigenvalues cross -1 near lambda = " + std::to_string(at) +
                            " but the kernel has dimension " + std::to_string(dim));

    // phase of -mu for the eigenvalues nearest -1 on either side
    const auto nearest_phases = [&](double l) {
      auto e = w_eigenvalues(p, l, po);
      std::sort(e.begin(), e.end(),
                [](cplx u, cplx v) { return std::abs(u + 1.0) < std::abs(v + 1.0); });
      std::vector<double> ph;
      for (long q = 0; q < dim; ++q) ph.push_back(std::arg(-e[static_cast<std::size_t>(q)]));
      std::sort(ph.begin(), ph.end());
      return ph;
    };
    const auto before = nearest_phases(at - h), after = nearest_phases(at + h);
    for (long q = 0; q < dim; ++q) {
      const auto u = static_cast<std::size_t>(q);
      if (!(after[u] < before[u]))
        throw MonotonicityViolation("spectral_flow: eigenvalue of W crosses -1 counterclockwise at lambda = " +
                                    std::to_string(at));
    }
    trace.crossings.push_back({at, dim, -1});
    trace.flow -= dim;
    j = k;
  }
  return trace;
}

EvansMaslovReport evans_maslov_check(const Schrodinger1DProblem& p,
                                     const Schrodinger1DProblem& phat, double lambda1,
                                     double lambda2, double delta, double gridStep,
                                     const FlowOptions& opts) {
  EvansMaslovReport r;
  r.flow = spectral_flow(p, lambda1, lambda2, gridStep, opts).flow;
  r.flowHat = spectral_flow(phat, lambda1, lambda2, gridStep, opts).flow;
  const cplx i(0, 1);
  const Schrodinger1DProblem pr = p.with_theta(i), phr = phat.with_theta(i);
  const auto evans = [&](cplx l) { return evans_ratio(pr, phr, l, opts.propagation).value; };
  r.windingOfEvans = count_eigs(evans, lambda1, lambda2, delta).count;
  return r;
}

}  // namespace evanskit
