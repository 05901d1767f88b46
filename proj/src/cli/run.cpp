#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "evanskit/cli.hpp"
#include "evanskit/contour.hpp"
#include "evanskit/detengine.hpp"
#include "evanskit/discmodel.hpp"
#include "evanskit/intervalmodel.hpp"
#include "evanskit/maslov.hpp"
#include "evanskit/parallel.hpp"
#include "evanskit/pencilmult.hpp"
#include "evanskit/potential.hpp"
#include "evanskit/schrodinger1d.hpp"

namespace evanskit::cli {

namespace {

struct Output {
  std::ostringstream csv;
  std::vector<std::pair<std::string, std::string>> summary;

  void put(const std::string& k, const std::string& v) { summary.emplace_back(k, v); }
  void put(const std::string& k, long v) { put(k, std::to_string(v)); }
  void put(const std::string& k, double v) { put(k, format_double(v)); }
};

std::string num(double x) { return format_double(x); }

CMatrix theta_matrix(const std::vector<cplx>& v, std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  if (v.size() == 1) return v[0] * CMatrix::Identity(nn, nn);
  CMatrix m(nn, nn);
  for (Eigen::Index i = 0; i < nn; ++i)
    for (Eigen::Index j = 0; j < nn; ++j) m(i, j) = v[static_cast<std::size_t>(i * nn + j)];
  return m;
}

Schrodinger1DProblem build_problem(const ProblemSpec& s) {
  MatrixPotential q(s.n);
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = 0; j < s.n; ++j) {
      const auto& c = s.entries[i * s.n + j];
      if (!c.empty()) q.at(i, j) = ScalarProfile::polynomial(c);
    }
  if (!s.tableX.empty())
    for (std::size_t i = 0; i < s.n; ++i) q.at(i, i) = ScalarProfile::table(s.tableX, s.tableQ);
  if (s.shift != 0.0)
    for (std::size_t i = 0; i < s.n; ++i) q.at(i, i) = q.at(i, i).shifted(s.shift);
  Schrodinger1DProblem p = Schrodinger1DProblem::from_potential(q);
  p = p.with_theta(theta_matrix(s.thetaPlus, s.n), theta_matrix(s.thetaMinus, s.n));
  p.validate();
  return p;
}

long closed_form_count(double a, double b, bool symmetric) {
  long c = 0;
  for (int k = 1;; ++k) {
    const double e = symmetric ? interval::dirichlet_eigenvalue_symmetric(k)
                               : interval::dirichlet_eigenvalue(k);
    if (e >= b) break;
    if (e > a) ++c;
  }
  return c;
}

double distance_to_spectrum(double x, bool symmetric) {
  double d = 1e300;
  for (int k = 1; k < 10000; ++k) {
    const double e = symmetric ? interval::dirichlet_eigenvalue_symmetric(k)
                               : interval::dirichlet_eigenvalue(k);
    d = std::min(d, std::abs(e - x));
    if (e > x) break;
  }
  return d;
}

void run_interval(const RunConfig& c, std::uint64_t seed, Output& out) {
  const auto& th = c.interval.theta;
  const interval::Theta2x2 theta =
      th.size() == 1 ? interval::Theta2x2::scalar(th[0]) : interval::Theta2x2{th[0], th[1], th[2], th[3]};
  const bool sym = c.interval.symmetric;
  const auto f = [&](cplx l) {
    return sym ? interval::det_n_theta_symmetric(l, theta) : interval::det_n_theta(l, theta);
  };
  CountOptions co;
  co.initialSamples = static_cast<std::size_t>(c.window.samples);

  out.csv << "window,lambda1,lambda2,delta_used,count,expected,samples\n";
  const auto one = [&](long idx, double a, double b) {
    const CountResult r = count_eigs(f, a, b, c.window.delta, co);
    const long expected = closed_form_count(a, b, sym);
    out.csv << idx << "," << num(a) << "," << num(b) << "," << num(r.deltaUsed) << "," << r.count
            << "," << expected << "," << r.detail.samplesUsed << "\n";
    return std::pair{r, expected};
  };
  const auto [main, expected] = one(0, *c.window.lambda1, *c.window.lambda2);
  out.put("count", main.count);
  out.put("expected", expected);
  out.put("delta_used", main.deltaUsed);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 150.0);
  long agree = 0;
  for (long w = 1; w <= c.window.randomWindows; ++w) {
    double a, b;
    do {
      a = U(rng);
      b = U(rng);
      if (a > b) std::swap(a, b);
    } while (b - a < 1.0 || distance_to_spectrum(a, sym) < 0.5 || distance_to_spectrum(b, sym) < 0.5);
    const auto [r, e] = one(w, a, b);
    if (r.count == e) ++agree;
  }
  out.put("random_windows", c.window.randomWindows);
  out.put("random_windows_agree", agree);
}

std::vector<double> grid(double a, double b, double step) {
  std::vector<double> g;
  const auto cells = static_cast<long>(std::ceil((b - a) / step));
  for (long i = 0; i <= cells; ++i) g.push_back(i == cells ? b : a + double(i) * step);
  return g;
}

void run_schrod1d(const RunConfig& c, std::size_t threads, Output& out) {
  const auto p = build_problem(c.problem);
  const double a = *c.window.lambda1, b = *c.window.lambda2;
  const auto g = grid(a, b, c.window.gridStep);
  const CMatrix theta = p.theta_big();
  struct Row {
    cplx ed, et, dn;
    double residual;
    bool robin;
  };
  std::vector<Row> rows(g.size());
  parallel_for(g.size(), threads, [&](std::size_t i) {
    const FrameMatrices f = frame(p, g[i]);
    Row r{evans_dirichlet(f), evans_robin(f, theta), 0.0, 0.0, false};
    try {
      r.dn = det(robin_to_dirichlet(f, theta));
      const double scale = std::max({std::abs(r.ed), std::abs(r.dn * r.et), 1e-300});
      r.residual = std::abs(r.dn * r.et - r.ed) / scale;
    } catch (const RobinEigenvalue&) {
      r.robin = true;
    }
    rows[i] = r;
  });
  out.csv << "lambda,re_ed,im_ed,re_etheta,im_etheta,re_detn,im_detn,identity_residual\n";
  double worst = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Row& r = rows[i];
    out.csv << num(g[i]) << "," << num(r.ed.real()) << "," << num(r.ed.imag()) << ","
            << num(r.et.real()) << "," << num(r.et.imag()) << ",";
    if (r.robin) {
      out.csv << "nan,nan,nan\n";
    } else {
      out.csv << num(r.dn.real()) << "," << num(r.dn.imag()) << "," << num(r.residual) << "\n";
      worst = std::max(worst, r.residual);
    }
  }
  CountOptions co;
  co.initialSamples = static_cast<std::size_t>(c.window.samples);
  const auto ed = [&](cplx l) { return evans_dirichlet(frame(p, l)); };
  const CountResult cr = count_eigs(ed, a, b, c.window.delta, co);
  const cplx probe(0.5 * (a + b), c.window.delta);
  const cplx e0 = evans_robin_at(p, probe, -0.5), e1 = evans_robin_at(p, probe, 0.5);
  out.put("count", cr.count);
  out.put("delta_used", cr.deltaUsed);
  out.put("max_identity_residual", worst);
  out.put("x_independence_residual", std::abs(e0 - e1) / std::max(std::abs(e0), 1e-300));
}

void run_count(const RunConfig& c, Output& out) {
  const auto p = build_problem(c.problem), ph = build_problem(*c.reference);
  const double a = *c.window.lambda1, b = *c.window.lambda2;
  const auto evans = [&](cplx l) { return evans_ratio(p, ph, l).value; };
  CountOptions co;
  co.initialSamples = static_cast<std::size_t>(c.window.samples);
  const CountResult r = count_eigs(evans, a, b, c.window.delta, co);
  out.csv << "lambda_re,lambda_im,re_evans,im_evans\n";
  for (double x : grid(a, b, c.window.gridStep)) {
    const cplx l(x, r.deltaUsed);
    const cplx v = evans(l);
    out.csv << num(l.real()) << "," << num(l.imag()) << "," << num(v.real()) << "," << num(v.imag())
            << "\n";
  }
  out.put("count", r.count);
  out.put("delta_used", r.deltaUsed);
  out.put("samples", static_cast<long>(r.detail.samplesUsed));
}

void run_maslov(const RunConfig& c, std::size_t threads, Output& out) {
  const auto p = build_problem(c.problem);
  FlowOptions fo;
  fo.threads = threads;
  const double a = *c.window.lambda1, b = *c.window.lambda2;
  const FlowTrace t = spectral_flow(p, a, b, c.window.gridStep, fo);
  out.csv << "kind,lambda,index,value\n";
  for (std::size_t i = 0; i < t.grid.size(); ++i)
    for (std::size_t j = 0; j < t.phases[i].size(); ++j)
      out.csv << "phase," << num(t.grid[i]) << "," << j << "," << num(t.phases[i][j]) << "\n";
  for (const auto& x : t.crossings)
    out.csv << "crossing," << num(x.lambda) << "," << x.kernelDim << "," << x.direction << "\n";
  out.put("flow", t.flow);
  out.put("crossings", static_cast<long>(t.crossings.size()));
  for (std::size_t i = 0; i < t.crossings.size(); ++i)
    out.put("crossing_" + std::to_string(i + 1), num(t.crossings[i].lambda) + " (kernel " +
                                                       std::to_string(t.crossings[i].kernelDim) + ")");
  if (c.reference) {
    const auto ph = build_problem(*c.reference);
    const EvansMaslovReport r = evans_maslov_check(p, ph, a, b, c.window.delta, c.window.gridStep, fo);
    out.put("evans_winding", r.windingOfEvans);
    out.put("flow_hat", r.flowHat);
    out.put("evans_maslov_equal", std::string(r.equal() ? "true" : "false"));
  }
}

void run_disc(const RunConfig& c, Output& out) {
  disc::DiscConfig d;
  if (!c.disc.q.empty()) {
    const auto coeffs = c.disc.q;
    d.q = [coeffs](double r) {
      double s = 0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * r + *it;
      return s;
    };
  }
  d.gamma = c.disc.gamma;
  d.mu = c.disc.mu;
  d.muHat = c.disc.muHat;
  d.maxMode = c.disc.maxMode;
  const double lambda = *c.disc.lambda;
  const double p = double(c.disc.p);
  const ModeSequence r = disc::mode_ratios(d, lambda);
  const disc::SchattenTable st = disc::schatten_diag(d, lambda, p);
  out.csv << "k,re_dk,im_dk,re_ratio,im_ratio,partial_sum\n";
  for (long k = 0; k <= d.maxMode; ++k) {
    const cplx dk = disc::mode_dtn(d, k, lambda);
    out.csv << k << "," << num(dk.real()) << "," << num(dk.imag()) << "," << num(r(k).real()) << ","
            << num(r(k).imag()) << "," << num(st.partialSums[static_cast<std::size_t>(k)]) << "\n";
  }
  out.put("max_mode", d.maxMode);
  out.put("p", c.disc.p);
  out.put("partial_sum", st.partialSums.back());
  out.put("last_increment", st.increments.back());
  out.put("decay_exponent", st.decayExponent);
  out.put("decay_matches", std::string(st.decayMatches ? "true" : "false"));
  out.put("log_slope_one_sided", st.logSlope);
  if (c.disc.p >= 2) {
    const ModeDeterminant md = det_p_modes(r, DetOrder(static_cast<int>(c.disc.p)), c.disc.tailTol);
    out.put("det_p", format_cplx(md.value));
    out.put("det_p_bound", md.bound);
    out.put("tail_constant", md.tailConstant);
  } else {
    out.put("det_p", std::string("undefined for p = 1"));
  }
}

MatrixPencil pencil_example(const std::string& name) {
  const auto m2 = [](cplx a, cplx b, cplx c, cplx d) {
    CMatrix m(2, 2);
    m << a, b, c, d;
    return m;
  };
  if (name == "diag1-lambda2")
    return MatrixPencil::polynomial({m2(1, 0, 0, 0), m2(0, 0, 0, 0), m2(0, 0, 0, 1)});
  if (name == "jordan2") return MatrixPencil::polynomial({m2(0, 1, 0, 0), m2(1, 0, 0, 1)});
  CMatrix A = CMatrix::Zero(3, 3);
  A(2, 2) = 3;
  return MatrixPencil::linear(A);
}

void run_pencil(const RunConfig& c, Output& out) {
  const MatrixPencil T = pencil_example(c.pencil.example);
  const cplx l0 = c.pencil.lambda0;
  const long m = multiplicity(T, l0, c.pencil.radius);
  const CMatrix K = pencil_kernel(T, l0);
  out.csv << "vector,rank,capped,max_residual\n";
  long sum = 0;
  for (Eigen::Index i = 0; i < K.cols(); ++i) {
    const ChainRank r = rank_of_eigenvector(T, l0, K.col(i), c.pencil.maxLen);
    const auto res = chain_residuals(T, r.chain);
    out.csv << i << "," << r.rank << "," << (r.capped ? 1 : 0) << ","
            << num(*std::max_element(res.begin(), res.end())) << "\n";
    sum += r.rank;
  }
  out.put("example", c.pencil.example);
  out.put("multiplicity", m);
  out.put("kernel_dim", static_cast<long>(K.cols()));
  out.put("chain_multiplicity", sum);
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + p.string() + "'");
  f << text;
}

char hex_digit(unsigned v) { return "0123456789abcdef"[v & 15]; }

std::string hex64(std::uint64_t h) {
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = hex_digit(static_cast<unsigned>(h));
  return s;
}

}  // namespace

std::size_t resolve_threads(std::optional<long> requested) {
  long n = 1;
  if (requested) {
    n = *requested;
  } else if (const char* env = std::getenv("EVANSKIT_THREADS")) {
    char* end = nullptr;
    n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0') throw ConfigError("EVANSKIT_THREADS must be an integer");
  }
  if (n < 1 || n > 256) throw ConfigError("thread count must be between 1 and 256");
  return static_cast<std::size_t>(n);
}

RunOutcome run(Scenario scenario, const RunConfig& cfg, const std::filesystem::path& outDir,
               const RunOptions& opts) {
  Output out;
  RunOutcome outcome;
  const std::uint64_t seed = opts.seed.value_or(cfg.seed);
  try {
    require_for(cfg, scenario);
    switch (scenario) {
      case Scenario::Interval: run_interval(cfg, seed, out); break;
      case Scenario::Schrod1d: run_schrod1d(cfg, opts.threads, out); break;
      case Scenario::Count: run_count(cfg, out); break;
      case Scenario::Maslov: run_maslov(cfg, opts.threads, out); break;
      case Scenario::Disc: run_disc(cfg, out); break;
      case Scenario::Pencil: run_pencil(cfg, out); break;
    }
  } catch (const SpectrumError& e) {
    outcome = {2, e.what()};
  } catch (const NumericalError& e) {
    outcome = {3, e.what()};
  } catch (const Error& e) {
    outcome = {1, e.what()};
  }

  std::error_code ec;
  std::filesystem::create_directories(outDir, ec);
  if (ec) return {1, "cannot create output directory '" + outDir.string() + "': " + ec.message()};

  std::ostringstream summary;
  summary << "scenario = " << to_string(scenario) << "\n"
          << "config_hash = " << hex64(config_hash(cfg)) << "\n"
          << "status = " << (outcome.exitCode == 0 ? "ok" : "error") << "\n";
  if (outcome.exitCode != 0) {
    summary << "exit_code = " << outcome.exitCode << "\n"
            << "error = " << outcome.message << "\n";
  } else {
    for (const auto& [k, v] : out.summary) summary << k << " = " << v << "\n";
    write_file(outDir / "result.csv", "# scenario=" + to_string(scenario) +
                                          " config_hash=" + hex64(config_hash(cfg)) + "\n" +
                                          out.csv.str());
  }
  write_file(outDir / "summary.txt", summary.str());
  return outcome;
}

}  // namespace evanskit::cli
