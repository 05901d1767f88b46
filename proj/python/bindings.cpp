#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "evanskit/cli.hpp"
#include "evanskit/contour.hpp"
#include "evanskit/detengine.hpp"
#include "evanskit/discmodel.hpp"
#include "evanskit/errors.hpp"
#include "evanskit/intervalmodel.hpp"
#include "evanskit/maslov.hpp"
#include "evanskit/pencilmult.hpp"

namespace py = pybind11;
using namespace evanskit;

namespace {

// n x n polynomial potential from coefficient matrices A0, A1, ... in x
Schrodinger1DProblem polynomial_problem(const std::vector<CMatrix>& coeffs) {
  if (coeffs.empty()) throw DimensionError("at least one coefficient matrix is needed");
  const auto n = static_cast<std::size_t>(coeffs.front().rows());
  MatrixPotential q(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<cplx> c;
      for (const CMatrix& A : coeffs) {
        if (static_cast<std::size_t>(A.rows()) != n || static_cast<std::size_t>(A.cols()) != n)
          throw DimensionError("coefficient matrices must all be n x n");
        c.push_back(A(Eigen::Index(i), Eigen::Index(j)));
      }
      q.at(i, j) = ScalarProfile::polynomial(std::move(c));
    }
  return Schrodinger1DProblem::from_potential(q);
}

disc::DiscConfig disc_config(double gamma, cplx mu, cplx muHat, long maxMode) {
  disc::DiscConfig c;
  c.gamma = gamma;
  c.mu = mu;
  c.muHat = muHat;
  c.maxMode = maxMode;
  return c;
}

}  // namespace

PYBIND11_MODULE(_evanskit, m) {
  m.doc() = "evanskit core bindings";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  static py::exception<SpectrumError> spectrum(m, "SpectrumError", error.ptr());
  static py::exception<NumericalError> numerical(m, "NumericalError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const SpectrumError& e) {
      py::set_error(spectrum, e.what());
    } catch (const NumericalError& e) {
      py::set_error(numerical, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<Schrodinger1DProblem>(m, "Problem")
      .def_static("laplacian", &Schrodinger1DProblem::laplacian, py::arg("n") = 1)
      .def_static("polynomial", &polynomial_problem, py::arg("coeffs"),
                  "Q(x) = A0 + A1 x + A2 x^2 + ...")
      .def("shifted", &Schrodinger1DProblem::shifted, py::arg("shift"))
      .def("with_theta",
           py::overload_cast<cplx>(&Schrodinger1DProblem::with_theta, py::const_),
           py::arg("c"))
      .def("with_theta",
           py::overload_cast<const CMatrix&, const CMatrix&>(&Schrodinger1DProblem::with_theta,
                                                              py::const_),
           py::arg("plus"), py::arg("minus"))
      .def_property_readonly("n", [](const Schrodinger1DProblem& p) { return p.n; })
      .def("Q", [](const Schrodinger1DProblem& p, double x) { return p.Q(x); });

  m.def("dirichlet_eigenvalue", &interval::dirichlet_eigenvalue, py::arg("k"),
        "(k pi)^2 on the unit interval");
  m.def(
      "det_n_theta",
      [](cplx lambda, const CMatrix& theta) {
        return interval::det_n_theta(lambda, interval::Theta2x2::from_matrix(theta));
      },
      py::arg("lam"), py::arg("theta"), "closed-form det N_Theta on (0, 1)");

  m.def(
      "count_eigs",
      [](const std::function<cplx(cplx)>& f, double a, double b, double delta) {
        return count_eigs(f, a, b, delta).count;
      },
      py::arg("f"), py::arg("lambda1"), py::arg("lambda2"), py::arg("delta") = 0.5);
  m.def("multiplicity_at", &multiplicity_at, py::arg("f"), py::arg("lambda0"), py::arg("eps"));

  m.def(
      "det_p", [](const CMatrix& B, int p) { return det_p_finite(B, DetOrder(p)); },
      py::arg("B"), py::arg("p"), "det_p(I + B)");

  m.def(
      "d_k", [](long k, cplx lambda) { return disc::d_k(k, lambda); }, py::arg("k"),
      py::arg("lam"));
  m.def(
      "mode_dirichlet_eigenvalues",
      [](long k, double lo, double hi) {
        return disc::mode_dirichlet_eigenvalues(disc::DiscConfig{}, k, lo, hi);
      },
      py::arg("k"), py::arg("lambda_min"), py::arg("lambda_max"));
  m.def(
      "schatten_diag",
      [](double gamma, cplx mu, cplx muHat, cplx lambda, double p, long maxMode) {
        const auto t = disc::schatten_diag(disc_config(gamma, mu, muHat, maxMode), lambda, p);
        py::dict d;
        d["partial_sums"] = t.partialSums;
        d["increments"] = t.increments;
        d["one_sided_sums"] = t.oneSidedSums;
        d["decay_exponent"] = t.decayExponent;
        d["decay_matches"] = t.decayMatches;
        d["log_slope"] = t.logSlope;
        return d;
      },
      py::arg("gamma"), py::arg("mu"), py::arg("mu_hat"), py::arg("lam"), py::arg("p"),
      py::arg("max_mode") = 64);

  m.def(
      "pencil_multiplicity",
      [](const std::vector<CMatrix>& coeffs, cplx lambda0, double radius) {
        return multiplicity(MatrixPencil::polynomial(coeffs), lambda0, radius);
      },
      py::arg("coeffs"), py::arg("lambda0"), py::arg("radius") = 0.5,
      "multiplicity of T(l) = C0 + C1 l + C2 l^2 + ... at lambda0");

  m.def(
      "souriau", [](const Schrodinger1DProblem& p, cplx lambda) { return souriau(p, lambda).W; },
      py::arg("problem"), py::arg("lam"));
  m.def(
      "kernel_dim_at",
      [](const Schrodinger1DProblem& p, double lambda) { return kernel_dim_at(p, lambda); },
      py::arg("problem"), py::arg("lam"));
  m.def(
      "spectral_flow",
      [](const Schrodinger1DProblem& p, double a, double b, double step, std::size_t threads) {
        FlowOptions o;
        o.threads = threads;
        FlowTrace t;
        {
          py::gil_scoped_release release;
          t = spectral_flow(p, a, b, step, o);
        }
        py::list crossings;
        for (const auto& c : t.crossings)
          crossings.append(py::make_tuple(c.lambda, c.kernelDim, c.direction));
        py::dict d;
        d["flow"] = t.flow;
        d["crossings"] = crossings;
        d["grid"] = t.grid;
        return d;
      },
      py::arg("problem"), py::arg("lambda1"), py::arg("lambda2"), py::arg("grid_step") = 0.25,
      py::arg("threads") = 1);
  m.def(
      "evans_maslov_check",
      [](const Schrodinger1DProblem& p, const Schrodinger1DProblem& phat, double a, double b,
         double delta) {
        EvansMaslovReport r;
        {
          py::gil_scoped_release release;
          r = evans_maslov_check(p, phat, a, b, delta);
        }
        py::dict d;
        d["winding"] = r.windingOfEvans;
        d["flow"] = r.flow;
        d["flow_hat"] = r.flowHat;
        d["equal"] = r.equal();
        return d;
      },
      py::arg("problem"), py::arg("reference"), py::arg("lambda1"), py::arg("lambda2"),
      py::arg("delta") = 0.5);

  m.def(
      "run",
      [](const std::string& scenario, const std::filesystem::path& config,
         const std::filesystem::path& out, std::size_t threads) {
        cli::RunOptions o;
        o.threads = threads;
        const auto cfg = cli::load_config(config);
        const auto outcome = cli::run(cli::scenario_from_string(scenario), cfg, out, o);
        return py::make_tuple(outcome.exitCode, outcome.message);
      },
      py::arg("scenario"), py::arg("config"), py::arg("out"), py::arg("threads") = 1,
      "same as the command-line tool; returns (exit_code, message)");
}
