#include "evanskit/errors.hpp"

#include <cstdio>

namespace evanskit {

std::string format_complex(std::complex<double> z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.10g%+.10gi", z.real(), z.imag());
  return buf;
}

DirichletEigenvalue::DirichletEigenvalue(std::complex<double> lambda)
    : SpectrumError("lambda = " + format_complex(lambda) +
                        " is a Dirichlet eigenvalue (Dirichlet trace block singular)",
                    lambda) {}

RobinEigenvalue::RobinEigenvalue(std::complex<double> lambda, long mode)
    : SpectrumError("lambda = " + format_complex(lambda) + " is a Robin eigenvalue" +
                        (mode >= 0 ? " (mode " + std::to_string(mode) + ")" : std::string()),
                    lambda),
      mode_(mode) {}

ModeDirichletEigenvalue::ModeDirichletEigenvalue(long mode, std::complex<double> lambda)
    : SpectrumError("lambda = " + format_complex(lambda) +
                        " is a Dirichlet eigenvalue of mode " + std::to_string(mode),
                    lambda),
      mode_(mode) {}

SingularMatrix::SingularMatrix(double pivot)
    : NumericalError([pivot] {
        char buf[80];
        std::snprintf(buf, sizeof buf, "matrix is singular to tolerance (smallest pivot %.3e)",
                      pivot);
        return std::string(buf);
      }()),
      pivot_(pivot) {}

}  // namespace evanskit
