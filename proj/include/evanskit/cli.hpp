#pragma once

// Run configurations for the command-line front end. The grammar is
// line-oriented:
//
//   # comment
//   [section]
//   key = value          # trailing comments allowed
//
// Complex scalars are written "a+bi", "a-bi", "bi" or "a". Lists are comma
// separated. docs/formats.md lists every section and key.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "evanskit/errors.hpp"
#include "evanskit/numkernel.hpp"

namespace evanskit::cli {

class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, long line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

enum class Scenario { Interval, Schrod1d, Disc, Maslov, Pencil, Count };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);

struct ProblemSpec {
  std::size_t n = 1;
  // polynomial coefficients in x for entry (i, j), row-major; empty means 0
  std::vector<std::vector<cplx>> entries = std::vector<std::vector<cplx>>(1);
  std::vector<double> tableX;  // when set, every diagonal entry is this table
  std::vector<cplx> tableQ;
  cplx shift = 0;
  std::vector<cplx> thetaPlus{0.0};  // one scalar (times I) or n*n row-major
  std::vector<cplx> thetaMinus{0.0};

  bool operator==(const ProblemSpec&) const = default;
};

struct WindowSpec {
  std::optional<double> lambda1, lambda2;
  double delta = 0.5;
  long samples = 64;
  double gridStep = 0.25;
  long randomWindows = 0;
  bool operator==(const WindowSpec&) const = default;
};

struct IntervalSpec {
  std::vector<cplx> theta{cplx(0, 1)};  // scalar or 4 row-major entries
  bool symmetric = false;               // (-1, 1) instead of (0, 1)
  bool operator==(const IntervalSpec&) const = default;
};

struct DiscSpec {
  std::vector<double> q;  // polynomial coefficients in r; empty means 0
  double gamma = 0;
  cplx mu = 0, muHat = 0;
  std::optional<double> lambda;
  long maxMode = 64;
  long p = 2;
  double tailTol = 1e-3;
  bool operator==(const DiscSpec&) const = default;
};

struct PencilSpec {
  std::string example = "diag1-lambda2";
  cplx lambda0 = 0;
  double radius = 0.5;
  long maxLen = 10;
  bool operator==(const PencilSpec&) const = default;
};

struct RunConfig {
  std::optional<Scenario> scenario;
  std::uint64_t seed = 0;
  WindowSpec window;
  ProblemSpec problem;
  std::optional<ProblemSpec> reference;
  IntervalSpec interval;
  DiscSpec disc;
  PencilSpec pencil;
  bool operator==(const RunConfig&) const = default;
};

/// Throws ConfigError when a key the scenario needs is missing.
void require_for(const RunConfig& c, Scenario s);

/// Parses and validates; throws ConfigError naming the line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& c);

/// FNV-1a 64 of the canonical text.
std::uint64_t config_hash(const RunConfig& c);

cplx parse_complex(const std::string& text);
std::string format_double(double x);   // %.17g
std::string format_cplx(cplx z);       // a+bi with 17 digits

struct RunOptions {
  std::size_t threads = 1;
  std::optional<std::uint64_t> seed;  // overrides the config seed
};

struct RunOutcome {
  int exitCode = 0;
  std::string message;
};

/// Runs the scenario and writes result.csv and summary.txt under outDir.
/// Exit codes: 0 success, 1 configuration or precondition error,
/// 2 spectral hit, 3 numerical failure.
RunOutcome run(Scenario scenario, const RunConfig& cfg, const std::filesystem::path& outDir,
               const RunOptions& opts = {});

/// Thread count from --threads, else EVANSKIT_THREADS, else 1.
std::size_t resolve_threads(std::optional<long> requested);

}  // namespace evanskit::cli
