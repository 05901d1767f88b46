#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "evanskit/cli.hpp"

using namespace evanskit;
using namespace evanskit::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("evanskit_test_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

long error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

const char* kInterval = R"(
[run]
scenario = interval   # counted on (0, 1)

[window]
lambda1 = 5
lambda2 = 45
)";

}  // namespace

TEST_CASE("complex scalars") {
  CHECK(parse_complex("1+0i") == cplx(1, 0));
  CHECK(parse_complex("1") == cplx(1, 0));
  CHECK(parse_complex("-2.5-3i") == cplx(-2.5, -3));
  CHECK(parse_complex("0+1i") == cplx(0, 1));
  CHECK(parse_complex("i") == cplx(0, 1));
  CHECK(parse_complex("-i") == cplx(0, -1));
  CHECK(parse_complex("2-i") == cplx(2, -1));
  CHECK(parse_complex("1e-3+2E+2i") == cplx(1e-3, 200));
  CHECK(parse_complex(" 4 + 5i ") == cplx(4, 5));
  CHECK_THROWS_AS(parse_complex("1+2j"), ConfigError);
  CHECK_THROWS_AS(parse_complex("abc"), ConfigError);
  CHECK_THROWS_AS(parse_complex("nan"), ConfigError);
  for (cplx z : {cplx(0.1, -1.0 / 3.0), cplx(-7e-300, 0), cplx(0, 2.5)})
    CHECK(parse_complex(format_cplx(z)) == z);
}

TEST_CASE("minimal interval configuration") {
  const RunConfig c = parse_config(kInterval);
  REQUIRE(c.scenario);
  CHECK(*c.scenario == Scenario::Interval);
  CHECK(*c.window.lambda1 == 5.0);
  CHECK(*c.window.lambda2 == 45.0);
  CHECK(c.window.delta == 0.5);
  CHECK(parse_config(serialize_config(c)) == c);
  CHECK(config_hash(parse_config(serialize_config(c))) == config_hash(c));
}

TEST_CASE("full round trip") {
  const std::string text = R"([run]
seed = 18446744073709551615
[window]
lambda1 = -0.25
lambda2 = 12.125
grid_step = 0.1
random_windows = 3
[problem]
n = 2
q11 = 1, 0, 0.5
q21 = 0+0.5i
q12 = 0-0.5i
table_x = 0, 0.5, 1
table_q = 1, 2, 1+1i
shift = 3
theta_plus = 1, 0, 0, 2
theta_minus = 0+1i
[reference]
n = 1
[interval]
theta = 1, 2, 3, 4
domain = symmetric
[disc]
q = 1, -2
gamma = 1
mu = 1+0i
mu_hat = 2-0.5i
lambda = 7
max_mode = 100
p = 3
tail_tol = 1e-4
[pencil]
example = jordan2
lambda0 = 0.5+0.25i
radius = 0.125
max_len = 4
)";
  const RunConfig c = parse_config(text);
  CHECK(c.seed == 18446744073709551615ull);
  CHECK(c.disc.mu == cplx(1, 0));
  CHECK(c.disc.muHat == cplx(2, -0.5));
  CHECK(c.problem.entries[2] == std::vector<cplx>{cplx(0, 0.5)});
  CHECK(c.reference);
  CHECK(c.interval.symmetric);
  const RunConfig back = parse_config(serialize_config(c));
  CHECK(back == c);
  CHECK(serialize_config(back) == serialize_config(c));
}

TEST_CASE("configuration errors carry line numbers") {
  CHECK(error_line("[disc]\np = 0\n") == 2);
  CHECK(error_line("[disc]\np = 9\n") == 2);
  CHECK(error_line("[disc]\n\n# c\nfoo = 1\n") == 4);
  CHECK(error_line("[nope]\n") == 1);
  CHECK(error_line("[window]\nlambda1 = 1\nlambda1 = 2\n") == 3);
  CHECK(error_line("[window]\nlambda1 = x\n") == 2);
  CHECK(error_line("lambda1 = 1\n") == 1);
  CHECK(error_line("[window\n") == 1);
  CHECK(error_line("[problem]\nn = 1\nq12 = 1\n") == 3);
  CHECK(error_line("[problem]\ntable_x = 0, 1\n") == 2);
  CHECK(error_line("[problem]\nn = 2\ntheta_plus = 1, 2\n") == 3);
  CHECK(error_line("[window]\ndelta = 0\n") == 2);
  try {
    parse_config("[disc]\np = 0\n");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    CHECK(std::string(e.what()).find("p") != std::string::npos);
  }
  // scenario-required keys
  CHECK_THROWS_AS(parse_config("[run]\nscenario = interval\n[window]\nlambda1 = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\nscenario = disc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\nscenario = count\n[window]\nlambda1 = 1\nlambda2 = 2\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\nscenario = bogus\n"), ConfigError);
}

TEST_CASE("interval run writes the count") {
  const auto dir = scratch("interval");
  const RunOutcome r = run(Scenario::Interval, parse_config(kInterval), dir);
  CHECK(r.exitCode == 0);
  const std::string summary = slurp(dir / "summary.txt");
  CHECK(summary.find("count = 2\n") != std::string::npos);
  const std::string csv = slurp(dir / "result.csv");
  CHECK(csv.rfind("# scenario=interval config_hash=", 0) == 0);
}

TEST_CASE("maslov and pencil headline values") {
  const auto dm = scratch("maslov");
  const RunConfig m = parse_config("[window]\nlambda1 = 1\nlambda2 = 12\n[problem]\nn = 1\n");
  CHECK(run(Scenario::Maslov, m, dm).exitCode == 0);
  CHECK(slurp(dm / "summary.txt").find("flow = -2\n") != std::string::npos);

  const auto dp = scratch("pencil");
  CHECK(run(Scenario::Pencil, parse_config("[pencil]\nexample = diag1-lambda2\n"), dp).exitCode == 0);
  CHECK(slurp(dp / "summary.txt").find("multiplicity = 2\n") != std::string::npos);
  CHECK(run(Scenario::Pencil, parse_config("[pencil]\nexample = jordan2\n"), dp).exitCode == 0);
  CHECK(slurp(dp / "summary.txt").find("multiplicity = 2\n") != std::string::npos);
}

TEST_CASE("exit codes") {
  const auto d = scratch("codes");
  // endpoint on the Dirichlet spectrum
  const RunConfig onSpec =
      parse_config("[window]\nlambda1 = 2.4674011002723395\nlambda2 = 7\n[problem]\nn = 1\n");
  const RunOutcome a = run(Scenario::Maslov, onSpec, d);
  CHECK(a.exitCode == 2);
  CHECK(slurp(d / "summary.txt").find("status = error") != std::string::npos);

  // certified tail bound out of reach
  const RunConfig tight = parse_config(
      "[disc]\ngamma = 1\nmu = 1\nmu_hat = 2\nlambda = 7\nmax_mode = 16\np = 2\ntail_tol = 1e-9\n");
  const RunOutcome b = run(Scenario::Disc, tight, d);
  CHECK(b.exitCode == 3);
  CHECK(b.message.find("try K >=") != std::string::npos);

  // scenario mismatch and missing keys
  CHECK(run(Scenario::Disc, parse_config(kInterval), d).exitCode == 1);
  CHECK(run(Scenario::Schrod1d, parse_config("[problem]\nn = 1\n"), d).exitCode == 1);
}

TEST_CASE("identical configurations give identical bytes") {
  const RunConfig c = parse_config(
      "[window]\nlambda1 = 1\nlambda2 = 6\ngrid_step = 0.5\n[problem]\nn = 1\nq = 0, 1\n");
  const auto d1 = scratch("det1"), d2 = scratch("det2");
  RunOptions one, four;
  four.threads = 4;
  REQUIRE(run(Scenario::Schrod1d, c, d1, one).exitCode == 0);
  REQUIRE(run(Scenario::Schrod1d, c, d2, four).exitCode == 0);
  CHECK(slurp(d1 / "result.csv") == slurp(d2 / "result.csv"));
  CHECK(slurp(d1 / "summary.txt") == slurp(d2 / "summary.txt"));
}

TEST_CASE("seed selects the random windows") {
  RunConfig c = parse_config(kInterval);
  c.window.randomWindows = 4;
  const auto d1 = scratch("seed1"), d2 = scratch("seed2");
  RunOptions s1, s2;
  s1.seed = 1;
  s2.seed = 2;
  run(Scenario::Interval, c, d1, s1);
  run(Scenario::Interval, c, d2, s2);
  CHECK(slurp(d1 / "result.csv") != slurp(d2 / "result.csv"));
  CHECK(slurp(d1 / "summary.txt").find("random_windows_agree = 4") != std::string::npos);
}

TEST_CASE("thread count resolution") {
  CHECK(resolve_threads(3) == 3);
  CHECK_THROWS_AS(resolve_threads(0), ConfigError);
  ::setenv("EVANSKIT_THREADS", "5", 1);
  CHECK(resolve_threads(std::nullopt) == 5);
  CHECK(resolve_threads(2) == 2);
  ::setenv("EVANSKIT_THREADS", "many", 1);
  CHECK_THROWS_AS(resolve_threads(std::nullopt), ConfigError);
  ::unsetenv("EVANSKIT_THREADS");
  CHECK(resolve_threads(std::nullopt) == 1);
}
