#include <CLI11.hpp>
#include <cstdio>
#include <optional>

#include "evanskit/cli.hpp"

int main(int argc, char** argv) {
  using namespace evanskit::cli;
  CLI::App app{"evanskit: Evans functions, spectral flow and multiplicities"};
  std::string scenario, config, out;
  std::optional<std::uint64_t> seed;
  std::optional<long> threads;
  app.add_option("scenario", scenario, "interval | schrod1d | disc | maslov | pencil | count")->required();
  app.add_option("--config", config, "configuration file")->required();
  app.add_option("--out", out, "output directory")->required();
  app.add_option("--seed", seed, "random seed (overrides [run] seed)");
  app.add_option("--threads", threads, "worker threads (default: EVANSKIT_THREADS or 1)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const Scenario s = scenario_from_string(scenario);
    const RunConfig cfg = load_config(config);
    RunOptions opts;
    opts.threads = resolve_threads(threads);
    opts.seed = seed;
    const RunOutcome r = run(s, cfg, out, opts);
    if (r.exitCode != 0) std::fprintf(stderr, "evanskit: %s\n", r.message.c_str());
    return r.exitCode;
  } catch (const evanskit::Error& e) {
    std::fprintf(stderr, "evanskit: %s\n", e.what());
    return 1;
  }
}
