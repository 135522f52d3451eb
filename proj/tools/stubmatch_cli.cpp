// Command-line front end. All the heavy lifting lives in the headers; this
// file only parses arguments, loads the JSON spec, and maps errors to exit
// codes: 0 success, 2 invalid input, 3 I/O failure, 4 unsupported case.
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "stubmatch/stubmatch.hpp"

namespace {

using namespace stubmatch;

struct CliArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> replicas;
  std::optional<std::string> engine;
  std::string out;
  std::optional<int> threads;
  std::optional<std::string> scheme;
};

void add_common(CLI::App* cmd, CliArgs& args, bool needs_out) {
  cmd->add_option("--config", args.config, "experiment spec (JSON file)")->required();
  cmd->add_option("--seed", args.seed, "base seed; replica i uses seed + i");
  cmd->add_option("--replicas", args.replicas, "number of independent replicas");
  cmd->add_option("--engine", args.engine, "matching engine: rounds or greedy");
  auto* out = cmd->add_option("--out", args.out, "output directory");
  if (needs_out) out->required();
  cmd->add_option("--threads", args.threads, "worker threads (default: all cores)");
}

ExperimentSpec load_spec(const CliArgs& args) {
  json j;
  try {
    j = json::parse(read_text(args.config));
  } catch (const json::exception& e) {
    throw ValidationError(args.config + ": " + e.what());
  }
  const json& body = j.contains("spec") ? j.at("spec") : j;
  if (!args.seed && !(body.contains("sim") && body.at("sim").contains("seed")))
    throw ValidationError("no seed given: set --seed or a \"seed\" field in the config");
  ExperimentSpec spec = spec_from_json(j);
  if (args.seed) spec.sim.seed = *args.seed;
  if (args.replicas) spec.replicas = *args.replicas;
  if (args.engine) spec.engine = engine_from_string(*args.engine);
  if (!args.out.empty()) spec.out_dir = args.out;
  if (args.threads) spec.threads = *args.threads;
  if (args.scheme) spec.scheme = *args.scheme;
  validate(spec.sim);
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stubmatch: stable two-color matching of random point configurations"};
  app.require_subcommand(1);

  CliArgs args;
  auto* gen = app.add_subcommand("generate", "sample point configurations, one file per replica");
  add_common(gen, args, true);
  auto* match = app.add_subcommand(
      "match", "match previously generated configurations and report stub accounting");
  add_common(match, args, true);
  auto* scheme = app.add_subcommand(
      "scheme", "run a construction scheme (finite_component, percolating, truncation)");
  add_common(scheme, args, true);
  scheme->add_option("--scheme", args.scheme,
                     "scheme name; may also be given as \"scheme\" in the config");
  auto* analyze = app.add_subcommand(
      "analyze", "component structure, stub rates, edge lengths, cube renormalization");
  add_common(analyze, args, true);
  auto* sweep = app.add_subcommand("sweep", "run a parameter grid and emit one long-format CSV");
  add_common(sweep, args, true);
  sweep->description(std::string("run a parameter grid and emit one long-format CSV.\n"
                                 "Axes (spec \"sweep\": [{\"param\", \"values\"}]): L, lambda, "
                                 "lambda_red, lambda_blue, k, geometric_p, zipf_s.\n"
                                 "sweep.csv columns (one row per grid point and replica):\n  ") +
                     stubmatch::kSweepColumns);
  auto* val = app.add_subcommand("validate", "check a spec and any existing output files");
  add_common(val, args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const ExperimentSpec spec = load_spec(args);
    int rc = 0;
    if (gen->parsed()) rc = cmd_generate(spec);
    if (match->parsed()) rc = cmd_match(spec);
    if (scheme->parsed()) rc = cmd_scheme(spec);
    if (analyze->parsed()) rc = cmd_analyze(spec);
    if (sweep->parsed()) rc = cmd_sweep(spec);
    if (val->parsed()) rc = cmd_validate(spec, std::cout);
    return rc;
  } catch (const UnsupportedCaseError& e) {
    std::cerr << "unsupported case: " << e.what() << '\n';
    return 4;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
