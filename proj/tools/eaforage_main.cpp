#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eaforage/batch.hpp"

using namespace eaforage;

namespace {

void add_common(CLI::App* cmd, batch::RunRequest& req, std::string& seeds, std::optional<int>& iterations) {
  cmd->add_option("--config", req.config_path, "World config (JSON)")->required();
  cmd->add_option("--seeds", seeds, "Seed range 'a..b' or list 'a,b,c'")->default_val("1");
  cmd->add_option("--out", req.out_dir, "Output directory")->default_val("out");
  cmd->add_flag("--emit-trace", req.emit_trace, "Write one trace file per trial");
  cmd->add_option("--iterations", iterations, "Override max_iterations");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-aware multi-robot foraging simulator"};
  app.require_subcommand(1);

  batch::RunRequest req;
  std::string seeds;
  std::optional<int> iterations;
  std::string strategy;
  std::vector<std::string> strategies;

  auto* run = app.add_subcommand("run", "Run one strategy over a seed list");
  add_common(run, req, seeds, iterations);
  run->add_option("--strategy", strategy, "baseline | proposed | proposed_no_deadlock | proposed_no_connectivity");

  auto* compare = app.add_subcommand("compare", "Run several strategies over the same seeds");
  add_common(compare, req, seeds, iterations);
  compare->add_option("--strategy", strategies, "Strategies to compare (repeat or space-separate)")
      ->required()
      ->expected(1, -1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : batch::kConfigError;
  }

  if (run->parsed() && !strategy.empty()) strategies = {strategy};
  for (const auto& s : strategies) {
    auto parsed = strategy_from_string(s);
    if (!parsed) {
      std::cerr << "config error: unknown strategy '" << s << "'\n";
      return batch::kConfigError;
    }
    req.strategies.push_back(*parsed);
  }
  try {
    req.seeds = batch::parse_seeds(seeds);
  } catch (const batch::SeedListError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return batch::kConfigError;
  }
  req.iterations = iterations;

  return run->parsed() ? batch::cmd_run(req) : batch::cmd_compare(req);
}
