#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eaforage/config.hpp"
#include "eaforage/metrics.hpp"

namespace eaforage::batch {

struct RunRequest {
  std::filesystem::path config_path;
  std::vector<Strategy> strategies;  // empty: the config's own strategy
  std::vector<std::uint64_t> seeds;
  std::filesystem::path out_dir = "out";
  bool emit_trace = false;
  std::optional<int> iterations;  // overrides max_iterations
};

enum ExitCode : int { kOk = 0, kConfigError = 2, kRuntimeError = 3 };

class SeedListError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "1..10" (inclusive) or "1,4,7". Throws SeedListError on anything else.
std::vector<std::uint64_t> parse_seeds(const std::string& text);

struct Trial {
  Strategy strategy = Strategy::Proposed;
  std::uint64_t seed = 0;
  metrics::MetricsRecord metrics;
  std::string trace;
};

/// Runs every (strategy, seed) pair on its own copy of `config`. Trials run
/// on worker threads; results come back in (strategy, seed) order.
std::vector<Trial> run_trials(const WorldConfig& config, const std::vector<Strategy>& strategies,
                              const std::vector<std::uint64_t>& seeds, unsigned threads = 0);

/// Column heading for a strategy. `connectivity_table` selects the wording
/// used when comparing with and without connectivity maintenance.
std::string display_label(Strategy s, bool connectivity_table);

/// Rows = indices, columns = strategies; `sd` picks standard deviations
/// instead of means. Time rows are in seconds.
std::string summary_csv(const std::vector<Trial>& trials, const std::vector<Strategy>& strategies,
                        double seconds_per_tick, bool sd);
std::string trials_csv(const std::vector<Trial>& trials);

/// Both return an ExitCode and print errors to stderr.
int cmd_run(const RunRequest& request);
int cmd_compare(const RunRequest& request);

}  // namespace eaforage::batch
