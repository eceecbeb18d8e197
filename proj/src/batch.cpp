#include "eaforage/batch.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <iostream>
#include <thread>

#include <json.hpp>

#include "eaforage/engine.hpp"
#include "eaforage/trace.hpp"

namespace eaforage::batch {

namespace fs = std::filesystem;

namespace {

std::uint64_t parse_u64(std::string_view s, const std::string& whole) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty())
    throw SeedListError("bad seed list '" + whole + "'");
  return v;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string trace_name(Strategy s, std::uint64_t seed) {
  return std::string(to_string(s)) + "_seed" + std::to_string(seed) + ".trace";
}

struct Loaded {
  WorldConfig config;
  std::vector<Strategy> strategies;
};

Loaded load(const RunRequest& request) {
  Loaded l{load_config(request.config_path), request.strategies};
  if (request.iterations) l.config.max_iterations = *request.iterations;
  if (l.strategies.empty()) l.strategies.push_back(l.config.strategy);
  validate_config(l.config);
  if (request.seeds.empty()) throw ConfigError("seed list is empty");
  return l;
}

int execute(const RunRequest& request, bool compare) {
  Loaded l;
  try {
    l = load(request);
    if (compare && l.strategies.size() < 2) throw ConfigError("compare needs at least two strategies");
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    fs::create_directories(request.out_dir);
    const auto trials = run_trials(l.config, l.strategies, request.seeds);
    const std::string hash = config_hash(l.config);

    nlohmann::ordered_json manifest;
    manifest["config"] = request.config_path.string();
    manifest["config_hash"] = hash;
    manifest["seeds"] = request.seeds;
    nlohmann::ordered_json strategies = nlohmann::json::array();
    for (Strategy s : l.strategies) strategies.push_back(std::string(to_string(s)));
    manifest["strategies"] = strategies;
    nlohmann::ordered_json artifacts = nlohmann::json::array();

    if (request.emit_trace) {
      fs::create_directories(request.out_dir / "traces");
      for (const auto& t : trials) {
        const auto rel = fs::path("traces") / trace_name(t.strategy, t.seed);
        write_file(request.out_dir / rel, t.trace);
        artifacts.push_back({{"file", rel.generic_string()},
                             {"kind", "trace"},
                             {"config_hash", hash},
                             {"strategy", std::string(to_string(t.strategy))},
                             {"seed", t.seed}});
      }
    }

    auto add_table = [&](const std::string& file, const std::string& kind, const std::string& text) {
      write_file(request.out_dir / file, text);
      nlohmann::ordered_json seeds = request.seeds;
      artifacts.push_back({{"file", file}, {"kind", kind}, {"config_hash", hash}, {"strategy", strategies},
                           {"seeds", seeds}});
    };
    add_table("trials.csv", "trials", trials_csv(trials));
    add_table("summary.csv", "summary", summary_csv(trials, l.strategies, l.config.seconds_per_tick, false));
    add_table("summary_sd.csv", "summary_sd", summary_csv(trials, l.strategies, l.config.seconds_per_tick, true));
    manifest["artifacts"] = artifacts;
    write_file(request.out_dir / "manifest.json", manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kOk;
}

}  // namespace

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = parse_u64(std::string_view(text).substr(0, dots), text);
    const auto hi = parse_u64(std::string_view(text).substr(dots + 2), text);
    if (hi < lo) throw SeedListError("bad seed list '" + text + "'");
    for (auto s = lo; s <= hi; ++s) out.push_back(s);
    return out;
  }
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_u64(rest.substr(0, comma), text));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<Trial> run_trials(const WorldConfig& config, const std::vector<Strategy>& strategies,
                              const std::vector<std::uint64_t>& seeds, unsigned threads) {
  std::vector<Trial> trials;
  for (Strategy s : strategies)
    for (std::uint64_t seed : seeds) trials.push_back({s, seed, {}, {}});

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(trials.size()));

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned w) {
    try {
      for (std::size_t i; (i = next.fetch_add(1)) < trials.size();) {
        WorldConfig c = config;
        c.strategy = trials[i].strategy;
        c.rng_seed = trials[i].seed;
        auto result = run(c);
        trials[i].metrics = result.metrics;
        trials[i].trace = std::move(result.trace);
      }
    } catch (...) {
      errors[w] = std::current_exception();
      next = trials.size();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return trials;
}

std::string display_label(Strategy s, bool connectivity_table) {
  switch (s) {
    case Strategy::Baseline: return "Baseline";
    case Strategy::ProposedNoDeadlock: return "Proposed w/o deadlock avoidance";
    case Strategy::ProposedNoConnectivity: return "Proposed w/o connectivity maintenance";
    case Strategy::Proposed:
      return connectivity_table ? "Proposed w/ connectivity maintenance" : "Proposed w/ deadlock avoidance";
  }
  return std::string(to_string(s));
}

std::string trials_csv(const std::vector<Trial>& trials) {
  std::string out = "strategy,seed,alive_robots_avg,total_distance,goto_recharge_ticks,recharging_ticks,"
                    "wait_recharge_ticks,treasures_collected,treasure_value_total\n";
  for (const auto& t : trials) {
    out += std::string(to_string(t.strategy)) + "," + std::to_string(t.seed);
    for (double v : metrics::index_values(t.metrics)) out += "," + trace::exact(v);
    out += '\n';
  }
  return out;
}

std::string summary_csv(const std::vector<Trial>& trials, const std::vector<Strategy>& strategies,
                        double seconds_per_tick, bool sd) {
  const bool connectivity_table =
      std::find(strategies.begin(), strategies.end(), Strategy::ProposedNoConnectivity) != strategies.end();
  std::vector<metrics::Summary> columns;
  for (Strategy s : strategies) {
    std::vector<metrics::MetricsRecord> records;
    for (const auto& t : trials)
      if (t.strategy == s) records.push_back(t.metrics);
    columns.push_back(metrics::to_display(metrics::aggregate(records), seconds_per_tick));
  }
  std::string out = "Performance Indices";
  for (Strategy s : strategies) out += "," + display_label(s, connectivity_table);
  out += '\n';
  for (std::size_t row = 0; row < metrics::kIndexCount; ++row) {
    out += metrics::kIndexLabels[row];
    for (const auto& c : columns) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.4f", sd ? c.rows[row].sd : c.rows[row].mean);
      out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

int cmd_run(const RunRequest& request) { return execute(request, false); }
int cmd_compare(const RunRequest& request) { return execute(request, true); }

}  // namespace eaforage::batch
