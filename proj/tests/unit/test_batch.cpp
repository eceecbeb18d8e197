#include <doctest.h>

#include <sstream>

#include "eaforage/batch.hpp"

using namespace eaforage;
using namespace eaforage::batch;

TEST_CASE("seed lists") {
  CHECK(parse_seeds("1..3") == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(parse_seeds("5..5") == std::vector<std::uint64_t>{5});
  CHECK(parse_seeds("4,1,9") == std::vector<std::uint64_t>{4, 1, 9});
  CHECK(parse_seeds("12") == std::vector<std::uint64_t>{12});
  for (const char* bad : {"", "x..y", "3..1", "1,,2", "1..", "-1", "1,a"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_seeds(bad), SeedListError);
  }
}

TEST_CASE("column labels") {
  CHECK(display_label(Strategy::Baseline, false) == "Baseline");
  CHECK(display_label(Strategy::Proposed, false) == "Proposed w/ deadlock avoidance");
  CHECK(display_label(Strategy::ProposedNoDeadlock, false) == "Proposed w/o deadlock avoidance");
  CHECK(display_label(Strategy::Proposed, true) == "Proposed w/ connectivity maintenance");
  CHECK(display_label(Strategy::ProposedNoConnectivity, true) == "Proposed w/o connectivity maintenance");
}

TEST_CASE("trials and summary tables") {
  auto c = default_foraging_config();
  c.max_iterations = 120;
  const std::vector<Strategy> strategies{Strategy::Proposed, Strategy::ProposedNoDeadlock, Strategy::Baseline};
  const auto trials = run_trials(c, strategies, {1, 2, 3}, 4);
  REQUIRE(trials.size() == 9);
  CHECK(trials[0].strategy == Strategy::Proposed);
  CHECK(trials[8].strategy == Strategy::Baseline);
  CHECK(trials[4].seed == 2);

  const auto summary = summary_csv(trials, strategies, c.seconds_per_tick, false);
  std::istringstream in(summary);
  std::string first;
  std::getline(in, first);
  CHECK(first == "Performance Indices,Proposed w/ deadlock avoidance,Proposed w/o deadlock avoidance,Baseline");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 7);

  const std::vector<Strategy> pair{Strategy::Proposed, Strategy::ProposedNoConnectivity};
  const auto connectivity = summary_csv(run_trials(c, pair, {1}, 2), pair, c.seconds_per_tick, true);
  CHECK(connectivity.rfind("Performance Indices,Proposed w/ connectivity maintenance,", 0) == 0);
}

TEST_CASE("thread count does not change results") {
  auto c = default_foraging_config();
  c.max_iterations = 150;
  const auto one = run_trials(c, {Strategy::Proposed, Strategy::Baseline}, {1, 2, 3, 4}, 1);
  const auto many = run_trials(c, {Strategy::Proposed, Strategy::Baseline}, {1, 2, 3, 4}, 8);
  CHECK(trials_csv(one) == trials_csv(many));
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i].trace == many[i].trace);
}
