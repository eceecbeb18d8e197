#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "eaforage/batch.hpp"
#include "eaforage/energy.hpp"
#include "eaforage/engine.hpp"

namespace py = pybind11;
using namespace eaforage;

namespace {

Strategy strategy_arg(const std::string& name) {
  if (auto s = strategy_from_string(name)) return *s;
  throw py::value_error("unknown strategy '" + name + "'");
}

py::dict metrics_dict(const metrics::MetricsRecord& m) {
  py::dict d;
  d["alive_robots_avg"] = m.alive_robots_avg;
  d["total_distance"] = m.total_distance;
  d["goto_recharge_ticks"] = m.goto_recharge_time;
  d["recharging_ticks"] = m.recharging_time;
  d["wait_recharge_ticks"] = m.wait_recharge_time;
  d["treasures_collected"] = m.treasures_collected;
  d["treasure_value_total"] = m.treasure_value_total;
  d["ticks"] = m.ticks;
  return d;
}

WorldConfig resolve(const std::string& config_text, std::optional<std::string> strategy, std::uint64_t seed,
                    std::optional<int> iterations) {
  WorldConfig c = parse_config(config_text);
  if (strategy) c.strategy = strategy_arg(*strategy);
  c.rng_seed = seed;
  if (iterations) c.max_iterations = *iterations;
  return validate_config(c);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Energy-aware multi-robot foraging simulator";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("default_config", [] { return dump_config(default_foraging_config()); },
        "Default foraging setup as JSON text.");
  m.def("load_config", [](const std::filesystem::path& p) { return dump_config(load_config(p)); },
        py::arg("path"), "Reads and re-serialises a config file (raises ConfigError).");
  m.def("config_hash", [](const std::string& text) { return config_hash(parse_config(text)); },
        py::arg("config"));
  m.def("validate", [](const std::string& text) { validate_config(parse_config(text)); }, py::arg("config"));

  m.def(
      "run",
      [](const std::string& config, std::optional<std::string> strategy, std::uint64_t seed,
         std::optional<int> iterations) {
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run(resolve(config, strategy, seed, iterations));
        }
        py::dict out;
        out["metrics"] = metrics_dict(r.metrics);
        out["trace"] = r.trace;
        py::list energies;
        for (const auto& robot : r.final_state.robots) energies.append(robot.energy);
        out["final_energy"] = energies;
        return out;
      },
      py::arg("config"), py::arg("strategy") = py::none(), py::arg("seed") = 1, py::arg("iterations") = py::none(),
      "One trial. Returns {'metrics', 'trace', 'final_energy'}.");

  m.def(
      "summary",
      [](const std::string& config, const std::vector<std::string>& strategies, const std::string& seeds,
         bool sd) {
        const WorldConfig c = validate_config(parse_config(config));
        std::vector<Strategy> list;
        for (const auto& s : strategies) list.push_back(strategy_arg(s));
        const auto seed_list = batch::parse_seeds(seeds);
        py::gil_scoped_release release;
        return batch::summary_csv(batch::run_trials(c, list, seed_list), list, c.seconds_per_tick, sd);
      },
      py::arg("config"), py::arg("strategies"), py::arg("seeds") = "1", py::arg("sd") = false,
      "Comparison table as CSV text.");

  m.def("parse_seeds", &batch::parse_seeds, py::arg("text"));

  m.def(
      "energy_tick",
      [](double e, double moved, bool picked) { return energy::energy_tick(e, moved, picked, EnergyParams{}); },
      py::arg("energy"), py::arg("moved"), py::arg("picked") = false);
  m.def("recharge_tick", [](double e) { return energy::recharge_tick(e, EnergyParams{}); }, py::arg("energy"));
}
