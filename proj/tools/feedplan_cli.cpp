#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "feedplan/cli/runner.hpp"
#include "feedplan/cli/sweep.hpp"
#include "feedplan/cli/worker_pool.hpp"

namespace {

using namespace feedplan::cli;

struct Common {
  std::string config;
  std::vector<std::string> overrides;
  std::string out;
  bool no_timings = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("-c,--config", c.config, "TOML or JSON scenario config")->check(CLI::ExistingFile);
  sub->add_option("--set", c.overrides, "Override a config key, e.g. --set planner.max_iters=2000");
  sub->add_option("-o,--out", c.out, "Write output here instead of stdout");
  sub->add_flag("--no-timings", c.no_timings, "Omit wall-clock timings from JSON output");
}

// Flags beat --set, which beats the config file, which beats the defaults.
ScenarioConfig load(const Common& c, const std::vector<std::string>& flag_overrides) {
  TomlDocument doc;
  doc.source = "<defaults>";
  if (!c.config.empty()) doc = read_config_file(c.config);
  for (const auto& o : c.overrides) set_toml_value(doc, o);
  for (const auto& o : flag_overrides) set_toml_value(doc, o);
  return load_config(doc);
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw feedplan::Error("cannot write " + c.out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bite-transfer trajectory planning"};
  app.require_subcommand(1);

  Common common;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<double> stop_fraction;
  std::optional<double> sigma;
  std::optional<int> scenarios;
  std::optional<int> workers;

  auto* plan = app.add_subcommand("plan", "Plan one bite and print a JSON report");
  add_common(plan, common);
  plan->add_option("--seed", seed, "Planner seed");
  plan->add_option("--mode", mode, "Cost mode: distance, efficiency, comfort or combined");

  auto* multibite = app.add_subcommand("multibite", "Plan bites until the food is consumed");
  add_common(multibite, common);
  multibite->add_option("--seed", seed, "Base seed");
  multibite->add_option("--mode", mode, "Cost mode");
  multibite->add_option("--stop-fraction", stop_fraction, "Stop once this fraction of the volume remains");

  auto* sweep = app.add_subcommand("sweep", "Weight sweep over random scenarios, CSV output");
  add_common(sweep, common);
  sweep->add_option("--seed", seed, "Base seed");
  sweep->add_option("--scenarios", scenarios, "Scenarios per cell");
  sweep->add_option("--workers", workers, "Worker threads (default: FEEDPLAN_WORKERS or all cores)");

  auto* calib = app.add_subcommand("calib", "Synthetic force/torque calibration demo");
  add_common(calib, common);
  calib->add_option("--seed", seed, "Noise seed");
  calib->add_option("--sigma", sigma, "Force noise standard deviation in N");

  auto* validate = app.add_subcommand("validate-config", "Print the effective config as TOML");
  add_common(validate, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  std::vector<std::string> flags;
  try {
    if (mode) flags.push_back("costs.mode=" + quote_toml(*mode));
    if (stop_fraction) flags.push_back("multibite.stop_fraction=" + format_double(*stop_fraction));
    if (sigma) flags.push_back("calib.noise_sigma=" + format_double(*sigma));
    if (scenarios) flags.push_back("sweep.scenarios_per_cell=" + std::to_string(*scenarios));
    if (seed) flags.push_back((sweep->parsed() ? "sweep.base_seed=" : "seed=") + std::to_string(*seed));
    const ScenarioConfig cfg = load(common, flags);

    if (plan->parsed() || multibite->parsed()) {
      const RunResult r = plan->parsed() ? run_scenario(cfg) : run_multibite(cfg);
      emit(common, dump_report(r.report, !common.no_timings));
      if (r.code == kExitNoTrajectory) std::cerr << "error: no goal was reached\n";
      return r.code;
    }
    if (sweep->parsed()) {
      std::ostringstream csv;
      write_sweep_csv(csv, run_sweep(cfg, workers.value_or(worker_count())));
      emit(common, csv.str());
      return kExitOk;
    }
    if (calib->parsed()) {
      const CalibDemo d = calibration_demo(cfg.calib, cfg.seed);
      emit(common, dump_report(calib_report(cfg.calib, cfg.seed, d), !common.no_timings));
      return kExitOk;
    }
    emit(common, to_toml(cfg));
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
