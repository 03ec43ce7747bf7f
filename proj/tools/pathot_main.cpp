// Command-line front end: load an experiment config, run the protocol or
// attack it selects, and emit a security report (JSON) or sweep table (CSV).
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathot/config.hpp"

namespace {

void write_output(const std::string& text, const std::string& out_path) {
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw pathot::ConfigError("", "cannot write '" + out_path + "'");
    f << text;
  }
  std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"long-distance oblivious transfer over link-OT networks: "
               "protocols, attacks, exact security analysis"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string sweep_path;
  std::string transcript_path;
  std::string attack;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  CLI::App* run = app.add_subcommand(
      "run", "run one configured experiment and emit its report");
  run->add_option("--config", config_path, "experiment config JSON file")
      ->required();
  run->add_option("--trials", trials, "override the Monte Carlo trial count");
  run->add_option("--seed", seed, "override the experiment seed");
  run->add_option("--attack", attack,
                  "run an attack instead: claim2|collude|tamper|reduction");
  run->add_option("--out", out_path, "also write the report JSON here");
  run->add_option("--transcript", transcript_path,
                  "write one execution's transcript (JSON lines) here");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "run a parameter sweep and emit a CSV table");
  sweep->add_option("--config", config_path, "base experiment config JSON")
      ->required();
  sweep->add_option("--sweep", sweep_path, "sweep spec JSON file")->required();
  sweep->add_option("--out", out_path, "also write the CSV here");

  CLI11_PARSE(app, argc, argv);

  try {
    pathot::ExperimentConfig cfg =
        pathot::ExperimentConfig::load_file(config_path);

    if (run->parsed()) {
      if (run->count("--trials") > 0) cfg.trials = trials;
      if (run->count("--seed") > 0) cfg.seed = seed;
      if (run->count("--attack") > 0) {
        if (attack != "claim2" && attack != "collude" && attack != "tamper" &&
            attack != "reduction")
          throw pathot::ConfigError(
              "attack", "expected claim2|collude|tamper|reduction");
        cfg.attack = attack;
      }
      pathot::SecurityReport report = pathot::run_experiment(cfg);
      write_output(report.to_json().dump(2) + "\n", out_path);
      if (!transcript_path.empty()) {
        std::ofstream t(transcript_path);
        if (!t)
          throw pathot::ConfigError(
              "", "cannot write '" + transcript_path + "'");
        t << pathot::run_transcript(cfg);
      }
      return report.all_pass() ? 0 : 2;
    }

    std::ifstream sf(sweep_path);
    if (!sf)
      throw pathot::ConfigError("",
                                "cannot open sweep file '" + sweep_path + "'");
    nlohmann::json spec;
    try {
      sf >> spec;
    } catch (const nlohmann::json::exception& e) {
      throw pathot::ConfigError("sweep",
                                std::string("invalid JSON: ") + e.what());
    }
    write_output(pathot::run_sweep_csv(cfg, spec), out_path);
    return 0;
  } catch (const pathot::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
