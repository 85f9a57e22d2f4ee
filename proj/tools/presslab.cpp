// presslab: experiment harness for pressure computations on subshifts of
// finite type. See README.md for config formats.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "presslab/experiments.hpp"
#include "presslab/oracle.hpp"
#include "presslab/shift_space.hpp"

namespace fs = std::filesystem;

static nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

int main(int argc, char** argv) {
  CLI::App app{"pressure computations on subshifts of finite type"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
  run->add_option("config", config_path, "config JSON file")->required();
  run->add_option("--out", out_dir, "output directory for report files");

  auto* list = app.add_subcommand("list", "list built-in experiments");

  std::string space_path, potential_path;
  auto* oracle =
      app.add_subcommand("oracle", "print the transfer-matrix pressure");
  oracle->add_option("space", space_path, "space JSON file")->required();
  oracle->add_option("potential", potential_path, "potential JSON file")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& [name, desc] : presslab::experiment_registry())
        std::printf("%-20s %s\n", name.c_str(), desc.c_str());
      return 0;
    }
    if (oracle->parsed()) {
      presslab::ShiftSpace space =
          presslab::space_from_json(load_json(space_path));
      presslab::Potential f =
          presslab::potential_from_json(space, load_json(potential_path));
      std::printf("%s\n",
                  presslab::format_sig12(
                      presslab::transfer_pressure_general(space, f))
                      .c_str());
      return 0;
    }
    // run
    nlohmann::json config = load_json(config_path);
    presslab::ExperimentResult res = presslab::run_experiment(config);
    fs::create_directories(out_dir);
    {
      std::ofstream out(fs::path(out_dir) / "report.json");
      out << res.report.dump(2) << "\n";
    }
    {
      std::ofstream out(fs::path(out_dir) / "samples.csv");
      out << presslab::render_csv(res.rows);
    }
    std::printf("%s: %s\n", res.report.at("experiment").get<std::string>().c_str(),
                res.pass ? "pass" : "FAIL");
    return res.pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
