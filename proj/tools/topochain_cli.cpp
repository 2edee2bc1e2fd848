#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "topochain/experiment.hpp"

namespace {

namespace fs = std::filesystem;
using topochain::Json;

Json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return Json::parse(in);
}

void write_error_json(const fs::path& out_dir, const std::string& message,
                      const std::string& field) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  Json error;
  error["error"]["message"] = message;
  if (!field.empty()) error["error"]["field"] = field;
  std::ofstream out(out_dir / "error.json");
  out << error.dump(2) << "\n";
}

int run_command(const std::string& config_path, const std::string& out_dir,
                std::optional<std::uint64_t> seed, std::optional<unsigned> threads) {
  std::string field;
  std::string message;
  try {
    const Json config = load_json(config_path);
    const auto artifacts = topochain::run_experiment(config, out_dir, seed, threads);
    std::cout << "wrote " << artifacts.summary.string() << "\n";
    for (const auto& file : artifacts.files) std::cout << "wrote " << file.string() << "\n";
    return 0;
  } catch (const topochain::ConfigError& error) {
    field = error.field;
    message = error.detail;
  } catch (const std::exception& error) {
    message = error.what();
  }
  write_error_json(out_dir, message, field);
  std::cerr << "error: " << (field.empty() ? message : field + ": " + message) << "\n";
  return 1;
}

int validate_command(const std::string& config_path) {
  try {
    topochain::parse_config(load_json(config_path));
    std::cout << "ok\n";
    return 0;
  } catch (const topochain::ConfigError& error) {
    std::cerr << "invalid: " << error.what() << "\n";
    return 1;
  } catch (const std::exception& error) {
    std::cerr << "invalid: " << error.what() << "\n";
    return 1;
  }
}

int recipes_command(const std::string& emit, const std::string& out_dir) {
  if (!emit.empty()) {
    const topochain::Recipe& recipe = topochain::find_recipe(emit);
    if (out_dir.empty()) {
      std::cout << recipe.config.dump(2) << "\n";
    } else {
      fs::create_directories(out_dir);
      const fs::path file = fs::path(out_dir) / (recipe.name + ".json");
      std::ofstream out(file);
      out << recipe.config.dump(2) << "\n";
      std::cout << "wrote " << file.string() << "\n";
    }
    return 0;
  }
  for (const auto& recipe : topochain::recipe_catalog()) {
    std::cout << recipe.name << "  [" << recipe.config.at("experiment").get<std::string>()
              << "]\n    " << recipe.title << "\n    expect: " << recipe.expectation << "\n";
  }
  std::cout << topochain::recipe_catalog().size()
            << " recipes; emit one with: topochain recipes --emit <name>\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extended-SSH chain state-transfer experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t value) { seed = value; }, "override the config seed");
    cmd->add_option_function<unsigned>(
        "--threads", [&](unsigned value) { threads = value; },
        "worker threads for ensembles (0 = all cores)");
  };

  CLI::App* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", config_path, "JSON config file")->required();
  add_common(run);

  CLI::App* validate = app.add_subcommand("validate", "check a config without running it");
  validate->add_option("config", config_path, "JSON config file")->required();

  std::string emit;
  std::string recipes_out;
  CLI::App* recipes = app.add_subcommand("recipes", "list figure-reproduction recipes");
  recipes->add_option("--emit", emit, "print (or write) the named recipe config");
  recipes->add_option("--out", recipes_out, "directory for the emitted config");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return run_command(config_path, out_dir, seed, threads);
  if (validate->parsed()) return validate_command(config_path);
  return recipes_command(emit, recipes_out);
}
