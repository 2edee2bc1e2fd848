#ifndef TOPOCHAIN_EXPERIMENT_HPP
#define TOPOCHAIN_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "topochain/chain.hpp"

namespace topochain {

using Json = nlohmann::json;

// Config/schema violation carrying the offending field path.
struct ConfigError : std::runtime_error {
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field(std::move(field)),
        detail(message) {}
  std::string field;
  std::string detail;
};

enum class ExperimentKind {
  Spectrum,
  Transfer,
  EnsembleCoupling,
  EnsembleTiming,
  CirclesScan,
  Winding,
  Spectroscopy,
  Hardware,
};

const char* to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from(const std::string& name);

// Validated view of a config document.  The raw json is kept as the parameter
// echo for summaries.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Spectrum;
  std::string name;        // artifact base name
  std::uint64_t seed = 0;
  unsigned threads = 0;
  double g0_mhz = 10.0;    // g0 / 2pi, for microsecond reporting
  ChainSpec chain;         // unused by Hardware configs
  Json raw;
};

// Parses and fully validates; throws ConfigError naming the field.
ExperimentConfig parse_config(const Json& config);

struct RunArtifacts {
  std::vector<std::filesystem::path> files;  // CSVs, in emission order
  std::filesystem::path summary;             // <name>.summary.json
  Json summary_json;
};

// Dispatches a validated config, writing one CSV per result table plus a
// summary JSON into out_dir.  Deterministic: fixed config + seed reproduce
// the artifacts byte for byte.
RunArtifacts run_experiment(const Json& config, const std::filesystem::path& out_dir,
                            std::optional<std::uint64_t> seed_override = std::nullopt,
                            std::optional<unsigned> threads_override = std::nullopt);

struct Recipe {
  std::string name;         // e.g. "fig2d"
  std::string title;
  std::string expectation;  // headline number and tolerance
  Json config;
};

// Built-in figure-reproduction recipes.
const std::vector<Recipe>& recipe_catalog();
const Recipe& find_recipe(const std::string& name);

// Deterministic formatting used by every CSV writer.
std::string format_double(double value);

}  // namespace topochain

#endif
