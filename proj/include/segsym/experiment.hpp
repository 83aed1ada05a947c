#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "segsym/error.hpp"

namespace segsym {

/// One scenario run. `params` is a flat JSON object whose keys are checked
/// against the scenario; `outputs` are written in the order the preset lists.
struct Experiment {
  std::string name;
  std::string scenario;
  nlohmann::json params = nlohmann::json::object();
  std::vector<std::string> outputs;
};

struct Preset {
  std::string id;
  std::string description;
  std::string topic;
  std::string outputs;
};

/// Presets sorted by id.
const std::vector<Preset>& presets();
std::string list_presets();

/// Parses an experiment config; malformed JSON raises ConfigInvalid with the
/// line and column of the fault.
Experiment parse_experiment(const std::string& text);
Experiment load_experiment(const std::filesystem::path& path);

struct Outcome {
  std::string status = "done";  ///< pass | fail | done
  std::vector<std::pair<std::string, std::string>> summary;
  int exit_code = 0;

  /// RESULT name=<...> status=<...> key=value ...
  std::string result_line(const std::string& name) const;
};

/// Validates every parameter before computing, then runs the scenario.
/// Progress lines (acceptance criteria) go to `log`.
Outcome run_experiment(const Experiment& exp, std::ostream& log);

/// 1 config, 2 input, 3 numerical.
int exit_code_for(ErrorKind kind);

/// "a:b:step" or a comma list, ascending.
std::vector<double> parse_radii(const std::string& text);
std::vector<double> parse_list(const std::string& text);

}  // namespace segsym
