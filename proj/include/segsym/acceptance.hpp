#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "segsym/config.hpp"

namespace segsym {

struct Check {
  std::string name;
  double value = 0.0;
  std::string relation;  ///< "<=", ">=", "<", "==" against bound
  double bound = 0.0;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::vector<Check> checks;
  bool pass = false;
  double seconds = 0.0;
  std::string error;  ///< set when the criterion threw
};

struct AcceptanceOptions {
  std::filesystem::path out_dir = "accept_out";
  SolveConfig cfg;
  std::vector<int> only;  ///< empty runs 1..13
};

/// Criterion ids and their short names, in order.
const std::vector<std::pair<int, std::string>>& criteria();

/// Runs the selected criteria, writing c<id>_<name>.csv into out_dir.
/// Criterion 13 reruns the others into out_dir/rerun and compares bytes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS] 3 almgren-monotonicity (1.2 s)" plus the first failing check, if any.
std::string summary_line(const CriterionResult& r);

}  // namespace segsym
