#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gsu/appendix.hpp"
#include "gsu/gateset_io.hpp"
#include "gsu/lie_algebra.hpp"
#include "gsu/lie_group.hpp"

namespace gsu {

// Everything a report echoes about the invocation besides the verdict.
struct RunInfo {
  std::string subcommand;
  std::string input_path;
  std::optional<ProblemKind> kind;
  int d = 0;
  std::size_t gate_count = 0;
  std::size_t hamiltonian_count = 0;
  std::size_t y_count = 0;
  Tolerances tol;
  int max_word_length = 0;
  long element_budget = 0;
  std::optional<int> threads_cap;  // GATESET_ORACLE_THREADS if set
  double elapsed_ms = 0.0;
  std::vector<std::string> notices;
};

// All reports share one schema: verdict, reason, certificate, budget,
// tolerances, problem echo. Text rendering reads the JSON back, so the two
// output modes cannot disagree.
nlohmann::json report_json(const RunInfo& info, const AlgebraVerdict& v);
nlohmann::json report_json(const RunInfo& info, const GroupVerdict& v);
nlohmann::json report_json(const RunInfo& info, const AppendixReport& r);
nlohmann::json error_report_json(const RunInfo& info, const std::string& type,
                                 const std::string& message);

std::string render_text(const nlohmann::json& report);
int exit_code_of(const nlohmann::json& report);  // 0 yes, 1 no, 2 inconclusive, 3 error

}  // namespace gsu
