#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gsu/errors.hpp"
#include "gsu/matrix_core.hpp"

namespace gsu {

enum class ProblemKind {
  AlgebraUniversality,
  AlgebraMembership,
  GroupUniversality,
  SubgroupUniversality,
  GroupMembership,
};

const char* problem_kind_name(ProblemKind kind);
ProblemKind problem_kind_from_name(const std::string& name);

// A validated problem instance. `gates` holds resolved matrices (named gates
// looked up, normalization applied); `hamiltonians` and `y_set` hold traceless
// skew-hermitian matrices. Optionals override engine defaults when set.
struct ProblemFile {
  int d = 0;
  ProblemKind problem = ProblemKind::GroupUniversality;
  std::vector<ComplexMatrix> gates;
  std::vector<ComplexMatrix> hamiltonians;
  std::vector<ComplexMatrix> y_set;
  std::optional<int> max_word_length;
  std::optional<long> element_budget;
  std::optional<double> rank_tol;
  std::optional<double> dedup_tol;
  std::optional<double> commute_tol;
  std::vector<std::string> notices;  // normalization and synthesis notes
};

struct ParseOptions {
  bool normalize = true;  // auto special-unitarize gates, with a notice
};

ProblemFile parse_problem(const std::string& path, const ParseOptions& opts = {});
ProblemFile parse_problem_text(const std::string& text, const std::string& origin,
                               const ParseOptions& opts = {});
std::string serialize_problem(const ProblemFile& pf);

// Rescales a unitary by e^{-i arg(det)/d} so the determinant becomes 1. If a
// rescale happened and `notice` is non-null, a one-line description is written.
ComplexMatrix special_unitarize(const ComplexMatrix& u, std::string* notice = nullptr);

// Closed-form library: I (any d); X, Y, Z, H, S, T (d=2); CNOT, CZ, SWAP
// (d=4); CLOCK, SHIFT (any d). Unknown (name, d) throws InputError.
ComplexMatrix named_gate(const std::string& name, int d);

}  // namespace gsu
