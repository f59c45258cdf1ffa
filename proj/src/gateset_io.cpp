#include "gsu/gateset_io.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gsu {

namespace {

using nlohmann::json;

constexpr double kInputTol = 1e-8;
constexpr double kDetTol = 1e-10;

const std::complex<double> kI(0.0, 1.0);

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
  throw InputError("problem file " + origin + ": " + msg);
}

ComplexMatrix matrix_from_json(const json& j, int d, const std::string& origin,
                               const std::string& field) {
  if (!j.is_array() || static_cast<int>(j.size()) != d)
    fail(origin, field + ": expected " + std::to_string(d) + " rows");
  ComplexMatrix m(d, d);
  for (int r = 0; r < d; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      fail(origin, field + ": row " + std::to_string(r) + " must have " +
                       std::to_string(d) + " entries");
    for (int c = 0; c < d; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number())
        fail(origin, field + ": entry (" + std::to_string(r) + "," +
                         std::to_string(c) + ") must be a [re, im] pair");
      m(r, c) = std::complex<double>(e[0].get<double>(), e[1].get<double>());
    }
  }
  if (!is_finite_matrix(m))
    fail(origin, field + ": entries must be finite numbers");
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ComplexMatrix> su_elements_from_json(const json& j, int d,
                                                 const std::string& origin,
                                                 const std::string& field) {
  if (!j.is_array()) fail(origin, field + ": expected an array of matrices");
  std::vector<ComplexMatrix> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string tag = field + "[" + std::to_string(i) + "]";
    ComplexMatrix m = matrix_from_json(j[i], d, origin, tag);
    if (!is_skew_hermitian(m, kInputTol))
      fail(origin, tag + ": must be skew-hermitian within 1e-8");
    if (!is_traceless(m, kInputTol))
      fail(origin, tag + ": must be traceless within 1e-8");
    out.push_back(std::move(m));
  }
  return out;
}

ComplexMatrix resolve_gate(const json& j, int d, const ParseOptions& opts,
                           std::vector<std::string>& notices,
                           const std::string& origin, const std::string& tag) {
  ComplexMatrix g;
  std::string label = tag;
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    try {
      g = named_gate(name, d);
    } catch (const InputError& e) {
      fail(origin, tag + ": " + e.what());
    }
    label = tag + " (" + name + ")";
  } else {
    g = matrix_from_json(j, d, origin, tag);
  }
  if (!is_unitary(g, kInputTol))
    fail(origin, label + ": not unitary within 1e-8");
  if (opts.normalize) {
    std::string note;
    g = special_unitarize(g, &note);
    if (!note.empty()) notices.push_back(label + ": " + note);
  } else if (!is_special_unitary(g, kInputTol)) {
    fail(origin,
         label + ": determinant is not 1 and normalization is disabled");
  }
  return g;
}

template <typename T>
std::optional<T> opt_number(const json& parent, const char* key, bool integral,
                            const std::string& origin,
                            const std::string& scope) {
  if (!parent.contains(key)) return std::nullopt;
  const json& v = parent.at(key);
  if (integral ? !v.is_number_integer() : !v.is_number())
    fail(origin, scope + key + ": expected a " +
                     (integral ? "whole number" : "number"));
  return v.get<T>();
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& origin, const std::string& scope) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) fail(origin, scope + "unknown key \"" + key + "\"");
  }
}

}  // namespace

const char* problem_kind_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::AlgebraUniversality: return "algebra_universality";
    case ProblemKind::AlgebraMembership: return "algebra_membership";
    case ProblemKind::GroupUniversality: return "group_universality";
    case ProblemKind::SubgroupUniversality: return "subgroup_universality";
    case ProblemKind::GroupMembership: return "group_membership";
  }
  return "unknown";
}

ProblemKind problem_kind_from_name(const std::string& name) {
  if (name == "algebra_universality") return ProblemKind::AlgebraUniversality;
  if (name == "algebra_membership") return ProblemKind::AlgebraMembership;
  if (name == "group_universality") return ProblemKind::GroupUniversality;
  if (name == "subgroup_universality") return ProblemKind::SubgroupUniversality;
  if (name == "group_membership") return ProblemKind::GroupMembership;
  throw InputError("unknown problem kind \"" + name + "\"");
}

ComplexMatrix special_unitarize(const ComplexMatrix& u, std::string* notice) {
  if (!is_unitary(u, kInputTol))
    throw InputError("special_unitarize: input is not unitary within 1e-8");
  const std::complex<double> det = u.determinant();
  if (std::abs(det - 1.0) < kDetTol) return u;
  const double phi = std::arg(det);
  const auto d = static_cast<double>(u.rows());
  const ComplexMatrix out = std::polar(1.0, -phi / d) * u;
  if (notice) {
    std::ostringstream os;
    os << "rescaled by exp(-i*" << phi / d << ") to make the determinant 1";
    *notice = os.str();
  }
  return out;
}

ComplexMatrix named_gate(const std::string& name, int d) {
  if (d < 2) throw InputError("named_gate: dimension must be at least 2");
  if (name == "I") return ComplexMatrix::Identity(d, d);
  if (name == "CLOCK") {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) m(k, k) = std::polar(1.0, 2.0 * M_PI * k / d);
    return m;
  }
  if (name == "SHIFT") {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) m((k + 1) % d, k) = 1.0;
    return m;
  }
  if (d == 2) {
    ComplexMatrix m(2, 2);
    if (name == "X") { m << 0, 1, 1, 0; return m; }
    if (name == "Y") { m << 0, -kI, kI, 0; return m; }
    if (name == "Z") { m << 1, 0, 0, -1; return m; }
    if (name == "H") { m << 1, 1, 1, -1; return m / std::sqrt(2.0); }
    if (name == "S") { m << 1, 0, 0, kI; return m; }
    if (name == "T") { m << 1, 0, 0, std::polar(1.0, M_PI / 4); return m; }
  }
  if (d == 4) {
    ComplexMatrix m = ComplexMatrix::Identity(4, 4);
    if (name == "CNOT") {
      m(2, 2) = m(3, 3) = 0;
      m(2, 3) = m(3, 2) = 1;
      return m;
    }
    if (name == "CZ") { m(3, 3) = -1; return m; }
    if (name == "SWAP") {
      m(1, 1) = m(2, 2) = 0;
      m(1, 2) = m(2, 1) = 1;
      return m;
    }
  }
  throw InputError("named_gate: unknown gate \"" + name + "\" for d=" +
                   std::to_string(d));
}

ProblemFile parse_problem_text(const std::string& text,
                               const std::string& origin,
                               const ParseOptions& opts) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin, e.what());
  }
  if (!root.is_object()) fail(origin, "top level must be an object");
  check_keys(root,
             {"d", "problem", "gates", "hamiltonians", "Y", "budgets",
              "tolerances"},
             origin, "");

  ProblemFile pf;
  if (!root.contains("d") || !root["d"].is_number_integer())
    fail(origin, "d: required whole number");
  pf.d = root["d"].get<int>();
  if (pf.d < 2) fail(origin, "d: must be at least 2");

  if (!root.contains("problem") || !root["problem"].is_string())
    fail(origin, "problem: required string");
  try {
    pf.problem = problem_kind_from_name(root["problem"].get<std::string>());
  } catch (const InputError& e) {
    fail(origin, e.what());
  }

  if (root.contains("hamiltonians"))
    pf.hamiltonians =
        su_elements_from_json(root["hamiltonians"], pf.d, origin, "hamiltonians");
  if (root.contains("Y"))
    pf.y_set = su_elements_from_json(root["Y"], pf.d, origin, "Y");

  const bool group_problem = pf.problem == ProblemKind::GroupUniversality ||
                             pf.problem == ProblemKind::SubgroupUniversality ||
                             pf.problem == ProblemKind::GroupMembership;
  if (root.contains("gates")) {
    const json& gates = root["gates"];
    if (!gates.is_array()) fail(origin, "gates: expected an array");
    for (std::size_t i = 0; i < gates.size(); ++i)
      pf.gates.push_back(resolve_gate(gates[i], pf.d, opts, pf.notices, origin,
                                      "gates[" + std::to_string(i) + "]"));
  } else if (group_problem && !pf.hamiltonians.empty()) {
    for (std::size_t i = 0; i < pf.hamiltonians.size(); ++i)
      pf.gates.push_back(mat_exp(pf.hamiltonians[i]));
    pf.notices.push_back("gates synthesized as exp(hamiltonians)");
  }

  if (root.contains("budgets")) {
    const json& b = root["budgets"];
    if (!b.is_object()) fail(origin, "budgets: expected an object");
    check_keys(b, {"max_word_length", "element_budget"}, origin, "budgets.");
    pf.max_word_length =
        opt_number<int>(b, "max_word_length", true, origin, "budgets.");
    if (pf.max_word_length && *pf.max_word_length < 0)
      fail(origin, "budgets.max_word_length: must be >= 0");
    pf.element_budget =
        opt_number<long>(b, "element_budget", true, origin, "budgets.");
    if (pf.element_budget && *pf.element_budget < 1)
      fail(origin, "budgets.element_budget: must be >= 1");
  }
  if (root.contains("tolerances")) {
    const json& t = root["tolerances"];
    if (!t.is_object()) fail(origin, "tolerances: expected an object");
    check_keys(t, {"rank_tol", "dedup_tol", "commute_tol"}, origin,
               "tolerances.");
    pf.rank_tol = opt_number<double>(t, "rank_tol", false, origin, "tolerances.");
    pf.dedup_tol =
        opt_number<double>(t, "dedup_tol", false, origin, "tolerances.");
    pf.commute_tol =
        opt_number<double>(t, "commute_tol", false, origin, "tolerances.");
    for (const auto& [key, val] :
         {std::pair<const char*, std::optional<double>>{"rank_tol", pf.rank_tol},
          {"dedup_tol", pf.dedup_tol},
          {"commute_tol", pf.commute_tol}})
      if (val && !(*val > 0.0 && std::isfinite(*val)))
        fail(origin, std::string("tolerances.") + key + ": must be positive");
  }

  switch (pf.problem) {
    case ProblemKind::AlgebraUniversality:
      if (pf.hamiltonians.empty())
        fail(origin, "algebra_universality needs a nonempty hamiltonians list");
      break;
    case ProblemKind::AlgebraMembership:
      if (pf.hamiltonians.empty())
        fail(origin, "algebra_membership needs a nonempty hamiltonians list");
      if (!root.contains("Y"))
        fail(origin, "algebra_membership needs a Y list (may be empty)");
      break;
    case ProblemKind::GroupUniversality:
      if (pf.gates.empty())
        fail(origin, "group_universality needs gates (or hamiltonians to "
                     "exponentiate)");
      break;
    case ProblemKind::SubgroupUniversality:
      if (pf.hamiltonians.empty())
        fail(origin, "subgroup_universality needs a nonempty hamiltonians list");
      if (pf.y_set.empty())
        fail(origin, "subgroup_universality needs a nonempty Y list");
      break;
    case ProblemKind::GroupMembership:
      if (pf.hamiltonians.empty())
        fail(origin, "group_membership needs a nonempty hamiltonians list");
      if (!root.contains("Y"))
        fail(origin, "group_membership needs a Y list (may be empty)");
      break;
  }
  return pf;
}

ProblemFile parse_problem(const std::string& path, const ParseOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("problem file " + path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str(), path, opts);
}

std::string serialize_problem(const ProblemFile& pf) {
  json root;
  root["d"] = pf.d;
  root["problem"] = problem_kind_name(pf.problem);
  if (!pf.gates.empty()) {
    json gates = json::array();
    for (const ComplexMatrix& g : pf.gates) gates.push_back(matrix_to_json(g));
    root["gates"] = std::move(gates);
  }
  if (!pf.hamiltonians.empty() ||
      pf.problem == ProblemKind::AlgebraUniversality) {
    json hs = json::array();
    for (const ComplexMatrix& h : pf.hamiltonians)
      hs.push_back(matrix_to_json(h));
    root["hamiltonians"] = std::move(hs);
  }
  if (!pf.y_set.empty() || pf.problem == ProblemKind::AlgebraMembership ||
      pf.problem == ProblemKind::GroupMembership) {
    json ys = json::array();
    for (const ComplexMatrix& y : pf.y_set) ys.push_back(matrix_to_json(y));
    root["Y"] = std::move(ys);
  }
  if (pf.max_word_length || pf.element_budget) {
    json b = json::object();
    if (pf.max_word_length) b["max_word_length"] = *pf.max_word_length;
    if (pf.element_budget) b["element_budget"] = *pf.element_budget;
    root["budgets"] = std::move(b);
  }
  if (pf.rank_tol || pf.dedup_tol || pf.commute_tol) {
    json t = json::object();
    if (pf.rank_tol) t["rank_tol"] = *pf.rank_tol;
    if (pf.dedup_tol) t["dedup_tol"] = *pf.dedup_tol;
    if (pf.commute_tol) t["commute_tol"] = *pf.commute_tol;
    root["tolerances"] = std::move(t);
  }
  return root.dump(2) + "\n";
}

}  // namespace gsu
