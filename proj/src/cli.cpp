#include "gsu/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gsu/appendix.hpp"
#include "gsu/gateset_io.hpp"
#include "gsu/lie_algebra.hpp"
#include "gsu/lie_group.hpp"
#include "gsu/report.hpp"
#include "gsu/version.hpp"

namespace gsu {

namespace {

using nlohmann::json;

constexpr int kDefaultMaxWordLength = 16;
constexpr long kDefaultElementBudget = 200000;

struct CliOptions {
  std::string input;
  std::optional<int> max_word_length;
  std::optional<long> element_budget;
  std::optional<double> tol_rank;
  std::optional<double> tol_dedup;
  std::optional<double> tol_commute;
  std::string output = "text";
  bool no_normalize = false;
  std::uint64_t seed = 0;
  int samples = 1000;
};

std::optional<int> parse_thread_cap() {
  const char* raw = std::getenv("GATESET_ORACLE_THREADS");
  if (!raw) return std::nullopt;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 1)
    throw InputError(
        "GATESET_ORACLE_THREADS must be a positive whole number, got \"" +
        std::string(raw) + "\"");
  return static_cast<int>(v);
}

void add_common_flags(CLI::App* cmd, CliOptions& o, bool group_flags) {
  cmd->add_option("--input", o.input, "problem file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  if (group_flags) {
    cmd->add_option("--max-word-length", o.max_word_length,
                    "hard cap on explored word length");
    cmd->add_option("--budget", o.element_budget,
                    "hard cap on stored closure elements");
  }
  cmd->add_option("--tol-rank", o.tol_rank, "singular value rank cutoff");
  cmd->add_option("--tol-dedup", o.tol_dedup, "element dedup distance");
  cmd->add_option("--tol-commute", o.tol_commute, "witness commutation cutoff");
  cmd->add_option("--output", o.output, "report format")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_flag("--no-normalize", o.no_normalize,
                "reject gates whose determinant is not 1 instead of rescaling");
}

Tolerances resolve_tolerances(const CliOptions& o, const ProblemFile& pf) {
  Tolerances t;
  if (const auto v = o.tol_rank ? o.tol_rank : pf.rank_tol) t.rank_tol = *v;
  if (const auto v = o.tol_dedup ? o.tol_dedup : pf.dedup_tol) t.dedup_tol = *v;
  if (const auto v = o.tol_commute ? o.tol_commute : pf.commute_tol)
    t.commute_tol = *v;
  t.validate();
  return t;
}

int resolve_max_len(const CliOptions& o, const ProblemFile& pf) {
  if (o.max_word_length) return *o.max_word_length;
  if (pf.max_word_length) return *pf.max_word_length;
  return kDefaultMaxWordLength;
}

long resolve_budget(const CliOptions& o, const ProblemFile& pf) {
  if (o.element_budget) return *o.element_budget;
  if (pf.element_budget) return *pf.element_budget;
  return kDefaultElementBudget;
}

std::vector<AlgebraElement> to_elements(const std::vector<ComplexMatrix>& ms,
                                        const SuStructure& s) {
  std::vector<AlgebraElement> out;
  out.reserve(ms.size());
  for (const ComplexMatrix& m : ms) out.push_back(s.to_coords(m));
  return out;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

int emit(const json& report, const CliOptions& o, std::ostream& out) {
  if (o.output == "json")
    out << report.dump(2) << "\n";
  else
    out << render_text(report);
  return exit_code_of(report);
}

// Loads the file, checks the declared problem kind, runs the decider, and
// renders one report whatever happens past flag parsing.
int run_decider(const std::string& subcommand, ProblemKind expected,
                const CliOptions& o, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  RunInfo info;
  info.subcommand = subcommand;
  info.input_path = o.input;
  try {
    info.threads_cap = parse_thread_cap();
    ParseOptions popts;
    popts.normalize = !o.no_normalize;
    const ProblemFile pf = parse_problem(o.input, popts);
    if (pf.problem != expected)
      throw InputError("problem file declares " +
                       std::string(problem_kind_name(pf.problem)) + " but " +
                       subcommand + " expects " + problem_kind_name(expected));
    info.kind = pf.problem;
    info.d = pf.d;
    info.gate_count = pf.gates.size();
    info.hamiltonian_count = pf.hamiltonians.size();
    info.y_count = pf.y_set.size();
    info.notices = pf.notices;
    const Tolerances tol = resolve_tolerances(o, pf);
    info.tol = tol;
    const int max_len = resolve_max_len(o, pf);
    const long budget = resolve_budget(o, pf);
    info.max_word_length = max_len;
    info.element_budget = budget;

    const SuStructure s(pf.d);
    json report;
    switch (expected) {
      case ProblemKind::AlgebraUniversality: {
        const AlgebraVerdict v = decide_algebra_universality(
            to_elements(pf.hamiltonians, s), s, tol);
        info.elapsed_ms = ms_since(t0);
        report = report_json(info, v);
        break;
      }
      case ProblemKind::AlgebraMembership: {
        const auto x1 = to_elements(pf.hamiltonians, s);
        const auto y = to_elements(pf.y_set, s);
        const AlgebraVerdict v1 = decide_algebra_membership(
            x1, y, s, ProjectorVariant::FromFirstSet, tol);
        const AlgebraVerdict v2 = decide_algebra_membership(
            x1, y, s, ProjectorVariant::FromUnion, tol);
        if (v1.yes != v2.yes)
          throw Error("projector variants disagree; tolerances are too tight "
                      "for this input");
        info.elapsed_ms = ms_since(t0);
        report = report_json(info, v1);
        break;
      }
      case ProblemKind::GroupUniversality: {
        const GroupVerdict v =
            decide_group_universality(pf.gates, max_len, budget, tol);
        info.elapsed_ms = ms_since(t0);
        report = report_json(info, v);
        break;
      }
      case ProblemKind::SubgroupUniversality: {
        const GroupVerdict v = decide_subgroup_universality(
            to_elements(pf.hamiltonians, s), to_elements(pf.y_set, s), s,
            max_len, budget, tol);
        info.elapsed_ms = ms_since(t0);
        report = report_json(info, v);
        break;
      }
      case ProblemKind::GroupMembership: {
        const GroupVerdict v = decide_group_membership(
            to_elements(pf.hamiltonians, s), to_elements(pf.y_set, s), s,
            max_len, budget, tol);
        info.elapsed_ms = ms_since(t0);
        report = report_json(info, v);
        break;
      }
    }
    return emit(report, o, out);
  } catch (const HypothesisError& e) {
    info.elapsed_ms = ms_since(t0);
    return emit(error_report_json(info, "hypothesis", e.what()), o, out);
  } catch (const InputError& e) {
    info.elapsed_ms = ms_since(t0);
    return emit(error_report_json(info, "input", e.what()), o, out);
  } catch (const std::exception& e) {
    info.elapsed_ms = ms_since(t0);
    return emit(error_report_json(info, "internal", e.what()), o, out);
  }
}

int run_verify_appendix(const CliOptions& o, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  RunInfo info;
  info.subcommand = "verify-appendix";
  try {
    info.threads_cap = parse_thread_cap();
    if (o.samples < 0) throw InputError("--samples must be >= 0");
    const AppendixReport a = verify_appendix(o.seed, o.samples);
    info.elapsed_ms = ms_since(t0);
    return emit(report_json(info, a), o, out);
  } catch (const InputError& e) {
    info.elapsed_ms = ms_since(t0);
    return emit(error_report_json(info, "input", e.what()), o, out);
  } catch (const std::exception& e) {
    info.elapsed_ms = ms_since(t0);
    return emit(error_report_json(info, "internal", e.what()), o, out);
  }
}

int run_info(const CliOptions& o, std::ostream& out) {
  json r;
  r["schema"] = kReportSchema;
  r["tool"] = {{"name", kToolName}, {"version", kVersion}};
  r["defaults"] = {{"max_word_length", kDefaultMaxWordLength},
                   {"element_budget", kDefaultElementBudget},
                   {"rank_tol", Tolerances{}.rank_tol},
                   {"dedup_tol", Tolerances{}.dedup_tol},
                   {"commute_tol", Tolerances{}.commute_tol}};
  r["named_gates"] = {{"any d", {"I", "CLOCK", "SHIFT"}},
                      {"d=2", {"X", "Y", "Z", "H", "S", "T"}},
                      {"d=4", {"CNOT", "CZ", "SWAP"}}};
  r["exit_codes"] = {{"yes", 0}, {"no", 1}, {"inconclusive", 2}, {"error", 3}};
  try {
    const auto cap = parse_thread_cap();
    if (cap) r["threads"] = {{"cap", *cap}, {"used", 1}};
  } catch (const InputError& e) {
    r["threads"] = {{"error", e.what()}};
  }
  if (o.output == "json") {
    out << r.dump(2) << "\n";
  } else {
    out << kToolName << " " << kVersion << "  report schema " << kReportSchema
        << "\n";
    out << "defaults: max word length " << kDefaultMaxWordLength
        << ", element budget " << kDefaultElementBudget << ", rank tol "
        << Tolerances{}.rank_tol << ", dedup tol " << Tolerances{}.dedup_tol
        << ", commute tol " << Tolerances{}.commute_tol << "\n";
    out << "named gates: I, CLOCK, SHIFT (any d); X, Y, Z, H, S, T (d=2); "
           "CNOT, CZ, SWAP (d=4)\n";
    out << "exit codes: 0 yes, 1 no, 2 inconclusive, 3 error\n";
  }
  return 0;
}

}  // namespace

int cli_run(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"universality and membership deciders for gate and "
               "Hamiltonian sets in SU(d)"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CliOptions o;
  struct Sub {
    const char* name;
    const char* help;
    ProblemKind kind;
  };
  const std::vector<Sub> subs = {
      {"alg-universal", "do the Hamiltonians generate the full algebra",
       ProblemKind::AlgebraUniversality},
      {"alg-member", "does Y lie in the algebra generated by the Hamiltonians",
       ProblemKind::AlgebraMembership},
      {"grp-universal", "do the gates generate a dense subgroup of SU(d)",
       ProblemKind::GroupUniversality},
      {"sub-universal",
       "does exp(Y) densely generate the subgroup of the generated algebra",
       ProblemKind::SubgroupUniversality},
      {"grp-member",
       "do added generators change the closure of the base gate set",
       ProblemKind::GroupMembership},
  };
  std::vector<CLI::App*> sub_apps;
  for (const Sub& sub : subs) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    const bool group_flags = sub.kind != ProblemKind::AlgebraUniversality &&
                             sub.kind != ProblemKind::AlgebraMembership;
    add_common_flags(cmd, o, group_flags);
    sub_apps.push_back(cmd);
  }

  CLI::App* verify = app.add_subcommand(
      "verify-appendix", "sample-check the commutator and log-trace bounds");
  verify->add_option("--seed", o.seed, "sampling seed");
  verify->add_option("--samples", o.samples,
                     "commutator pairs per dimension (log checks use 1/10)");
  verify->add_option("--output", o.output, "report format")
      ->check(CLI::IsMember({"json", "text"}));

  CLI::App* info_cmd =
      app.add_subcommand("info", "print tool version, defaults, and gate names");
  info_cmd->add_option("--output", o.output, "report format")
      ->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 3;
  }

  for (std::size_t i = 0; i < subs.size(); ++i)
    if (sub_apps[i]->parsed())
      return run_decider(subs[i].name, subs[i].kind, o, out);
  if (verify->parsed()) return run_verify_appendix(o, out);
  return run_info(o, out);
}

}  // namespace gsu
