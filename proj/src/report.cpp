#include "gsu/report.hpp"

#include <sstream>

#include "gsu/version.hpp"

namespace gsu {

namespace {

using nlohmann::json;

json base_report(const RunInfo& info) {
  json r;
  r["schema"] = kReportSchema;
  r["tool"] = {{"name", kToolName}, {"version", kVersion}};
  json problem;
  problem["subcommand"] = info.subcommand;
  if (!info.input_path.empty()) problem["input"] = info.input_path;
  if (info.kind) problem["kind"] = problem_kind_name(*info.kind);
  if (info.d > 0) problem["d"] = info.d;
  problem["counts"] = {{"gates", info.gate_count},
                       {"hamiltonians", info.hamiltonian_count},
                       {"Y", info.y_count}};
  r["problem"] = std::move(problem);
  r["tolerances"] = {{"rank_tol", info.tol.rank_tol},
                     {"dedup_tol", info.tol.dedup_tol},
                     {"commute_tol", info.tol.commute_tol}};
  if (info.threads_cap) {
    r["threads"] = {{"cap", *info.threads_cap}, {"used", 1}};
  }
  r["timing_ms"] = info.elapsed_ms;
  if (!info.notices.empty()) r["notices"] = info.notices;
  return r;
}

json condition_json(const ConditionReport& c) {
  return {{"equal", c.equal}, {"dim_lhs", c.dim_lhs}, {"dim_rhs", c.dim_rhs}};
}

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const RealVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json budget_json(const BudgetReport& b) {
  return {{"max_word_length", b.max_word_length},
          {"element_budget", b.element_budget},
          {"max_len_reached", b.max_len_reached},
          {"elements_explored", b.elements_explored},
          {"closure_finite", b.closure_finite}};
}

json diagram_json(const DiagramCase& dc) {
  return {{"dim_commutant_Ad_S1", dc.dim_commutant_Ad_S1},
          {"dim_commutant_Ad_S2", dc.dim_commutant_Ad_S2},
          {"dim_commutant_ad_X1", dc.dim_commutant_ad_X1},
          {"dim_commutant_ad_X2", dc.dim_commutant_ad_X2},
          {"top_equal", dc.top_equal},
          {"bottom_equal", dc.bottom_equal},
          {"left_equal", dc.left_equal},
          {"right_equal", dc.right_equal},
          {"decidable", dc.decidable}};
}

const char* answer_name(Answer a) {
  switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    case Answer::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

}  // namespace

json report_json(const RunInfo& info, const AlgebraVerdict& v) {
  json r = base_report(info);
  r["verdict"] = v.yes ? "yes" : "no";
  if (!v.witness_note.empty()) r["reason"] = v.witness_note;
  json cert;
  cert["commutant"] = condition_json(v.commutant);
  cert["dimension"] = condition_json(v.dimension);
  if (v.witness) cert["witness"] = {{"coordinates", vector_json(*v.witness)}};
  r["certificate"] = std::move(cert);
  return r;
}

json report_json(const RunInfo& info, const GroupVerdict& v) {
  json r = base_report(info);
  r["verdict"] = answer_name(v.answer);
  r["reason"] = v.reason;
  json cert;
  cert["commutant"] = condition_json(v.commutant);
  if (v.witness) {
    const char* reason = v.witness->reason == WitnessReason::BallNonCenter
                             ? "ball_non_center"
                             : "ball_non_commuting";
    cert["witness"] = {{"reason", reason},
                       {"word", v.witness->word},
                       {"element", matrix_json(v.witness->element)}};
  }
  if (v.diagram) cert["diagram"] = diagram_json(*v.diagram);
  r["certificate"] = std::move(cert);
  r["budget"] = budget_json(v.budget);
  return r;
}

json report_json(const RunInfo& info, const AppendixReport& a) {
  json r = base_report(info);
  r["verdict"] = a.all_passed() ? "yes" : "no";
  r["reason"] = a.all_passed() ? "all sampled bounds hold"
                               : "at least one sampled bound failed";
  r["certificate"] = {
      {"seed", a.seed},
      {"samples", a.samples},
      {"commutator_pairs_checked", a.commutator_pairs_checked},
      {"commutator_failures", a.commutator_failures},
      {"log_trace_checked", a.log_trace_checked},
      {"log_trace_failures", a.log_trace_failures},
      {"counterexample_not_applicable", a.counterexample_not_applicable},
      {"counterexample_norm_gap", a.counterexample_norm_gap},
      {"counterexample_trace_log", a.counterexample_trace_log}};
  return r;
}

json error_report_json(const RunInfo& info, const std::string& type,
                       const std::string& message) {
  json r = base_report(info);
  r["verdict"] = "error";
  r["error"] = {{"type", type}, {"message", message}};
  return r;
}

int exit_code_of(const json& report) {
  const std::string v = report.at("verdict").get<std::string>();
  if (v == "yes") return 0;
  if (v == "no") return 1;
  if (v == "inconclusive") return 2;
  return 3;
}

std::string render_text(const json& r) {
  std::ostringstream os;
  const json& p = r.at("problem");
  os << r.at("tool").at("name").get<std::string>() << " "
     << r.at("tool").at("version").get<std::string>() << "  schema "
     << r.at("schema").get<int>() << "\n";
  os << "command:   " << p.at("subcommand").get<std::string>();
  if (p.contains("input"))
    os << "  (input " << p.at("input").get<std::string>() << ")";
  os << "\n";
  if (p.contains("kind")) {
    os << "problem:   " << p.at("kind").get<std::string>();
    if (p.contains("d")) os << "  d=" << p.at("d").get<int>();
    const json& c = p.at("counts");
    os << "  gates=" << c.at("gates").get<std::size_t>()
       << " hamiltonians=" << c.at("hamiltonians").get<std::size_t>()
       << " Y=" << c.at("Y").get<std::size_t>() << "\n";
  }
  const json& t = r.at("tolerances");
  os << "tolerances: rank=" << t.at("rank_tol").get<double>()
     << " dedup=" << t.at("dedup_tol").get<double>()
     << " commute=" << t.at("commute_tol").get<double>() << "\n";
  if (r.contains("notices"))
    for (const auto& n : r.at("notices"))
      os << "notice:    " << n.get<std::string>() << "\n";

  if (r.contains("certificate")) {
    const json& cert = r.at("certificate");
    if (cert.contains("commutant")) {
      const json& c = cert.at("commutant");
      os << "commutant: dim " << c.at("dim_lhs").get<long>() << " vs "
         << c.at("dim_rhs").get<long>()
         << (c.at("equal").get<bool>() ? "  (equal)" : "  (unequal)") << "\n";
    }
    if (cert.contains("dimension")) {
      const json& c = cert.at("dimension");
      os << "span dims: " << c.at("dim_lhs").get<long>() << " vs "
         << c.at("dim_rhs").get<long>()
         << (c.at("equal").get<bool>() ? "  (equal)" : "  (unequal)") << "\n";
    }
    if (cert.contains("diagram")) {
      const json& dgm = cert.at("diagram");
      os << "diagram:   Ad_S1=" << dgm.at("dim_commutant_Ad_S1").get<long>()
         << " Ad_S2=" << dgm.at("dim_commutant_Ad_S2").get<long>()
         << " ad_X1=" << dgm.at("dim_commutant_ad_X1").get<long>()
         << " ad_X2=" << dgm.at("dim_commutant_ad_X2").get<long>()
         << (dgm.at("decidable").get<bool>() ? "  (decidable)"
                                             : "  (undecidable)")
         << "\n";
    }
    if (cert.contains("witness")) {
      const json& w = cert.at("witness");
      if (w.contains("word")) {
        os << "witness:   " << w.at("reason").get<std::string>() << ", word [";
        bool first = true;
        for (const auto& g : w.at("word")) {
          if (!first) os << " ";
          os << g.get<int>();
          first = false;
        }
        os << "]\n";
      } else {
        os << "witness:   coordinate vector present\n";
      }
    }
    if (cert.contains("commutator_pairs_checked")) {
      os << "commutator pairs: "
         << cert.at("commutator_pairs_checked").get<long>() << " checked, "
         << cert.at("commutator_failures").get<long>() << " failed\n";
      os << "log traces:       " << cert.at("log_trace_checked").get<long>()
         << " checked, " << cert.at("log_trace_failures").get<long>()
         << " failed\n";
      os << "counterexample:   "
         << (cert.at("counterexample_not_applicable").get<bool>()
                 ? "outside hypotheses"
                 : "unexpectedly inside hypotheses")
         << ", norm gap " << cert.at("counterexample_norm_gap").get<double>()
         << ", |tr log| " << cert.at("counterexample_trace_log").get<double>()
         << "\n";
    }
  }
  if (r.contains("budget")) {
    const json& b = r.at("budget");
    os << "explored:  " << b.at("elements_explored").get<long>()
       << " elements, word length " << b.at("max_len_reached").get<int>()
       << " of " << b.at("max_word_length").get<int>()
       << (b.at("closure_finite").get<bool>() ? ", closure finite" : "")
       << "\n";
  }
  if (r.contains("error")) {
    const json& e = r.at("error");
    os << "error:     [" << e.at("type").get<std::string>() << "] "
       << e.at("message").get<std::string>() << "\n";
  }
  os << "verdict:   " << r.at("verdict").get<std::string>();
  if (r.contains("reason"))
    os << "  (" << r.at("reason").get<std::string>() << ")";
  os << "\n";
  os << "elapsed:   " << r.at("timing_ms").get<double>() << " ms\n";
  return os.str();
}

}  // namespace gsu
