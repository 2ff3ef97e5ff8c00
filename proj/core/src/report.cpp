#include <string>
#include <vector>

#include <json.hpp>

#include "crossint/report.hpp"

namespace crossint {
namespace {

using nlohmann::json;

// All exact values cross the interface as strings ("p" or "p/q"); doubles
// appear only in wall-clock fields, which JsonOptions can suppress.
std::string jrat(const Rational& v) { return fraction_str(v); }
std::string jbig(const BigInt& v) { return v.str(); }

json jfamilies(const std::vector<Family>& fs) {
  return families_to_string(fs);
}

json jparams(const TheoremParams& p) {
  return json{{"n", p.n}, {"k", p.k}, {"l", p.l}, {"r", p.r},
              {"c", jrat(p.c)}};
}

json jbound(const BoundReport& r) {
  json branches = json::array();
  for (const auto& [label, value] : r.branch_values)
    branches.push_back(json{{"label", label}, {"value", jrat(value)}});
  json j{{"branches", branches},
         {"max", jrat(r.max_value)},
         {"argmax", r.argmax_labels},
         {"tie", r.tie}};
  if (!r.predicted_cases.empty()) j["predicted_cases"] = r.predicted_cases;
  return j;
}

json jclassification(const ExtremalClassification& c) {
  json j{{"case", c.case_label}};
  j["witness_r_set"] =
      c.witness_r_set ? json(c.witness_r_set->str()) : json(nullptr);
  return j;
}

json jscan(const ScanResult& r, const JsonOptions& opts) {
  json witnesses = json::array();
  for (const WitnessPair& w : r.witnesses) {
    const std::vector<Family> pair{w.a, w.b};
    witnesses.push_back(json{{"pair_text", families_to_string(pair)},
                             {"a_size", w.a.size()},
                             {"b_size", w.b.size()},
                             {"minimal_s", w.minimal_s}});
  }
  json j{{"params", jparams(r.params)},
         {"engine", r.engine},
         {"window", json::array({r.window_lo, r.window_hi})},
         {"observed_max", jrat(r.observed_max)},
         {"witness_total", r.witness_total},
         {"witnesses", witnesses},
         {"bound", jbound(r.bound)},
         {"matched", r.matched},
         {"candidates_examined", r.candidates_examined},
         {"workers", r.workers}};
  if (opts.include_timing) j["wall_seconds"] = r.wall_seconds;
  return j;
}

json jinstance(const ProblemInstance& inst) {
  return json{{"problem", inst.problem_id},
              {"n", inst.n},
              {"t", inst.t},
              {"sizes", inst.sizes},
              {"q", inst.q}};
}

std::string render(const json& j, const JsonOptions& opts) {
  return j.dump(opts.indent) + "\n";
}

}  // namespace

std::string to_json_string(const BoundReport& r, const JsonOptions& opts) {
  return render(jbound(r), opts);
}

std::string to_json_string(const ScanResult& r, const JsonOptions& opts) {
  return render(jscan(r, opts), opts);
}

std::string to_json_string(const MainVerification& r,
                           const JsonOptions& opts) {
  json cases = json::object();
  for (const auto& [label, count] : r.case_counts) cases[label] = count;
  json witness_cases = json::array();
  for (const auto& c : r.witness_classifications)
    witness_cases.push_back(jclassification(c));
  json j{{"params", jparams(r.params)},
         {"bound", jbound(r.bound)},
         {"engines_agree", r.engines_agree},
         {"case_counts", cases},
         {"unclassified", r.unclassified},
         {"witness_classifications", witness_cases},
         {"matched", r.matched},
         {"ok", r.ok()}};
  j["brute"] = r.brute ? jscan(*r.brute, opts) : json(nullptr);
  j["l_initial"] = r.lscan ? jscan(*r.lscan, opts) : json(nullptr);
  return render(j, opts);
}

std::string to_json_string(const ExtremalClassification& r,
                           const JsonOptions& opts) {
  return render(jclassification(r), opts);
}

std::string to_json_string(const KkPreservationResult& r,
                           const JsonOptions& opts) {
  json j{{"n", r.n},
         {"k", r.k},
         {"l", r.l},
         {"trials", r.trials},
         {"seed", r.seed},
         {"rejected_samples", r.rejected_samples},
         {"pass", r.pass}};
  if (r.counterexample) {
    const std::vector<Family> pair{r.counterexample->first,
                                   r.counterexample->second};
    j["counterexample"] = families_to_string(pair);
  } else {
    j["counterexample"] = nullptr;
  }
  return render(j, opts);
}

std::string to_json_string(const ShadowMinimumResult& r,
                           const JsonOptions& opts) {
  json j{{"n", r.n},
         {"k", r.k},
         {"l", r.l},
         {"r", r.r},
         {"families_checked", jbig(r.families_checked)},
         {"min_shadow", jbig(r.min_shadow)},
         {"expected_min", jbig(r.expected_min)},
         {"minimizer_count", r.minimizer_count},
         {"expected_minimizers", r.expected_minimizers},
         {"minimizers_all_principal", r.minimizers_all_principal},
         {"pass", r.pass}};
  return render(j, opts);
}

std::string to_json_string(const BipartiteLemmaResult& r,
                           const JsonOptions& opts) {
  json j{{"n", r.n},
         {"k", r.k},
         {"l", r.l},
         {"s", r.s},
         {"c", jrat(r.c)},
         {"x_size", r.x_size},
         {"y_size", r.y_size},
         {"x_degree", r.x_degree},
         {"y_degree", r.y_degree},
         {"biregular", r.biregular},
         {"connected", r.connected},
         {"bound_holds", r.bound_holds},
         {"equality_only_full_sides", r.equality_only_full_sides},
         {"max_value", jrat(r.max_value)},
         {"subsets_checked", r.subsets_checked},
         {"pass", r.pass}};
  return render(j, opts);
}

std::string to_json_string(const CorollaryCheckResult& r,
                           const JsonOptions& opts) {
  json j{{"n", r.n},
         {"k", r.k},
         {"t", r.t},
         {"mode",
          r.mode == CorollaryMode::exhaustive ? "exhaustive" : "construction"},
         {"bound", jbound(r.bound)},
         {"observed", jbig(r.observed)},
         {"pass", r.pass}};
  if (r.mode == CorollaryMode::construction) {
    j["r_sum"] = jbig(r.r_sum);
    j["star_sum"] = jbig(r.star_sum);
    j["constructions_valid"] = r.constructions_valid;
  } else {
    j["best_m1"] = r.best_m1;
    j["best_m2"] = r.best_m2;
  }
  return render(j, opts);
}

std::string to_json_string(const InequalityScanReport& r,
                           const JsonOptions& opts) {
  json violations = json::array();
  for (const auto& v : r.violations)
    violations.push_back(json{{"inequality", v.inequality},
                              {"n", v.n},
                              {"k", v.k},
                              {"l", v.l},
                              {"i", v.i}});
  json j{{"max_n", r.max_n},
         {"cells_checked", r.cells_checked},
         {"violations", violations},
         {"eq13_locus_exact", r.eq13_locus_exact},
         {"eq13_threshold_cells", r.eq13_threshold_cells},
         {"eq13_degenerate_cells", r.eq13_degenerate_cells},
         {"pass", r.pass}};
  return render(j, opts);
}

std::string to_json_string(const SearchOutcome& r, const JsonOptions& opts) {
  json j{{"instance", jinstance(r.instance)},
         {"conjectured", jbound(r.conjectured)},
         {"best_found", jbig(r.best_found)},
         {"witness", jfamilies(r.witness)},
         {"status", to_string(r.status)},
         {"candidates_examined", r.candidates_examined},
         {"seed", r.seed},
         {"compressed_search", r.compressed_search},
         {"engine", r.engine},
         {"attained", r.attained}};
  return render(j, opts);
}

std::string to_json_string(const ConstructionValues& r,
                           const JsonOptions& opts) {
  json j{{"instance", jinstance(r.instance)},
         {"r_branch", json{{"sum", jbig(r.r_sum)},
                           {"valid", r.r_valid},
                           {"families", jfamilies(r.r_tuple)}}},
         {"star_branch", json{{"sum", jbig(r.star_sum)},
                              {"valid", r.star_valid},
                              {"families", jfamilies(r.star_tuple)}}},
         {"validated", r.validated()}};
  return render(j, opts);
}

}  // namespace crossint
