// Command-line front door: every run embeds its configuration in the
// output, exact values cross the interface as fraction strings, and exit
// codes follow a fixed contract (0 ok, 1 usage/validation, 2 falsification,
// 3 budget exceeded).

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crossint/arith.hpp"
#include "crossint/errors.hpp"
#include "crossint/exploration.hpp"
#include "crossint/family.hpp"
#include "crossint/kset.hpp"
#include "crossint/report.hpp"
#include "crossint/verification.hpp"

namespace {

using crossint::BigInt;
using crossint::Rational;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFalsified = 2;
constexpr int kExitBudget = 3;

struct GlobalOpts {
  std::string format = "text";
  std::string output_path;
  std::string witness_out;
  std::uint64_t budget = 0;  // 0: resolve from env or core default
  int workers = 1;
  bool no_timestamp = false;
  std::string sweep;  // "name=lo..hi"

  std::uint64_t resolved_budget() const {
    if (budget != 0) return budget;
    if (const char* env = std::getenv("CROSSINT_BUDGET")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return v;
      throw crossint::ValidationError(
          "CROSSINT_BUDGET must be a positive integer");
    }
    return std::uint64_t{1} << 26;
  }
};

// One executed instance: structured result plus flat key->value pairs for
// the CSV rendering and a short text block.
struct RunResult {
  json result;
  std::vector<std::pair<std::string, std::string>> row;
  std::string text;
  int exit_code = kExitOk;
  std::string witness_text;
};

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

crossint::JsonOptions json_opts(const GlobalOpts& g) {
  crossint::JsonOptions o;
  o.include_timing = !g.no_timestamp;
  return o;
}

json parse_core(const std::string& s) { return json::parse(s); }

Rational parse_c(const std::string& s) { return crossint::parse_fraction(s); }

std::vector<int> parse_sizes(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw crossint::ValidationError("bad sizes list: '" + s + "'");
    }
  }
  if (out.empty())
    throw crossint::ValidationError("sizes list must be non-empty");
  return out;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const std::uint64_t v = std::stoull(s);
      return {v, v};
    }
    return {std::stoull(s.substr(0, dots)), std::stoull(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw crossint::ValidationError("bad range: '" + s + "' (want lo..hi)");
  }
}

std::string families_text(const std::vector<crossint::Family>& fs) {
  return crossint::families_to_string(fs);
}

// ---------------------------------------------------------------------
// Parameter registry: integer parameters visible to --sweep by name.

struct ParamRegistry {
  std::map<std::string, int*> ints;
  void reg(const std::string& name, int* p) { ints[name] = p; }
};

// ---------------------------------------------------------------------
// Leaf commands. Each fills params from CLI11, then run() executes one
// instance with the current parameter values.

struct BoundCmd {
  std::string theorem;
  int n = 0, k = 0, l = 0, r = 1, t = 2, q = 1;
  std::string c = "1";
  std::string sizes;

  void wire(CLI::App* app, ParamRegistry& reg) {
    app->add_option("--theorem", theorem, "which bound to evaluate")
        ->required()
        ->check(CLI::IsMember({"ekr", "hilton", "hm", "main", "corollary",
                               "ft", "hm-stability", "fk", "wz", "problem1",
                               "problem2", "problem3"}));
    app->add_option("-n", n, "ground set size")->required();
    app->add_option("-k", k, "first set size");
    app->add_option("-l", l, "second set size");
    app->add_option("-r", r, "window parameter");
    app->add_option("-c", c, "weight (fraction p/q)");
    app->add_option("-t", t, "family count");
    app->add_option("-q", q, "intersection threshold");
    app->add_option("--sizes", sizes, "comma-separated family sizes");
    reg.reg("n", &n);
    reg.reg("k", &k);
    reg.reg("l", &l);
    reg.reg("r", &r);
    reg.reg("t", &t);
    reg.reg("q", &q);
  }

  crossint::ProblemInstance instance(int id) const {
    crossint::ProblemInstance inst;
    inst.problem_id = id;
    inst.n = n;
    inst.sizes = parse_sizes(sizes);
    inst.t = static_cast<int>(inst.sizes.size());
    inst.q = (id == 1) ? 1 : q;
    return inst;
  }

  RunResult run(const GlobalOpts& g) const {
    RunResult rr;
    crossint::BoundReport rep;
    std::optional<BigInt> single;
    if (theorem == "ekr") {
      single = crossint::ekr_bound(n, k);
    } else if (theorem == "hilton") {
      rep = crossint::hilton_bound(n, k, t);
    } else if (theorem == "hm") {
      single = crossint::hm_bound(n, k);
    } else if (theorem == "main") {
      rep = crossint::main_bound({n, k, l, r, parse_c(c)});
    } else if (theorem == "corollary") {
      rep = crossint::corollary_bound(n, k, t);
    } else if (theorem == "ft") {
      single = crossint::ft_bound(n, k, l);
    } else if (theorem == "hm-stability") {
      single = crossint::hm_stability_bound(n, k);
    } else if (theorem == "fk") {
      single = crossint::fk_bound(n, k, q);
    } else if (theorem == "wz") {
      single = crossint::wz_bound(n, k, l, q);
    } else {
      const int id = theorem.back() - '0';
      rep = crossint::problem_bound(instance(id));
    }

    if (single) {
      rr.result = json{{"theorem", theorem}, {"value", single->str()}};
      rr.row = {{"theorem", theorem}, {"value", single->str()}};
      rr.text = theorem + " = " + single->str();
    } else {
      rr.result = parse_core(crossint::to_json_string(rep, json_opts(g)));
      rr.result["theorem"] = theorem;
      rr.row = {{"theorem", theorem},
                {"max", crossint::fraction_str(rep.max_value)},
                {"argmax", rep.argmax_labels.front()},
                {"tie", rep.tie ? "true" : "false"}};
      std::ostringstream os;
      os << theorem << " bound: max " << crossint::fraction_str(rep.max_value);
      for (const auto& [label, value] : rep.branch_values)
        os << "\n  " << label << " = " << crossint::fraction_str(value);
      if (!rep.predicted_cases.empty()) {
        os << "\n  predicted cases:";
        for (const auto& pc : rep.predicted_cases) os << " (" << pc << ")";
      }
      rr.text = os.str();
    }
    return rr;
  }
};

crossint::ScanOptions scan_options(const GlobalOpts& g,
                                   const std::string& window,
                                   bool require_nonempty) {
  crossint::ScanOptions so;
  so.max_candidates = g.resolved_budget();
  so.workers = g.workers;
  so.require_nonempty_partner = require_nonempty;
  if (!window.empty()) so.window = parse_range(window);
  return so;
}

struct VerifyMainCmd {
  int n = 0, k = 0, l = 0, r = 1;
  std::string c = "1";
  std::string mode = "both";
  std::string window;
  bool require_nonempty = false;

  void wire(CLI::App* app, ParamRegistry& reg) {
    app->add_option("-n", n)->required();
    app->add_option("-k", k)->required();
    app->add_option("-l", l)->required();
    app->add_option("-r", r)->required();
    app->add_option("-c", c, "weight (fraction p/q)");
    app->add_option("--mode", mode)
        ->check(CLI::IsMember({"brute", "scan", "both"}));
    app->add_option("--window", window, "|B| window override lo..hi");
    app->add_flag("--require-nonempty", require_nonempty,
                  "drop candidates with empty maximal partner");
    reg.reg("n", &n);
    reg.reg("k", &k);
    reg.reg("l", &l);
    reg.reg("r", &r);
  }

  RunResult run(const GlobalOpts& g) const {
    const crossint::TheoremParams p{n, k, l, r, parse_c(c)};
    const crossint::VerifyMode vm = mode == "brute" ? crossint::VerifyMode::brute
                                    : mode == "scan"
                                        ? crossint::VerifyMode::scan
                                        : crossint::VerifyMode::both;
    const crossint::MainVerification v = crossint::verify_main_theorem(
        p, vm, scan_options(g, window, require_nonempty));

    RunResult rr;
    rr.result = parse_core(crossint::to_json_string(v, json_opts(g)));
    const auto& primary = v.primary();
    rr.row = {{"n", std::to_string(n)},
              {"k", std::to_string(k)},
              {"l", std::to_string(l)},
              {"r", std::to_string(r)},
              {"c", c},
              {"observed", crossint::fraction_str(primary.observed_max)},
              {"bound", crossint::fraction_str(v.bound.max_value)},
              {"matched", v.matched ? "true" : "false"},
              {"engines_agree", v.engines_agree ? "true" : "false"},
              {"witness_total", std::to_string(primary.witness_total)},
              {"unclassified", std::to_string(v.unclassified)}};
    std::ostringstream os;
    os << "bound " << crossint::fraction_str(v.bound.max_value)
       << ", observed " << crossint::fraction_str(primary.observed_max)
       << (v.matched ? " (matched)" : " (MISMATCH)");
    if (v.brute && v.lscan)
      os << "\nengines agree: " << (v.engines_agree ? "yes" : "NO");
    os << "\nargmax witnesses: " << primary.witness_total << " (stored "
       << primary.witnesses.size() << ")";
    os << "\ncase counts:";
    for (const auto& [label, count] : v.case_counts)
      os << " (" << label << ") x" << count;
    if (v.unclassified) os << " none x" << v.unclassified;
    rr.text = os.str();
    if (!primary.witnesses.empty())
      rr.witness_text = families_text(
          {primary.witnesses[0].a, primary.witnesses[0].b});
    rr.exit_code = v.ok() ? kExitOk : kExitFalsified;
    return rr;
  }
};

struct VerifyKkCmd {
  int n = 0, k = 0, l = 0;
  int trials = 1000;
  std::uint64_t seed = 0;

  void wire(CLI::App* app, ParamRegistry& reg) {
    app->add_option("-n", n)->required();
    app->add_option("-k", k)->required();
    app->add_option("-l", l)->required();
    app->add_option("--trials", trials);
    app->add_option("--seed", seed)->required();
    reg.reg("n", &n);
    reg.reg("k", &k);
    reg.reg("l", &l);
    reg.reg("trials", &trials);
  }

  RunResult run(const GlobalOpts& g) const {
    const auto res = crossint::verify_kk_preservation(
        n, k, l, static_cast<std::uint64_t>(trials), seed);
    RunResult rr;
    rr.result = parse_core(crossint::to_json_string(res, json_opts(g)));
    rr.row = {{"n", std::to_string(n)},
              {"k", std::to_string(k)},
              {"l", std::to_string(l)},
              {"trials", std::to_string(trials)},
              {"seed", std::to_string(seed)},
              {"pass", res.pass ? "true" : "false"}};
    rr.text = std::string("compression preservation: ") +
              (res.pass ? "pass" : "FAIL") + " (" +
              std::to_string(trials) + " trials, " +
              std::to_string(res.rejected_samples) + " rejected samples)";
    if (res.counterexample)
      rr.witness_text = families_text(
          {res.counterexample->first, res.counterexample->second});
    rr.exit_code = res.pass ? kExitOk : kExitFalsified;
    return rr;
  }
};

struct VerifyPropCmd {
  int n = 0, k = 0, l = 0, r = 1;

  void wire(CLI::App* app, ParamRegistry& reg) {
    app->add_option("-n", n)->required();
    app->add_option("-k", k)->required();
    app->add_option("-l", l)->required();
    app->add_option("-r", r)->required();
    reg.reg("n", &n);
    reg.reg("k", &k);
    reg.reg("l", &l);
    reg.reg("r", &r);
  }

  RunResult run(const GlobalOpts& g) const {
    crossint::ScanOptions so;
    so.max_candidates = g.resolved_budget();
    const auto res = crossint::verify_proposition_fm(n, k, l, r, so);
    RunResult rr;
    rr.result = parse_core(crossint::to_json_string(res, json_opts(g)));
    rr.row = {{"n", std::to_string(n)},
              {"k", std::to_string(k)},
              {"l", std::to_string(l)},
              {"r", std::to_string(r)},
              {"min_shadow", res.min_shadow.str()},
              {"minimizers", std::to_string(res.minimizer_count)},
              {"pass", res.pass ? "true" : "false"}};
    std::ostringstream os;
    os << "min shadow " << res.min_shadow.str() << " (expected "
       << res.expected_min.str() << "), " << res.minimizer_count
       << " minimizers (expected " << res.expected_minimizers << "), "
       << (res.minimizers_all_principal ? "all principal"
                                        : "NON-PRINCIPAL minimizer")
       << " -> " << (res.pass ? "pass" : "FAIL");
    rr.text = os.str();
    rr.exit_code = res.pass ? kExitOk : kExitFalsified;
    return rr;
  }
};

struct VerifyBipartiteCmd {
  int n = 0, k = 0, l = 0, s = 2;
  std::string c = "1";

  void wire(CLI::App* app, ParamRegistry& reg) {
    app->add_option("-n", n)->required();
    app->add_option("-k", k)->required();
    app->add_option("-l", l)->required();
    app->add_option("-s", s)->required();
    app->add_option("-c", c, "weight (fraction p/q)");
    reg.reg("n", &n);
    reg.reg("k", &k);
    reg.reg("l", &l);
    reg.reg("s", &s);
  }

  RunResult run(const GlobalOpts& g) const {
    crossint::ScanOptions so;
    so.max_candidates = g.resolved_budget();
    const auto res =
        crossint::verify_bipartite_lemma(n, k, l, s, parse_c(c), so);
    RunResult rr;
    rr.result = parse_core(crossint::to_json_string(res, json_opts(g)));
    rr.row = {{"n", std::to_string(n)},    {"k", std::to_string(k)},
              {"l", std::to_string(l)},    {"s", std::to_string(s)},
              {"c", c},
              {"x_size", std::to_string(res.x_size)},
              {"y_size", std::to_string(res.y_size)},
              {"pass", res.pass ? "true" : "false"}};
    std::ostringstream os;
    os << "|X|=" << res.x_size << " |Y|=" << res.y_size
       << (res.biregular ? ", biregular" : ", NOT biregular")
       << (res.connected ? ", connected" : ", disconnected") << ", bound "
       << (res.bound_holds ? "holds" : "VIOLATED") << ", equality "
       << (res.equality_only_full_sides ? "only at full sides"
                                        : "elsewhere")
       << " -> " << (res.pass ? "pass" : "FAIL");
    rr.text = os.str();
    rr.exit_code = res.pass ? kExitOk : kExitFalsified;
    return rr;
  }
};

struct VerifyCorollaryCmd {
  int n = 0, k = 0, t = 2;
  std::string mode = "construction";

  void wire(CLI::App* app, ParamRegistry& reg) {
    app->add_option("-n", n)->required();
    app->add_option("-k", k)->required();
    app->add_option("-t", t)->required();
    app->add_option("--mode", mode)
        ->check(CLI::IsMember({"exhaustive", "construction"}));
    reg.reg("n", &n);
    reg.reg("k", &k);
    reg.reg("t", &t);
  }

  RunResult run(const GlobalOpts& g) const {
    const auto res = crossint::verify_corollary(
        n, k, t,
        mode == "exhaustive" ? crossint::CorollaryMode::exhaustive
                             : crossint::CorollaryMode::construction);
    RunResult rr;
    rr.result = parse_core(crossint::to_json_string(res, json_opts(g)));
    rr.row = {{"n", std::to_string(n)},
              {"k", std::to_string(k)},
              {"t", std::to_string(t)},
              {"mode", mode},
              {"observed", res.observed.str()},
              {"bound", crossint::fraction_str(res.bound.max_value)},
              {"pass", res.pass ? "true" : "false"}};
    rr.text = mode + " observed " + res.observed.str() + ", bound " +
              crossint::fraction_str(res.bound.max_value) + " -> " +
              (res.pass ? "pass" : "FAIL");
    rr.exit_code = res.pass ? kExitOk : kExitFalsified;
    return rr;
  }
};

struct VerifyInequalitiesCmd {
  int max_n = 40;

  void wire(CLI::App* app, ParamRegistry& reg) {
    app->add_option("--max-n", max_n);
    reg.reg("max-n", &max_n);
  }

  RunResult run(const GlobalOpts& g) const {
    const auto res = crossint::scan_inequalities(max_n);
    RunResult rr;
    rr.result = parse_core(crossint::to_json_string(res, json_opts(g)));
    rr.row = {{"max_n", std::to_string(max_n)},
              {"cells", std::to_string(res.cells_checked)},
              {"violations", std::to_string(res.violations.size())},
              {"pass", res.pass ? "true" : "false"}};
    rr.text = std::to_string(res.cells_checked) + " cells, " +
              std::to_string(res.violations.size()) + " violations, " +
              "equality locus " +
              (res.eq13_locus_exact ? "exact" : "WRONG") + " -> " +
              (res.pass ? "pass" : "FAIL");
    rr.exit_code = res.pass ? kExitOk : kExitFalsified;
    return rr;
  }
};

struct VerifyClassifyCmd {
  int n = 0, k = 0, l = 0, r = 1;
  std::string c = "1";
  std::string input;

  void wire(CLI::App* app, ParamRegistry& reg) {
    app->add_option("-n", n)->required();
    app->add_option("-k", k)->required();
    app->add_option("-l", l)->required();
    app->add_option("-r", r)->required();
    app->add_option("-c", c, "weight (fraction p/q)");
    app->add_option("--in", input, "family text file with the pair (a, b)")
        ->required();
    reg.reg("n", &n);
    reg.reg("k", &k);
    reg.reg("l", &l);
    reg.reg("r", &r);
  }

  RunResult run(const GlobalOpts& g) const {
    std::ifstream in(input);
    if (!in)
      throw crossint::ValidationError("cannot open input file: " + input);
    const std::vector<crossint::Family> fams = crossint::read_families(in);
    if (fams.size() != 2)
      throw crossint::ValidationError(
          "classify expects exactly two families (a then b), got " +
          std::to_string(fams.size()));
    const crossint::TheoremParams p{n, k, l, r, parse_c(c)};
    const auto cls = crossint::classify_extremal(fams[0], fams[1], p);
    RunResult rr;
    rr.result = parse_core(crossint::to_json_string(cls, json_opts(g)));
    rr.row = {{"case", cls.case_label},
              {"witness_r_set",
               cls.witness_r_set ? cls.witness_r_set->str() : ""}};
    rr.text = "case (" + cls.case_label + ")" +
              (cls.witness_r_set ? " with core " + cls.witness_r_set->str()
                                 : "");
    return rr;
  }
};

struct ExploreCmd {
  int problem_id = 1;
  int n = 0, t = 2, q = 1;
  std::string sizes;
  int restarts = -1;  // <0: not set
  std::uint64_t seed = 0;
  std::string engine = "auto";
  bool constructions = false;

  void wire(CLI::App* app, ParamRegistry& reg, int id) {
    problem_id = id;
    app->add_option("-n", n)->required();
    app->add_option("-t", t, "family count");
    app->add_option("--sizes", sizes, "comma-separated family sizes")
        ->required();
    if (id != 1) app->add_option("-q", q)->required();
    app->add_option("--restarts", restarts,
                    "alternating-maximization restarts");
    app->add_option("--seed", seed, "RNG seed (alternating)");
    app->add_option("--engine", engine)
        ->check(CLI::IsMember({"auto", "exhaustive", "alternating"}));
    app->add_flag("--constructions", constructions,
                  "report both extremal constructions instead of searching");
    reg.reg("n", &n);
    reg.reg("t", &t);
    reg.reg("q", &q);
    reg.reg("restarts", &restarts);
  }

  RunResult run(const GlobalOpts& g) const {
    crossint::ProblemInstance inst;
    inst.problem_id = problem_id;
    inst.n = n;
    inst.sizes = parse_sizes(sizes);
    inst.t = static_cast<int>(inst.sizes.size());
    if (t != 2 && t != static_cast<int>(inst.sizes.size()))
      throw crossint::ValidationError("-t disagrees with --sizes length");
    inst.q = (problem_id == 1) ? 1 : q;

    RunResult rr;
    if (constructions) {
      const auto cv = crossint::construction_values(inst);
      rr.result = parse_core(crossint::to_json_string(cv, json_opts(g)));
      rr.row = {{"r_branch", cv.r_sum.str()},
                {"star_branch", cv.star_sum.str()},
                {"validated", cv.validated() ? "true" : "false"}};
      rr.text = "r-branch " + cv.r_sum.str() + " (valid: " +
                (cv.r_valid ? "yes" : "NO") + "), 1-branch " +
                cv.star_sum.str() + " (valid: " +
                (cv.star_valid ? "yes" : "NO") + ")";
      rr.exit_code = cv.validated() ? kExitOk : kExitFalsified;
      return rr;
    }

    crossint::SearchOptions so;
    so.max_candidates = g.resolved_budget();
    const bool alternating =
        engine == "alternating" || (engine == "auto" && restarts >= 0);
    const crossint::SearchOutcome out =
        alternating ? crossint::alternating_maximization(
                          inst, restarts < 0 ? 64 : restarts, seed, so)
                    : crossint::exhaustive_search(inst, so);

    rr.result = parse_core(crossint::to_json_string(out, json_opts(g)));
    rr.row = {{"problem", std::to_string(problem_id)},
              {"n", std::to_string(n)},
              {"sizes", sizes},
              {"q", std::to_string(inst.q)},
              {"engine", out.engine},
              {"best", out.best_found.str()},
              {"conjectured",
               crossint::fraction_str(out.conjectured.max_value)},
              {"status", crossint::to_string(out.status)}};
    std::ostringstream os;
    os << out.engine << " best " << out.best_found.str() << ", conjectured "
       << crossint::fraction_str(out.conjectured.max_value) << " -> "
       << crossint::to_string(out.status);
    rr.text = os.str();
    rr.witness_text = families_text(out.witness);
    rr.exit_code = out.status == crossint::SearchStatus::consistent
                       ? kExitOk
                       : out.status == crossint::SearchStatus::counterexample
                             ? kExitFalsified
                             : kExitBudget;
    return rr;
  }
};

struct LexCmd {
  bool rank_mode = false;
  int n = 0, k = 0;
  std::string set;
  std::uint64_t rank = 0;

  void wire_rank(CLI::App* app, ParamRegistry& reg) {
    rank_mode = true;
    app->add_option("-n", n)->required();
    app->add_option("-k", k)->required();
    app->add_option("--set", set, "comma-separated elements")->required();
    reg.reg("n", &n);
    reg.reg("k", &k);
  }
  void wire_unrank(CLI::App* app, ParamRegistry& reg) {
    rank_mode = false;
    app->add_option("-n", n)->required();
    app->add_option("-k", k)->required();
    app->add_option("--rank", rank)->required();
    reg.reg("n", &n);
    reg.reg("k", &k);
  }

  RunResult run(const GlobalOpts&) const {
    RunResult rr;
    if (rank_mode) {
      const crossint::KSet s(n, parse_sizes(set));
      const std::uint64_t rk = crossint::lex_rank(s);
      rr.result = json{{"n", n}, {"k", k}, {"set", s.str()}, {"rank", rk}};
      rr.row = {{"set", s.str()}, {"rank", std::to_string(rk)}};
      rr.text = s.str() + " has rank " + std::to_string(rk);
    } else {
      const crossint::KSet s = crossint::lex_unrank(n, k, rank);
      rr.result =
          json{{"n", n}, {"k", k}, {"rank", rank}, {"set", s.str()}};
      rr.row = {{"rank", std::to_string(rank)}, {"set", s.str()}};
      rr.text = "rank " + std::to_string(rank) + " is " + s.str();
    }
    return rr;
  }
};

struct ShadowCmd {
  int j = 0;
  std::string input;

  void wire(CLI::App* app, ParamRegistry& reg) {
    app->add_option("-j", j, "shadow set size")->required();
    app->add_option("--in", input, "family text file")->required();
    reg.reg("j", &j);
  }

  RunResult run(const GlobalOpts&) const {
    std::ifstream in(input);
    if (!in)
      throw crossint::ValidationError("cannot open input file: " + input);
    const auto fams = crossint::read_families(in);
    if (fams.size() != 1)
      throw crossint::ValidationError("shadow expects exactly one family");
    const crossint::Family sh = crossint::disjointness_shadow(fams[0], j);
    RunResult rr;
    const std::string text = families_text({sh});
    rr.result = json{{"j", j},
                     {"input_size", fams[0].size()},
                     {"shadow_size", sh.size()},
                     {"shadow", text}};
    rr.row = {{"input_size", std::to_string(fams[0].size())},
              {"shadow_size", std::to_string(sh.size())}};
    rr.text = "|D_" + std::to_string(j) + "| = " + std::to_string(sh.size());
    rr.witness_text = text;
    return rr;
  }
};

struct FamilyCmd {
  std::string kind;  // p, r, linitial, compress, partner
  int n = 0, k = 0, l = 0, i = 1, q = 1;
  std::uint64_t m = 0;
  std::string input;

  void wire(CLI::App* app, ParamRegistry& reg, std::string which) {
    kind = std::move(which);
    if (kind == "p") {
      app->add_option("-n", n)->required();
      app->add_option("-l", l)->required();
      app->add_option("-i", i)->required();
    } else if (kind == "r") {
      app->add_option("-n", n)->required();
      app->add_option("-k", k)->required();
      app->add_option("-i", i)->required();
    } else if (kind == "linitial") {
      app->add_option("-n", n)->required();
      app->add_option("-k", k)->required();
      app->add_option("-m", m, "family size")->required();
    } else if (kind == "compress") {
      app->add_option("--in", input, "family text file")->required();
    } else {  // partner
      app->add_option("--in", input, "family text file")->required();
      app->add_option("-k", k, "partner set size")->required();
      app->add_option("-q", q);
    }
    reg.reg("n", &n);
    reg.reg("k", &k);
    reg.reg("l", &l);
    reg.reg("i", &i);
    reg.reg("q", &q);
  }

  RunResult run(const GlobalOpts&) const {
    crossint::Family out(1, 1);
    if (kind == "p") {
      out = crossint::p_family(n, l, i);
    } else if (kind == "r") {
      out = crossint::r_family(n, k, i);
    } else if (kind == "linitial") {
      out = crossint::l_initial(n, k, m);
    } else {
      std::ifstream in(input);
      if (!in)
        throw crossint::ValidationError("cannot open input file: " + input);
      const auto fams = crossint::read_families(in);
      if (kind == "compress") {
        if (fams.size() != 1)
          throw crossint::ValidationError(
              "compress expects exactly one family");
        out = crossint::compress(fams[0]);
      } else {
        if (fams.empty())
          throw crossint::ValidationError(
              "partner expects at least one family");
        out = crossint::maximal_q_partner(fams, k, q);
      }
    }
    RunResult rr;
    const std::string text = families_text({out});
    rr.result = json{{"kind", kind}, {"size", out.size()}, {"family", text}};
    rr.row = {{"kind", kind}, {"size", std::to_string(out.size())}};
    rr.text = text;
    rr.witness_text = text;
    return rr;
  }
};

// ---------------------------------------------------------------------
// Run configuration echo, sweep driving, and output rendering.

json run_config_json(const std::string& command, const ParamRegistry& reg,
                     const GlobalOpts& g,
                     const std::map<std::string, std::string>& extra) {
  json params = json::object();
  for (const auto& [name, ptr] : reg.ints) params[name] = *ptr;
  for (const auto& [key, value] : extra) params[key] = value;
  json j{{"command", command},
         {"parameters", params},
         {"budget", g.resolved_budget()},
         {"format", g.format},
         {"workers", g.workers}};
  if (!g.sweep.empty()) j["sweep"] = g.sweep;
  return j;
}

void write_out(const GlobalOpts& g, const std::string& payload) {
  if (g.output_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(g.output_path, std::ios::binary);
  if (!out)
    throw crossint::ValidationError("cannot open output file: " +
                                    g.output_path);
  out << payload;
}

std::string csv_render(
    const std::vector<std::vector<std::pair<std::string, std::string>>>&
        rows) {
  if (rows.empty()) return "";
  std::ostringstream os;
  for (std::size_t c = 0; c < rows[0].size(); ++c)
    os << (c ? "," : "") << rows[0][c].first;
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      os << (c ? "," : "") << row[c].second;
    os << "\n";
  }
  return os.str();
}

struct SweepSpec {
  std::string param;
  std::uint64_t lo = 0, hi = 0;
};

std::optional<SweepSpec> parse_sweep(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const auto eq = s.find('=');
  if (eq == std::string::npos)
    throw crossint::ValidationError("bad --sweep (want name=lo..hi)");
  SweepSpec spec;
  spec.param = s.substr(0, eq);
  const auto [lo, hi] = parse_range(s.substr(eq + 1));
  spec.lo = lo;
  spec.hi = hi;
  if (spec.hi < spec.lo)
    throw crossint::ValidationError("bad --sweep range");
  return spec;
}

template <typename Cmd>
int drive(const std::string& command, const Cmd& cmd, ParamRegistry& reg,
          const GlobalOpts& g,
          const std::map<std::string, std::string>& extra_params) {
  const auto sweep = parse_sweep(g.sweep);
  std::vector<std::pair<std::string, int>> instances;
  if (sweep) {
    const auto it = reg.ints.find(sweep->param);
    if (it == reg.ints.end())
      throw crossint::ValidationError("--sweep parameter '" + sweep->param +
                                      "' is not an integer parameter of "
                                      "this command");
    for (std::uint64_t v = sweep->lo; v <= sweep->hi; ++v)
      instances.emplace_back(sweep->param, static_cast<int>(v));
  } else {
    instances.emplace_back("", 0);
  }

  std::vector<RunResult> results;
  std::vector<json> errors;
  int exit_code = kExitOk;
  for (const auto& [param, value] : instances) {
    if (!param.empty()) *reg.ints[param] = value;
    try {
      results.push_back(cmd.run(g));
      exit_code = std::max(exit_code, results.back().exit_code);
    } catch (const crossint::BudgetExceeded& e) {
      if (!sweep) throw;
      errors.push_back(json{{"instance", param + "=" + std::to_string(value)},
                            {"error", e.what()},
                            {"type", "budget"}});
      exit_code = std::max(exit_code, kExitBudget);
    }
  }

  const json config = run_config_json(command, reg, g, extra_params);
  if (g.format == "json") {
    json doc{{"run", config}};
    if (!g.no_timestamp) doc["timestamp"] = iso_timestamp();
    if (sweep) {
      json arr = json::array();
      for (const auto& r : results) arr.push_back(r.result);
      doc["results"] = arr;
      if (!errors.empty()) doc["errors"] = errors;
    } else {
      doc["result"] = results[0].result;
    }
    write_out(g, doc.dump(2) + "\n");
  } else if (g.format == "csv") {
    std::vector<std::vector<std::pair<std::string, std::string>>> rows;
    rows.reserve(results.size());
    for (const auto& r : results) rows.push_back(r.row);
    write_out(g, csv_render(rows));
  } else {
    std::ostringstream os;
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (sweep) os << "# " << sweep->param << "=" << (sweep->lo + i) << "\n";
      os << results[i].text << "\n";
    }
    for (const auto& e : errors)
      os << "# error: " << e["error"].get<std::string>() << "\n";
    write_out(g, os.str());
  }

  if (!g.witness_out.empty()) {
    std::string text;
    for (const auto& r : results)
      if (!r.witness_text.empty()) {
        text = r.witness_text;
        break;
      }
    if (!text.empty()) {
      std::ofstream out(g.witness_out, std::ios::binary);
      if (!out)
        throw crossint::ValidationError("cannot open witness file: " +
                                        g.witness_out);
      out << text;
    }
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification and counterexample search for "
               "cross-intersecting family bounds"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--format", g.format)
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--output", g.output_path, "write report to file");
  app.add_option("--budget", g.budget,
                 "enumeration budget (default: CROSSINT_BUDGET or 2^26)");
  app.add_option("--workers", g.workers, "worker threads for scans");
  app.add_flag("--no-timestamp", g.no_timestamp,
               "suppress timestamp and wall-clock fields");
  app.add_option("--witness-out", g.witness_out,
                 "write the first witness (family text format) to file");
  app.add_option("--sweep", g.sweep,
                 "iterate an integer parameter, e.g. n=4..8");

  BoundCmd bound_cmd;
  ParamRegistry bound_reg;
  CLI::App* bound_app = app.add_subcommand("bound", "evaluate a bound");
  bound_cmd.wire(bound_app, bound_reg);

  CLI::App* verify_app =
      app.add_subcommand("verify", "exhaustive verification");
  verify_app->require_subcommand(1);
  VerifyMainCmd vmain;
  ParamRegistry vmain_reg;
  vmain.wire(verify_app->add_subcommand(
                 "main", "two-engine check of the central bound"),
             vmain_reg);
  VerifyKkCmd vkk;
  ParamRegistry vkk_reg;
  vkk.wire(verify_app->add_subcommand(
               "kk", "compression preserves cross-intersection"),
           vkk_reg);
  VerifyPropCmd vprop;
  ParamRegistry vprop_reg;
  vprop.wire(verify_app->add_subcommand(
                 "prop-fm", "shadow minimum and its unique minimizers"),
             vprop_reg);
  VerifyBipartiteCmd vbip;
  ParamRegistry vbip_reg;
  vbip.wire(verify_app->add_subcommand(
                "bipartite", "link-graph independent-set bound"),
            vbip_reg);
  VerifyCorollaryCmd vcor;
  ParamRegistry vcor_reg;
  vcor.wire(verify_app->add_subcommand(
                "corollary", "t-family sum bound"),
            vcor_reg);
  VerifyInequalitiesCmd vineq;
  ParamRegistry vineq_reg;
  vineq.wire(verify_app->add_subcommand(
                 "inequalities", "exact binomial inequality scan"),
             vineq_reg);
  VerifyClassifyCmd vcls;
  ParamRegistry vcls_reg;
  vcls.wire(verify_app->add_subcommand(
                "classify", "classify an extremal pair from a file"),
            vcls_reg);

  CLI::App* explore_app =
      app.add_subcommand("explore", "open-problem counterexample search");
  explore_app->require_subcommand(1);
  ExploreCmd ex1, ex2, ex3;
  ParamRegistry ex1_reg, ex2_reg, ex3_reg;
  ex1.wire(explore_app->add_subcommand("problem1",
                                       "cross-intersecting sum, q = 1"),
           ex1_reg, 1);
  ex2.wire(explore_app->add_subcommand("problem2",
                                       "equal-size cross-q sum"),
           ex2_reg, 2);
  ex3.wire(explore_app->add_subcommand("problem3",
                                       "general cross-q sum"),
           ex3_reg, 3);

  CLI::App* lex_app = app.add_subcommand("lex", "lexicographic rank/unrank");
  lex_app->require_subcommand(1);
  LexCmd lex_rank_cmd, lex_unrank_cmd;
  ParamRegistry lexr_reg, lexu_reg;
  lex_rank_cmd.wire_rank(lex_app->add_subcommand("rank", "set -> rank"),
                         lexr_reg);
  lex_unrank_cmd.wire_unrank(
      lex_app->add_subcommand("unrank", "rank -> set"), lexu_reg);

  ShadowCmd shadow_cmd;
  ParamRegistry shadow_reg;
  CLI::App* shadow_app =
      app.add_subcommand("shadow", "disjointness shadow of a family");
  shadow_cmd.wire(shadow_app, shadow_reg);

  CLI::App* family_app =
      app.add_subcommand("family", "family constructions and utilities");
  family_app->require_subcommand(1);
  FamilyCmd fam_p, fam_r, fam_li, fam_co, fam_pa;
  ParamRegistry famp_reg, famr_reg, famli_reg, famco_reg, fampa_reg;
  fam_p.wire(family_app->add_subcommand("p", "principal family over [i]"),
             famp_reg, "p");
  fam_r.wire(family_app->add_subcommand("r", "everything meeting [i]"),
             famr_reg, "r");
  fam_li.wire(
      family_app->add_subcommand("linitial", "lex-initial family of size m"),
      famli_reg, "linitial");
  fam_co.wire(family_app->add_subcommand("compress", "L-initial compression"),
              famco_reg, "compress");
  fam_pa.wire(
      family_app->add_subcommand("partner", "maximal q-partner of families"),
      fampa_reg, "partner");

  // Let global flags appear after the subcommand name as well.
  const std::function<void(CLI::App*)> allow_globals = [&](CLI::App* a) {
    for (CLI::App* sub : a->get_subcommands(
             [](const CLI::App*) { return true; })) {
      sub->fallthrough();
      allow_globals(sub);
    }
  };
  allow_globals(&app);

  // A swept parameter may be omitted on the command line; seed it with the
  // low end of the range so required() is satisfied, then drive() overwrites
  // it per instance.
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string spec;
    if (args[i] == "--sweep" && i + 1 < args.size())
      spec = args[i + 1];
    else if (args[i].rfind("--sweep=", 0) == 0)
      spec = args[i].substr(8);
    else
      continue;
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) break;
    const std::string name = spec.substr(0, eq);
    const std::string flag = name.size() == 1 ? "-" + name : "--" + name;
    bool present = false;
    for (const auto& tok : args)
      if (tok == flag || tok.rfind(flag + "=", 0) == 0 ||
          (name.size() == 1 && tok.size() > 2 && tok[0] == '-' &&
           tok[1] == name[0] && tok[2] != '-'))
        present = true;
    if (!present) {
      args.push_back(flag);
      args.push_back(spec.substr(eq + 1,
                                 spec.find("..", eq) - eq - 1));
    }
    break;
  }

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (bound_app->parsed())
      return drive("bound", bound_cmd, bound_reg, g,
                   {{"theorem", bound_cmd.theorem},
                    {"c", bound_cmd.c},
                    {"sizes", bound_cmd.sizes}});
    if (verify_app->parsed()) {
      if (verify_app->get_subcommand("main")->parsed())
        return drive("verify main", vmain, vmain_reg, g,
                     {{"c", vmain.c}, {"mode", vmain.mode}});
      if (verify_app->get_subcommand("kk")->parsed())
        return drive("verify kk", vkk, vkk_reg, g,
                     {{"seed", std::to_string(vkk.seed)}});
      if (verify_app->get_subcommand("prop-fm")->parsed())
        return drive("verify prop-fm", vprop, vprop_reg, g, {});
      if (verify_app->get_subcommand("bipartite")->parsed())
        return drive("verify bipartite", vbip, vbip_reg, g,
                     {{"c", vbip.c}});
      if (verify_app->get_subcommand("corollary")->parsed())
        return drive("verify corollary", vcor, vcor_reg, g,
                     {{"mode", vcor.mode}});
      if (verify_app->get_subcommand("inequalities")->parsed())
        return drive("verify inequalities", vineq, vineq_reg, g, {});
      return drive("verify classify", vcls, vcls_reg, g,
                   {{"c", vcls.c}, {"in", vcls.input}});
    }
    if (explore_app->parsed()) {
      const auto run_explore = [&](const ExploreCmd& ex, ParamRegistry& reg,
                                   const std::string& name) {
        return drive(name, ex, reg, g,
                     {{"sizes", ex.sizes},
                      {"seed", std::to_string(ex.seed)},
                      {"engine", ex.engine}});
      };
      if (explore_app->get_subcommand("problem1")->parsed())
        return run_explore(ex1, ex1_reg, "explore problem1");
      if (explore_app->get_subcommand("problem2")->parsed())
        return run_explore(ex2, ex2_reg, "explore problem2");
      return run_explore(ex3, ex3_reg, "explore problem3");
    }
    if (lex_app->parsed()) {
      if (lex_app->get_subcommand("rank")->parsed())
        return drive("lex rank", lex_rank_cmd, lexr_reg, g,
                     {{"set", lex_rank_cmd.set}});
      return drive("lex unrank", lex_unrank_cmd, lexu_reg, g,
                   {{"rank", std::to_string(lex_unrank_cmd.rank)}});
    }
    if (shadow_app->parsed())
      return drive("shadow", shadow_cmd, shadow_reg, g,
                   {{"in", shadow_cmd.input}});
    if (family_app->parsed()) {
      if (family_app->get_subcommand("p")->parsed())
        return drive("family p", fam_p, famp_reg, g, {});
      if (family_app->get_subcommand("r")->parsed())
        return drive("family r", fam_r, famr_reg, g, {});
      if (family_app->get_subcommand("linitial")->parsed())
        return drive("family linitial", fam_li, famli_reg, g,
                     {{"m", std::to_string(fam_li.m)}});
      if (family_app->get_subcommand("compress")->parsed())
        return drive("family compress", fam_co, famco_reg, g,
                     {{"in", fam_co.input}});
      return drive("family partner", fam_pa, fampa_reg, g,
                   {{"in", fam_pa.input}});
    }
    return kExitUsage;
  } catch (const crossint::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const crossint::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
}
