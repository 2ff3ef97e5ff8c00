// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Time caps are pinned next to the runs they constrain.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <sys/wait.h>

#include "crossint/arith.hpp"
#include "crossint/bounds.hpp"
#include "crossint/errors.hpp"
#include "crossint/exploration.hpp"
#include "crossint/family.hpp"
#include "crossint/kset.hpp"
#include "crossint/verification.hpp"

using namespace crossint;

namespace {

int g_failures = 0;

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void criterion(int id, const std::string& label, double cap_seconds,
               const std::function<void(Outcome&)>& body) {
  Outcome oc;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(oc);
  } catch (const std::exception& e) {
    oc.ok = false;
    oc.note = std::string("exception: ") + e.what();
  }
  const double secs = seconds_since(t0);
  const bool in_time = cap_seconds <= 0.0 || secs <= cap_seconds;
  const bool pass = oc.ok && in_time;
  if (!pass) ++g_failures;

  std::ostringstream line;
  line << (pass ? "[PASS]" : "[FAIL]") << " criterion " << id << ": "
       << label;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << " (" << secs << "s";
  if (cap_seconds > 0.0) line << ", cap " << cap_seconds << "s";
  line << ")";
  if (!oc.note.empty()) line << " -- " << oc.note;
  if (oc.ok && !in_time) line << " -- time cap exceeded";
  std::printf("%s\n", line.str().c_str());
  std::fflush(stdout);
}

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(CROSSINT_CLI_PATH) + " " + args;
  CliRun result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
    result.out.append(buf, got);
  const int rc = pclose(pipe);
  result.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return result;
}

// Shared between criteria 2 and 3 (criterion 3 classifies the same sweep).
struct SweepCell {
  TheoremParams params;
  MainVerification verification;
};
std::vector<SweepCell> g_sweep;

}  // namespace

int main() {
  std::printf("acceptance: cross-intersecting bound toolkit\n");

  criterion(1, "non-empty pair maximum equals the HM bound", 2.0,
            [](Outcome& oc) {
              for (const int n : {4, 5}) {
                ScanOptions so;
                so.window = {std::uint64_t{1}, binomial_u64(n, 2)};
                so.require_nonempty_partner = true;
                const auto t0 = std::chrono::steady_clock::now();
                const ScanResult res =
                    brute_force_max({n, 2, 2, 1, Rational(1)}, so);
                const double secs = seconds_since(t0);  // cap: 1 s per run
                oc.require(secs < 1.0, "run exceeded 1 s");
                const BigInt expect = hm_bound(n, 2);
                oc.require(expect == (n == 4 ? 6 : 8), "frozen value drifted");
                oc.require(res.observed_max == Rational(expect),
                           "observed max != HM bound at n=" +
                               std::to_string(n));
              }
            });

  criterion(
      2, "two-engine sweep of the central bound (95 cells)", 600.0,
      [](Outcome& oc) {
        const std::vector<Rational> cs = {Rational(1, 10), Rational(1, 2),
                                          Rational(1), Rational(2),
                                          Rational(10)};
        for (const int k : {2, 3})
          for (const int l : {2, 3})
            for (int n = k + l; n <= k + l + 3; ++n) {
              if (binomial_u64(n, l) > 20) continue;
              for (int r = 1; r <= l; ++r)
                for (const Rational& c : cs) {
                  const TheoremParams p{n, k, l, r, c};
                  ScanOptions so;
                  so.workers = 4;
                  g_sweep.push_back(
                      {p, verify_main_theorem(p, VerifyMode::both, so)});
                  const MainVerification& v = g_sweep.back().verification;
                  if (!v.ok()) {
                    std::ostringstream os;
                    os << "cell (n=" << n << ",k=" << k << ",l=" << l
                       << ",r=" << r << ",c=" << fraction_str(c) << ") "
                       << (v.matched ? "" : "MISMATCH ")
                       << (v.engines_agree ? "" : "engines disagree");
                    oc.require(false, os.str());
                  }
                }
            }
        oc.require(g_sweep.size() == 95,
                   "expected 95 cells, got " +
                       std::to_string(g_sweep.size()));
      });

  criterion(
      3, "every sweep witness classifies into the predicted case", 0.0,
      [](Outcome& oc) {
        oc.require(!g_sweep.empty(), "criterion 2 sweep unavailable");
        for (const SweepCell& cell : g_sweep) {
          const MainVerification& v = cell.verification;
          const TheoremParams& p = cell.params;
          std::ostringstream at;
          at << "(n=" << p.n << ",k=" << p.k << ",l=" << p.l << ",r=" << p.r
             << ",c=" << fraction_str(p.c) << ")";
          oc.require(v.unclassified == 0 && v.case_counts.count("none") == 0,
                     "unclassified witness at " + at.str());
          oc.require(!v.case_counts.empty(), "no witnesses at " + at.str());
          std::uint64_t classified = 0;
          for (const auto& kv : v.case_counts) classified += kv.second;
          oc.require(classified == v.primary().witness_total,
                     "classification tally mismatch at " + at.str());
          if (p.n > p.k + p.l) {
            for (const auto& kv : v.case_counts)
              oc.require(kv.first == "i" || kv.first == "ii",
                         "case (" + kv.first + ") at " + at.str());
          } else {
            const std::string want =
                p.c < 1 ? "iii" : (p.c == 1 ? "iv" : "v");
            oc.require(v.case_counts.size() == 1 &&
                           v.case_counts.count(want) == 1,
                       "expected case (" + want + ") only at " + at.str());
          }
        }
      });

  criterion(4, "disjointness-shadow minimum at (6,2,3,2)", 5.0,
            [](Outcome& oc) {
              const ShadowMinimumResult res =
                  verify_proposition_fm(6, 2, 3, 2);
              oc.require(res.families_checked == 4845, "family count");
              oc.require(res.min_shadow == 6 && res.expected_min == 6,
                         "minimum shadow != C(4,2)");
              oc.require(res.minimizer_count == 15 &&
                             res.expected_minimizers == 15,
                         "minimizer count != C(6,2)");
              oc.require(res.minimizers_all_principal,
                         "non-principal minimizer");
              oc.require(res.pass, "report not marked pass");
            });

  criterion(
      5, "bipartite link-graph bound on every in-budget cell", 60.0,
      [](Outcome& oc) {
        const std::vector<Rational> cs = {Rational(1, 2), Rational(1),
                                          Rational(2)};
        int cells = 0;
        for (int n = 2; n <= 7; ++n)
          for (int k = 2; k <= n; ++k)
            for (int l = 2; l <= n; ++l)
              for (int s = 2; s <= std::min(k, l); ++s) {
                // The link graph is edgeless below n = k+l, where the
                // independence bound is not claimed.
                if (n < k + l) continue;
                // Engine budget: |X| + |Y| <= 26 vertices.
                if (binomial_u64(n - s, k - 1) +
                        binomial_u64(n - s, l - s + 1) >
                    26)
                  continue;
                for (const Rational& c : cs) {
                  const BipartiteLemmaResult res =
                      verify_bipartite_lemma(n, k, l, s, c);
                  if (!res.pass) {
                    std::ostringstream os;
                    os << "cell (n=" << n << ",k=" << k << ",l=" << l
                       << ",s=" << s << ",c=" << fraction_str(c) << ")";
                    oc.require(false, os.str());
                  }
                  ++cells;
                }
              }
        oc.require(cells > 0, "no cells in budget");
      });

  criterion(6, "binomial inequality scan to n = 40", 5.0, [](Outcome& oc) {
    const InequalityScanReport rep = scan_inequalities(40);
    oc.require(rep.violations.empty(), "violations found");
    oc.require(rep.eq13_locus_exact,
               "inequality (13) equality locus is not exactly n = k+l");
    oc.require(rep.pass, "report not marked pass");
  });

  criterion(
      7, "t-family corollary: constructions, exhaustive check, "
         "specialization",
      0.0, [](Outcome& oc) {
        const std::vector<std::array<int, 3>> trio = {
            {{4, 2, 2}}, {{6, 2, 3}}, {{10, 2, 2}}};
        for (const auto& [n, k, t] : trio) {
          const CorollaryCheckResult res =
              verify_corollary(n, k, t, CorollaryMode::construction);
          std::ostringstream at;
          at << "(" << n << "," << k << "," << t << ")";
          oc.require(res.constructions_valid,
                     "invalid construction at " + at.str());
          oc.require(Rational(res.observed) == res.bound.max_value,
                     "winning branch not attained at " + at.str());
          oc.require(res.pass, "construction check failed at " + at.str());
        }

        const CorollaryCheckResult ex =
            verify_corollary(4, 2, 2, CorollaryMode::exhaustive);
        oc.require(ex.pass && ex.observed == 6,
                   "exhaustive (4,2,2) max != 6");

        // corollary_bound(n,k,t) == main_bound(r=k=l, c=t-1), branch by
        // branch, in exact arithmetic.
        for (int k = 2; k <= 4; ++k)
          for (int n = 2 * k; n <= 2 * k + 4; ++n)
            for (int t = 2; t <= 5; ++t) {
              const BoundReport cor = corollary_bound(n, k, t);
              const BoundReport spec =
                  main_bound({n, k, k, k, Rational(t - 1)});
              bool same =
                  cor.branch_values.size() == spec.branch_values.size() &&
                  cor.max_value == spec.max_value && cor.tie == spec.tie;
              if (same)
                for (std::size_t i = 0; i < cor.branch_values.size(); ++i)
                  same = same && cor.branch_values[i].second ==
                                     spec.branch_values[i].second;
              oc.require(same, "specialization drift at (n=" +
                                   std::to_string(n) + ",k=" +
                                   std::to_string(k) + ",t=" +
                                   std::to_string(t) + ")");
            }
      });

  criterion(
      8, "cross-q pair bound: q=1 reduction and exhaustive (7,3,3,q=2)",
      120.0, [](Outcome& oc) {
        for (int k = 2; k <= 15; ++k)
          for (int n = 2 * k; n <= 30; ++n)
            oc.require(fk_bound(n, k, 1) == hm_bound(n, k),
                       "fk(n,k,1) != hm(n,k) at (n=" + std::to_string(n) +
                           ",k=" + std::to_string(k) + ")");

        const SearchOutcome out = exhaustive_search({3, 7, 2, {3, 3}, 2}, {});
        oc.require(out.status == SearchStatus::consistent,
                   "search status not consistent");
        oc.require(out.best_found == 14 && out.best_found == fk_bound(7, 3, 2),
                   "exhaustive max != 14");
        oc.require(out.attained, "bound not attained");
      });

  criterion(
      9, "open-problem exploration is counterexample-free", 0.0,
      [](Outcome& oc) {
        std::vector<ProblemInstance> instances;
        for (int n = 2; n <= 6; ++n) {
          for (int k1 = 1; k1 < n; ++k1)
            for (int k2 = 1; k2 <= k1 && k1 + k2 <= n; ++k2) {
              instances.push_back({1, n, 2, {k1, k2}, 1});
              for (int k3 = 1; k3 <= k2; ++k3)
                instances.push_back({1, n, 3, {k1, k2, k3}, 1});
            }
        }
        instances.push_back({2, 7, 2, {3, 3}, 2});
        instances.push_back({3, 7, 2, {3, 3}, 2});

        for (const ProblemInstance& inst : instances) {
          std::ostringstream at;
          at << "problem " << inst.problem_id << " (n=" << inst.n
             << ", sizes";
          for (const int s : inst.sizes) at << " " << s;
          at << ", q=" << inst.q << ")";

          const SearchOutcome out = exhaustive_search(inst, {});
          oc.require(out.status == SearchStatus::consistent,
                     (out.status == SearchStatus::counterexample
                          ? "COUNTEREXAMPLE at "
                          : "budget exhausted at ") +
                         at.str());

          const ConstructionValues cv = construction_values(inst);
          const BoundReport bound = problem_bound(inst);
          oc.require(cv.validated(), "invalid construction at " + at.str());
          oc.require(Rational(cv.r_sum) == bound.branch_values[0].second &&
                         Rational(cv.star_sum) ==
                             bound.branch_values[1].second,
                     "construction sums drift from the bound at " + at.str());
        }
        oc.require(instances.size() == 54,
                   "expected 54 instances, got " +
                       std::to_string(instances.size()));
      });

  criterion(
      10, "infrastructure: rank round-trip, compression property, "
          "byte-identical JSON",
      0.0, [](Outcome& oc) {
        for (int n = 1; n <= 12; ++n)
          for (int k = 1; k <= n; ++k) {
            const std::uint64_t total = binomial_u64(n, k);
            for (std::uint64_t r = 0; r < total; ++r)
              if (lex_rank(lex_unrank(n, k, r)) != r)
                oc.require(false, "round-trip failed at (n=" +
                                      std::to_string(n) + ",k=" +
                                      std::to_string(k) + ",rank=" +
                                      std::to_string(r) + ")");
          }

        const std::uint64_t seed = 20260819;  // logged: fixed run seed
        for (const auto& [n, k, l] :
             std::vector<std::array<int, 3>>{{{6, 2, 3}}, {{7, 3, 3}}}) {
          const KkPreservationResult res =
              verify_kk_preservation(n, k, l, 1000, seed);
          oc.require(res.pass && res.trials == 1000,
                     "compression property failed at (" + std::to_string(n) +
                         "," + std::to_string(k) + "," + std::to_string(l) +
                         ") seed " + std::to_string(seed));
        }
        if (oc.ok)
          oc.note = "kk seed " + std::to_string(seed);  // logged seed

        const std::string cmd =
            "verify main -n 5 -k 2 -l 3 -r 2 -c 1/2 --format json "
            "--no-timestamp";
        const CliRun a = run_cli(cmd);
        const CliRun b = run_cli(cmd);
        oc.require(a.exit_code == 0 && b.exit_code == 0,
                   "CLI run failed");
        oc.require(!a.out.empty() && a.out == b.out,
                   "JSON reruns are not byte-identical");
      });

  if (g_failures == 0)
    std::printf("acceptance: 10/10 criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
