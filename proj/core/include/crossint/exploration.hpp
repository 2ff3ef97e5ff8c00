#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crossint/bounds.hpp"
#include "crossint/family.hpp"

namespace crossint {

enum class SearchStatus { consistent, counterexample, budget_exhausted };

std::string to_string(SearchStatus s);

struct SearchOptions {
  // Enumeration-count ceiling. Predictable overruns throw BudgetExceeded
  // before any work; adaptive engines that cross the ceiling mid-run
  // return status budget_exhausted with the partial best (never a silently
  // truncated "consistent").
  std::uint64_t max_candidates = std::uint64_t{1} << 26;
  // Closure sweeps per restart before declaring a non-converging tuple dead.
  int max_sweeps = 64;
};

struct SearchOutcome {
  ProblemInstance instance;
  BoundReport conjectured;
  BigInt best_found;
  std::vector<Family> witness;  // best tuple found, instance.t families
  SearchStatus status = SearchStatus::consistent;
  std::uint64_t candidates_examined = 0;
  std::uint64_t seed = 0;  // alternating runs only
  // True when the search space was reduced to nested L-initial tuples
  // (valid only for q = 1 with equal sizes).
  bool compressed_search = false;
  std::string engine;
  bool attained = false;  // best_found == conjectured.max_value

  bool counterexample() const {
    return status == SearchStatus::counterexample;
  }
};

// Complete search for the maximum of sum(|A_i|) over non-empty pairwise
// cross-q-intersecting tuples. Strategy by instance shape:
//   q = 1, equal sizes: nested L-initial size scan (compression argument);
//   t = 2: subset enumeration of one universe with exact maximal-partner
//          completion, or anchored enumeration inside a member's q-ball
//          when the plain powerset exceeds the budget;
//   t >= 3: enumerate all families but the largest-universe one, complete
//           the last by its maximal q-partner (exact given the rest).
// status counterexample requires best_found > conjectured and a fully
// re-validated witness tuple.
SearchOutcome exhaustive_search(const ProblemInstance& inst,
                                const SearchOptions& = {});

// Heuristic lower-bound search: seeds (both extremal constructions first,
// then random non-empty tuples), each iterated to a fixed point of
// maximal-q-partner replacement. Deterministic for a fixed seed. Never
// reports a counterexample without exact revalidation of the tuple.
SearchOutcome alternating_maximization(const ProblemInstance& inst,
                                       int restarts, std::uint64_t seed,
                                       const SearchOptions& = {});

struct ConstructionValues {
  ProblemInstance instance;
  // r-branch pattern: A_1 = {A : |A cap [k_t]| >= q}, A_i = {A : [k_t] ⊆ A}.
  std::vector<Family> r_tuple;
  BigInt r_sum;
  bool r_valid = false;
  // 1-branch pattern: every A_i = {A : [q] ⊆ A}.
  std::vector<Family> star_tuple;
  BigInt star_sum;
  bool star_valid = false;

  bool validated() const { return r_valid && star_valid; }
};

// Instantiates both extremal constructions explicitly, validates pairwise
// cross-q-intersection exhaustively, and reports their sums (these must
// match problem_bound's branches exactly).
ConstructionValues construction_values(const ProblemInstance& inst);

}  // namespace crossint
