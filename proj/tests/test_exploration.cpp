#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "crossint/arith.hpp"
#include "crossint/bounds.hpp"
#include "crossint/errors.hpp"
#include "crossint/exploration.hpp"
#include "crossint/family.hpp"
#include "crossint/verification.hpp"

using namespace crossint;

namespace {

void check_witness(const SearchOutcome& out) {
  REQUIRE_FALSE(out.witness.empty());
  BigInt sum = 0;
  for (const Family& f : out.witness) {
    CHECK_FALSE(f.empty());
    sum += f.size();
  }
  CHECK(sum == out.best_found);
  CHECK(is_cross_q_intersecting(out.witness, out.instance.q));
}

}  // namespace

TEST_CASE("exhaustive search: frozen q=1 instances") {
  const SearchOutcome pair = exhaustive_search({1, 4, 2, {2, 2}, 1}, {});
  CHECK(pair.status == SearchStatus::consistent);
  CHECK(pair.best_found == 6);
  CHECK(pair.conjectured.max_value == 6);
  CHECK(pair.engine == "nested");
  CHECK(pair.compressed_search);
  CHECK(pair.attained);
  check_witness(pair);

  const SearchOutcome p2 = exhaustive_search({2, 5, 2, {2, 2}, 1}, {});
  CHECK(p2.status == SearchStatus::consistent);
  CHECK(p2.best_found == 8);
  check_witness(p2);

  const SearchOutcome unequal = exhaustive_search({1, 5, 2, {3, 2}, 1}, {});
  CHECK(unequal.status == SearchStatus::consistent);
  CHECK(unequal.best_found == 10);
  CHECK(unequal.engine == "powerset");
  CHECK_FALSE(unequal.compressed_search);
  check_witness(unequal);
}

TEST_CASE("exhaustive search: three families cross-checked against the "
          "corollary engine") {
  const SearchOutcome triple = exhaustive_search({1, 6, 3, {2, 2, 2}, 1}, {});
  CHECK(triple.status == SearchStatus::consistent);
  CHECK(triple.engine == "nested");
  CHECK(triple.compressed_search);
  check_witness(triple);

  const CorollaryCheckResult cor =
      verify_corollary(6, 2, 3, CorollaryMode::exhaustive);
  CHECK(triple.best_found == cor.observed);

  const SearchOutcome small = exhaustive_search({1, 4, 2, {2, 2}, 1}, {});
  const CorollaryCheckResult cor4 =
      verify_corollary(4, 2, 2, CorollaryMode::exhaustive);
  CHECK(small.best_found == cor4.observed);
}

TEST_CASE("exhaustive search: unequal sizes with three families") {
  const SearchOutcome mixed = exhaustive_search({1, 6, 3, {3, 2, 2}, 1}, {});
  CHECK(mixed.status == SearchStatus::consistent);
  CHECK(mixed.engine == "levelwise");
  CHECK_FALSE(mixed.compressed_search);
  CHECK(mixed.attained);
  // Star construction: C(5,2) + C(5,1) + C(5,1).
  CHECK(mixed.best_found == 20);
  check_witness(mixed);
}

TEST_CASE("exhaustive search: cross-q anchored instance") {
  const SearchOutcome q2 = exhaustive_search({3, 7, 2, {3, 3}, 2}, {});
  CHECK(q2.status == SearchStatus::consistent);
  CHECK(q2.engine == "anchored");
  CHECK(q2.best_found == 14);
  CHECK(q2.best_found == fk_bound(7, 3, 2));
  check_witness(q2);
}

TEST_CASE("alternating maximization: reaches the constructions") {
  const SearchOutcome alt = alternating_maximization({3, 7, 2, {3, 3}, 2},
                                                     20, 7, {});
  CHECK(alt.status == SearchStatus::consistent);
  CHECK(alt.best_found == 14);
  CHECK(alt.seed == 7);
  check_witness(alt);

  // The heuristic equals the exhaustive optimum on small instances.
  const std::vector<ProblemInstance> grid = {
      {1, 4, 2, {2, 2}, 1}, {1, 5, 2, {3, 2}, 1},
      {1, 6, 2, {3, 3}, 1}, {2, 5, 2, {2, 2}, 1},
      {1, 6, 3, {2, 2, 2}, 1},
  };
  for (const ProblemInstance& inst : grid) {
    const SearchOutcome ex = exhaustive_search(inst, {});
    const SearchOutcome alt2 = alternating_maximization(inst, 16, 123, {});
    CHECK(ex.best_found == alt2.best_found);
    CHECK(alt2.status == SearchStatus::consistent);
  }
}

TEST_CASE("alternating maximization: deterministic under a fixed seed") {
  const ProblemInstance inst{3, 7, 2, {3, 3}, 2};
  const SearchOutcome a = alternating_maximization(inst, 10, 99, {});
  const SearchOutcome b = alternating_maximization(inst, 10, 99, {});
  CHECK(a.best_found == b.best_found);
  CHECK(a.candidates_examined == b.candidates_examined);
  REQUIRE(a.witness.size() == b.witness.size());
  for (std::size_t i = 0; i < a.witness.size(); ++i)
    CHECK(a.witness[i] == b.witness[i]);
}

TEST_CASE("construction values: instantiate, validate, match the bound") {
  const ConstructionValues cv = construction_values({3, 7, 2, {3, 3}, 2});
  CHECK(cv.r_sum == 14);
  CHECK(cv.star_sum == 10);
  CHECK(cv.validated());
  CHECK(is_cross_q_intersecting(cv.r_tuple, 2));
  CHECK(is_cross_q_intersecting(cv.star_tuple, 2));

  const std::vector<ProblemInstance> grid = {
      {1, 5, 2, {2, 2}, 1},    {1, 6, 2, {3, 2}, 1},
      {1, 7, 3, {3, 2, 2}, 1}, {2, 6, 2, {2, 2}, 1},
      {3, 8, 2, {3, 3}, 2},    {3, 9, 3, {3, 3, 3}, 2},
  };
  for (const ProblemInstance& inst : grid) {
    const ConstructionValues values = construction_values(inst);
    CHECK(values.validated());
    const BoundReport bound = problem_bound(inst);
    CHECK(Rational(values.r_sum) == bound.branch_values[0].second);
    CHECK(Rational(values.star_sum) == bound.branch_values[1].second);
  }

  // t=2, equal sizes, q=1: the branches are the corollary's.
  const ConstructionValues pair = construction_values({1, 6, 2, {2, 2}, 1});
  const BoundReport cor = corollary_bound(6, 2, 2);
  CHECK(Rational(pair.r_sum) == cor.branch_values[0].second);
  CHECK(Rational(pair.star_sum) == cor.branch_values[1].second);
}

TEST_CASE("budgets: adaptive abort vs predictable refusal") {
  SearchOptions tiny;
  tiny.max_candidates = 5;
  const SearchOutcome aborted =
      exhaustive_search({1, 6, 3, {2, 2, 1}, 1}, tiny);
  CHECK(aborted.status == SearchStatus::budget_exhausted);
  CHECK(aborted.candidates_examined <= 5);

  // The nested scan knows its cost up front and refuses instead.
  CHECK_THROWS_AS(exhaustive_search({1, 6, 3, {2, 2, 2}, 1}, tiny),
                  BudgetExceeded);

  SearchOptions small;
  small.max_candidates = 100;
  CHECK_THROWS_AS(exhaustive_search({3, 7, 2, {3, 3}, 2}, small),
                  BudgetExceeded);
}

TEST_CASE("search preconditions") {
  // The search operations need k_t > q (the evaluator alone allows k_t = q).
  CHECK_THROWS_AS(exhaustive_search({3, 7, 2, {3, 3}, 3}, {}),
                  ValidationError);
  CHECK_THROWS_AS(alternating_maximization({3, 7, 2, {3, 3}, 3}, 4, 1, {}),
                  ValidationError);
  CHECK_THROWS_AS(exhaustive_search({1, 4, 2, {3, 2}, 1}, {}),
                  ValidationError);
}

TEST_CASE("status strings") {
  CHECK(std::string(to_string(SearchStatus::consistent)) == "consistent");
  CHECK(std::string(to_string(SearchStatus::counterexample)) ==
        "COUNTEREXAMPLE");
  CHECK(std::string(to_string(SearchStatus::budget_exhausted)) ==
        "budget_exhausted");
}
