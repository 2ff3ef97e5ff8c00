#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crossint/arith.hpp"
#include "crossint/errors.hpp"
#include "crossint/exploration.hpp"

namespace crossint {

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::consistent: return "consistent";
    case SearchStatus::counterexample: return "COUNTEREXAMPLE";
    case SearchStatus::budget_exhausted: return "budget_exhausted";
  }
  throw std::logic_error("unknown SearchStatus");
}

namespace {

int isect(std::uint64_t a, std::uint64_t b) { return std::popcount(a & b); }

// Conflict bitmask over `targets` for each source member: bit j set when
// the pair intersects in fewer than q elements.
std::vector<std::uint64_t> conflict_masks(
    const std::vector<std::uint64_t>& sources,
    const std::vector<std::uint64_t>& targets, int q) {
  std::vector<std::uint64_t> out(sources.size(), 0);
  for (std::size_t i = 0; i < sources.size(); ++i)
    for (std::size_t j = 0; j < targets.size(); ++j)
      if (isect(sources[i], targets[j]) < q)
        out[i] |= std::uint64_t{1} << j;
  return out;
}

Family prefix_family(int n, int k, const std::vector<std::uint64_t>& u,
                     std::size_t m) {
  return Family::from_masks(
      n, k,
      std::vector<std::uint64_t>(u.begin(),
                                 u.begin() + static_cast<std::ptrdiff_t>(m)));
}

Family subset_family(int n, int k, const std::vector<std::uint64_t>& u,
                     std::uint64_t S) {
  std::vector<std::uint64_t> masks;
  for (std::uint64_t rest = S; rest != 0; rest &= rest - 1)
    masks.push_back(u[static_cast<std::size_t>(std::countr_zero(rest))]);
  return Family::from_masks(n, k, std::move(masks));
}

SearchOutcome finish_outcome(SearchOutcome out, const SearchOptions&) {
  // A best value beating the conjecture is only reported after the witness
  // tuple revalidates from scratch; an invalid "improvement" is a bug.
  const Rational best(out.best_found);
  out.attained = (best == out.conjectured.max_value);
  if (out.status == SearchStatus::budget_exhausted) return out;
  if (best > out.conjectured.max_value) {
    BigInt sum = 0;
    bool nonempty = true;
    for (const Family& f : out.witness) {
      sum += BigInt(f.size());
      nonempty = nonempty && !f.empty();
    }
    if (!nonempty || sum != out.best_found ||
        !is_cross_q_intersecting(out.witness, out.instance.q))
      throw std::logic_error(
          "search produced an invalid above-bound witness tuple");
    out.status = SearchStatus::counterexample;
  } else {
    out.status = SearchStatus::consistent;
  }
  return out;
}

// q = 1, all sizes equal: compression plus the nesting argument reduce the
// space to L-initial prefix tuples (m1, m2, ..., m2), m1 >= m2, with the
// shared second prefix intersecting when t >= 3.
SearchOutcome nested_search(const ProblemInstance& inst,
                            const SearchOptions& opts) {
  const int n = inst.n;
  const int k = inst.sizes[0];
  const std::vector<std::uint64_t> u = lex_universe(n, k);
  const std::size_t U = u.size();
  if (static_cast<std::uint64_t>(U) * U > opts.max_candidates)
    throw BudgetExceeded("nested scan: C(n,k)^2 exceeds max_candidates");

  std::vector<std::size_t> first_disjoint(U, U + 1);
  for (std::size_t i = 0; i < U; ++i)
    for (std::size_t j = 0; j < U; ++j)
      if ((u[i] & u[j]) == 0) {
        first_disjoint[i] = j;
        break;
      }
  std::vector<std::size_t> pref_min(U + 1, U + 1);
  for (std::size_t m = 1; m <= U; ++m)
    pref_min[m] = std::min(pref_min[m - 1], first_disjoint[m - 1]);
  std::size_t self_max = U;
  for (std::size_t m = 1; m <= U; ++m) {
    bool ok = true;
    for (std::size_t j = 0; j + 1 < m; ++j)
      if ((u[m - 1] & u[j]) == 0) ok = false;
    if (!ok) {
      self_max = m - 1;
      break;
    }
  }

  SearchOutcome out;
  out.instance = inst;
  out.conjectured = problem_bound(inst);
  out.engine = "nested";
  out.compressed_search = true;
  BigInt best = -1;
  std::size_t bm1 = 0, bm2 = 0;
  for (std::size_t m1 = 1; m1 <= U; ++m1)
    for (std::size_t m2 = 1; m2 <= m1; ++m2) {
      if (pref_min[m1] < m2) break;
      if (inst.t >= 3 && m2 > self_max) break;
      ++out.candidates_examined;
      const BigInt sum = BigInt(m1) + BigInt(inst.t - 1) * BigInt(m2);
      if (sum > best) {
        best = sum;
        bm1 = m1;
        bm2 = m2;
      }
    }
  out.best_found = best;
  out.witness.push_back(prefix_family(n, k, u, bm1));
  for (int i = 1; i < inst.t; ++i)
    out.witness.push_back(prefix_family(n, k, u, bm2));
  return finish_outcome(std::move(out), opts);
}

// t = 2: enumerate every subset of one universe, complete with the exact
// maximal q-partner on the other side.
SearchOutcome powerset_search(const ProblemInstance& inst,
                              const std::vector<std::uint64_t>& ua,
                              const std::vector<std::uint64_t>& ub,
                              const SearchOptions& opts) {
  const bool enum_a = ua.size() <= ub.size();
  const auto& eu = enum_a ? ua : ub;
  const auto& gu = enum_a ? ub : ua;
  const std::vector<std::uint64_t> conf = conflict_masks(gu, eu, inst.q);

  SearchOutcome out;
  out.instance = inst;
  out.conjectured = problem_bound(inst);
  out.engine = "powerset";
  const std::uint64_t total = std::uint64_t{1} << eu.size();
  BigInt best = -1;
  std::uint64_t best_S = 0;
  for (std::uint64_t S = 1; S < total; ++S) {
    ++out.candidates_examined;
    std::uint64_t pc = 0;
    for (const std::uint64_t c : conf)
      if ((c & S) == 0) ++pc;
    if (pc == 0) continue;
    const BigInt sum = BigInt(std::popcount(S)) + BigInt(pc);
    if (sum > best) {
      best = sum;
      best_S = S;
    }
  }
  out.best_found = best;
  const int ek = enum_a ? inst.sizes[0] : inst.sizes[1];
  const int gk = enum_a ? inst.sizes[1] : inst.sizes[0];
  Family ef = subset_family(inst.n, ek, eu, best_S);
  std::vector<std::uint64_t> partner;
  for (std::size_t g = 0; g < gu.size(); ++g)
    if ((conf[g] & best_S) == 0) partner.push_back(gu[g]);
  Family gf = Family::from_masks(inst.n, gk, std::move(partner));
  if (enum_a) {
    out.witness.push_back(std::move(ef));
    out.witness.push_back(std::move(gf));
  } else {
    out.witness.push_back(std::move(gf));
    out.witness.push_back(std::move(ef));
  }
  return finish_outcome(std::move(out), opts);
}

// t = 2 fallback when the plain powerset is too large: any optimal pair
// has its enumerated side inside the q-ball of each member of the other
// side, so anchoring on one member and enumerating ball subsets is still
// a complete search.
SearchOutcome anchored_search(const ProblemInstance& inst,
                              const std::vector<std::uint64_t>& ua,
                              const std::vector<std::uint64_t>& ub,
                              bool enum_a, const SearchOptions& opts) {
  const auto& eu = enum_a ? ua : ub;
  const auto& gu = enum_a ? ub : ua;
  const std::vector<std::uint64_t> conf = conflict_masks(gu, eu, inst.q);

  SearchOutcome out;
  out.instance = inst;
  out.conjectured = problem_bound(inst);
  out.engine = "anchored";
  BigInt best = -1;
  std::uint64_t best_S = 0;
  bool aborted = false;
  for (std::size_t g0 = 0; g0 < gu.size() && !aborted; ++g0) {
    const std::uint64_t ball = ~conf[g0] & ((eu.size() == 64)
                                                ? ~std::uint64_t{0}
                                                : (std::uint64_t{1}
                                                       << eu.size()) -
                                                      1);
    for (std::uint64_t S = ball; S != 0; S = (S - 1) & ball) {
      if (out.candidates_examined == opts.max_candidates) {
        aborted = true;
        break;
      }
      ++out.candidates_examined;
      std::uint64_t pc = 0;
      for (const std::uint64_t c : conf)
        if ((c & S) == 0) ++pc;
      if (pc == 0) continue;
      const BigInt sum = BigInt(std::popcount(S)) + BigInt(pc);
      if (sum > best) {
        best = sum;
        best_S = S;
      }
    }
  }
  out.best_found = best;
  const int ek = enum_a ? inst.sizes[0] : inst.sizes[1];
  const int gk = enum_a ? inst.sizes[1] : inst.sizes[0];
  Family ef = subset_family(inst.n, ek, eu, best_S);
  std::vector<std::uint64_t> partner;
  for (std::size_t g = 0; g < gu.size(); ++g)
    if ((conf[g] & best_S) == 0) partner.push_back(gu[g]);
  Family gf = Family::from_masks(inst.n, gk, std::move(partner));
  if (enum_a) {
    out.witness.push_back(std::move(ef));
    out.witness.push_back(std::move(gf));
  } else {
    out.witness.push_back(std::move(gf));
    out.witness.push_back(std::move(ef));
  }
  if (aborted) out.status = SearchStatus::budget_exhausted;
  return finish_outcome(std::move(out), opts);
}

// t >= 3: enumerate subsets for every family except the one with the
// largest universe, which is completed greedily (taking the whole filtered
// universe is exact because members of one family do not constrain each
// other).
struct LevelwiseState {
  const ProblemInstance* inst = nullptr;
  const SearchOptions* opts = nullptr;
  int levels = 0;  // enumerated levels; level `levels` is greedy
  std::vector<std::vector<std::uint64_t>> universes;  // sorted order
  // conf[d][j]: per member of universe d, conflicts in universe j (j > d).
  std::vector<std::vector<std::vector<std::uint64_t>>> conf;
  std::vector<std::uint64_t> chosen;
  BigInt best = -1;
  std::vector<std::uint64_t> best_chosen;
  std::uint64_t best_greedy = 0;
  std::uint64_t examined = 0;
  bool aborted = false;

  void rec(int d, int sum_so_far, std::vector<std::uint64_t> allowed) {
    if (aborted) return;
    if (d == levels) {
      if (examined == opts->max_candidates) {
        aborted = true;
        return;
      }
      ++examined;
      const std::uint64_t greedy = allowed[static_cast<std::size_t>(d)];
      if (greedy == 0) return;
      const BigInt sum = BigInt(sum_so_far) + BigInt(std::popcount(greedy));
      if (sum > best) {
        best = sum;
        best_chosen = chosen;
        best_greedy = greedy;
      }
      return;
    }
    // Optimistic bound: everything still allowed downstream.
    {
      int optimistic = sum_so_far;
      for (int j = d; j <= levels; ++j)
        optimistic += std::popcount(allowed[static_cast<std::size_t>(j)]);
      if (best >= 0 && BigInt(optimistic) <= best) return;
    }
    const std::uint64_t base = allowed[static_cast<std::size_t>(d)];
    for (std::uint64_t S = base; S != 0; S = (S - 1) & base) {
      chosen[static_cast<std::size_t>(d)] = S;
      std::vector<std::uint64_t> next = allowed;
      for (std::uint64_t rest = S; rest != 0; rest &= rest - 1) {
        const auto m = static_cast<std::size_t>(std::countr_zero(rest));
        for (int j = d + 1; j <= levels; ++j)
          next[static_cast<std::size_t>(j)] &=
              ~conf[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)]
                   [m];
      }
      rec(d + 1, sum_so_far + std::popcount(S), std::move(next));
      if (aborted) return;
    }
    chosen[static_cast<std::size_t>(d)] = 0;
  }
};

SearchOutcome levelwise_search(const ProblemInstance& inst,
                               const std::vector<std::vector<std::uint64_t>>&
                                   universes_orig,
                               const SearchOptions& opts) {
  const int t = inst.t;
  // Sort levels by universe size ascending (stable); the last one is
  // completed greedily.
  std::vector<int> order(static_cast<std::size_t>(t));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return universes_orig[static_cast<std::size_t>(a)].size() <
           universes_orig[static_cast<std::size_t>(b)].size();
  });

  LevelwiseState st;
  st.inst = &inst;
  st.opts = &opts;
  st.levels = t - 1;
  st.universes.resize(static_cast<std::size_t>(t));
  for (int d = 0; d < t; ++d)
    st.universes[static_cast<std::size_t>(d)] =
        universes_orig[static_cast<std::size_t>(order[static_cast<
            std::size_t>(d)])];
  st.conf.resize(static_cast<std::size_t>(t));
  for (int d = 0; d < t; ++d) {
    st.conf[static_cast<std::size_t>(d)].resize(
        static_cast<std::size_t>(t));
    for (int j = d + 1; j < t; ++j) {
      const auto& src = st.universes[static_cast<std::size_t>(d)];
      const auto& tgt = st.universes[static_cast<std::size_t>(j)];
      auto& cm = st.conf[static_cast<std::size_t>(d)]
                        [static_cast<std::size_t>(j)];
      cm.assign(src.size(), 0);
      for (std::size_t i = 0; i < src.size(); ++i)
        for (std::size_t v = 0; v < tgt.size(); ++v)
          if (isect(src[i], tgt[v]) < inst.q)
            cm[i] |= std::uint64_t{1} << v;
    }
  }
  st.chosen.assign(static_cast<std::size_t>(t), 0);

  std::vector<std::uint64_t> allowed(static_cast<std::size_t>(t));
  for (int d = 0; d < t; ++d) {
    const std::size_t sz = st.universes[static_cast<std::size_t>(d)].size();
    allowed[static_cast<std::size_t>(d)] =
        (sz == 64) ? ~std::uint64_t{0}
                   : (std::uint64_t{1} << sz) - 1;
  }
  st.rec(0, 0, std::move(allowed));

  SearchOutcome out;
  out.instance = inst;
  out.conjectured = problem_bound(inst);
  out.engine = "levelwise";
  out.candidates_examined = st.examined;
  out.best_found = st.best;
  // Reassemble the witness in the original family order.
  std::vector<Family> sorted_witness;
  for (int d = 0; d < t; ++d) {
    const auto& u = st.universes[static_cast<std::size_t>(d)];
    const int sz = inst.sizes[static_cast<std::size_t>(
        order[static_cast<std::size_t>(d)])];
    const std::uint64_t S =
        (d == st.levels) ? st.best_greedy
                         : st.best_chosen[static_cast<std::size_t>(d)];
    sorted_witness.push_back(subset_family(inst.n, sz, u, S));
  }
  out.witness.resize(static_cast<std::size_t>(t),
                     Family(inst.n, inst.sizes[0]));
  for (int d = 0; d < t; ++d)
    out.witness[static_cast<std::size_t>(order[static_cast<std::size_t>(
        d)])] = std::move(sorted_witness[static_cast<std::size_t>(d)]);
  if (st.aborted) out.status = SearchStatus::budget_exhausted;
  return finish_outcome(std::move(out), opts);
}

void require_search_form(const ProblemInstance& inst) {
  inst.validate();
  if (inst.problem_id == 3 && inst.q >= inst.sizes.back())
    throw ValidationError("search requires k_t > q");
}

}  // namespace

SearchOutcome exhaustive_search(const ProblemInstance& inst,
                                const SearchOptions& opts) {
  require_search_form(inst);

  const bool equal_sizes =
      std::all_of(inst.sizes.begin(), inst.sizes.end(),
                  [&](int s) { return s == inst.sizes[0]; });
  if (inst.q == 1 && equal_sizes) return nested_search(inst, opts);

  std::vector<std::vector<std::uint64_t>> universes;
  for (int s : inst.sizes) universes.push_back(lex_universe(inst.n, s));

  if (inst.t == 2) {
    // The enumerated side lives in a subset bitmask, so it is capped at 62
    // bits; the completed side is only ever a mask vector.
    const std::size_t small =
        std::min(universes[0].size(), universes[1].size());
    if (small <= 62 && (std::uint64_t{1} << small) <= opts.max_candidates)
      return powerset_search(inst, universes[0], universes[1], opts);
    // Anchored cost: |other| * 2^|ball|, ball size uniform over anchors by
    // the symmetry of the ground set. Pick the cheaper feasible
    // orientation.
    auto ball_bits = [&](const std::vector<std::uint64_t>& e,
                         std::uint64_t anchor) {
      int b = 0;
      for (const std::uint64_t m : e)
        if (isect(m, anchor) >= inst.q) ++b;
      return b;
    };
    const long double budget =
        static_cast<long double>(opts.max_candidates);
    const long double infeasible = budget * 2 + 1;
    const long double cost_a =  // enumerate inside universe 0
        universes[0].size() <= 62
            ? static_cast<long double>(universes[1].size()) *
                  std::pow(2.0L, ball_bits(universes[0], universes[1][0]))
            : infeasible;
    const long double cost_b =
        universes[1].size() <= 62
            ? static_cast<long double>(universes[0].size()) *
                  std::pow(2.0L, ball_bits(universes[1], universes[0][0]))
            : infeasible;
    if (std::min(cost_a, cost_b) > budget)
      throw BudgetExceeded("anchored enumeration exceeds max_candidates");
    return anchored_search(inst, universes[0], universes[1],
                           cost_a <= cost_b, opts);
  }

  for (const auto& u : universes)
    if (u.size() > 62)
      throw BudgetExceeded("universe C(n,k_i) exceeds 62 subset-mask bits");
  return levelwise_search(inst, universes, opts);
}

SearchOutcome alternating_maximization(const ProblemInstance& inst,
                                       int restarts, std::uint64_t seed,
                                       const SearchOptions& opts) {
  require_search_form(inst);
  if (restarts < 0) throw ValidationError("restarts must be >= 0");

  SearchOutcome out;
  out.instance = inst;
  out.conjectured = problem_bound(inst);
  out.engine = "alternating";
  out.seed = seed;

  const auto t = static_cast<std::size_t>(inst.t);
  std::vector<std::vector<std::uint64_t>> universes;
  for (int s : inst.sizes) universes.push_back(lex_universe(inst.n, s));

  std::mt19937_64 rng(seed);
  const ConstructionValues cons = construction_values(inst);

  BigInt best = -1;
  std::vector<Family> best_tuple;

  // Seeds: both extremal constructions first, then random tuples. A seed
  // tuple need not be valid; the first full sweep either normalizes it or
  // empties a family (dead restart, discarded).
  const int total_runs = 2 + restarts;
  for (int run = 0; run < total_runs; ++run) {
    std::vector<Family> cur;
    if (run == 0) {
      cur = cons.r_tuple;
    } else if (run == 1) {
      cur = cons.star_tuple;
    } else {
      for (std::size_t j = 0; j < t; ++j) {
        const auto& u = universes[j];
        const std::uint64_t cap =
            std::min<std::uint64_t>(u.size(), 4);
        const std::uint64_t size = 1 + rand_below(rng, cap);
        // Partial Fisher-Yates draw of `size` distinct universe indices.
        std::vector<std::uint64_t> idx(u.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::vector<std::uint64_t> masks;
        for (std::uint64_t i = 0; i < size; ++i) {
          const std::uint64_t pick =
              i + rand_below(rng, static_cast<std::uint64_t>(u.size()) - i);
          std::swap(idx[i], idx[pick]);
          masks.push_back(u[idx[i]]);
        }
        cur.push_back(Family::from_masks(inst.n, inst.sizes[j],
                                         std::move(masks)));
      }
    }

    bool valid = is_cross_q_intersecting(cur, inst.q);
    bool dead = false;
    for (int sweep = 0; sweep < opts.max_sweeps && !dead; ++sweep) {
      bool changed = false;
      for (std::size_t j = 0; j < t && !dead; ++j) {
        std::vector<Family> others;
        for (std::size_t i = 0; i < t; ++i)
          if (i != j) others.push_back(cur[i]);
        Family repl = maximal_q_partner(others, inst.sizes[j], inst.q);
        ++out.candidates_examined;
        if (repl.empty()) {
          dead = true;
          break;
        }
        // Dominance: once the tuple is valid, each family is contained in
        // the maximal partner of the others, so replacement cannot shrink.
        if (valid && repl.size() < cur[j].size())
          throw std::logic_error(
              "maximal-partner replacement shrank a valid family");
        if (repl.masks() != cur[j].masks()) changed = true;
        cur[j] = std::move(repl);
      }
      valid = true;  // one full sweep re-derives every family
      if (!changed) break;
    }
    if (dead) continue;

    BigInt sum = 0;
    for (const Family& f : cur) sum += BigInt(f.size());
    if (sum > best) {
      best = sum;
      best_tuple = cur;
    }
  }

  out.best_found = best;
  out.witness = std::move(best_tuple);
  return finish_outcome(std::move(out), opts);
}

ConstructionValues construction_values(const ProblemInstance& inst) {
  inst.validate();
  ConstructionValues cv;
  cv.instance = inst;
  const int n = inst.n;
  const int kt = inst.sizes.back();
  const int q = inst.q;

  // r-branch pattern: A_1 = everything q-meeting [k_t]; the others are the
  // principal families over [k_t].
  {
    const std::uint64_t base = (std::uint64_t{1} << kt) - 1;
    std::vector<std::uint64_t> first;
    for (const std::uint64_t m : lex_universe(n, inst.sizes[0]))
      if (isect(m, base) >= q) first.push_back(m);
    cv.r_tuple.push_back(
        Family::from_masks(n, inst.sizes[0], std::move(first)));
    for (int i = 1; i < inst.t; ++i)
      cv.r_tuple.push_back(
          p_family(n, inst.sizes[static_cast<std::size_t>(i)], kt));
  }
  // 1-branch pattern: every family is the [q]-star.
  for (int i = 0; i < inst.t; ++i)
    cv.star_tuple.push_back(
        p_family(n, inst.sizes[static_cast<std::size_t>(i)], q));

  cv.r_valid = is_cross_q_intersecting(cv.r_tuple, q);
  cv.star_valid = is_cross_q_intersecting(cv.star_tuple, q);
  for (const Family& f : cv.r_tuple) {
    cv.r_valid = cv.r_valid && !f.empty();
    cv.r_sum += BigInt(f.size());
  }
  for (const Family& f : cv.star_tuple) {
    cv.star_valid = cv.star_valid && !f.empty();
    cv.star_sum += BigInt(f.size());
  }
  return cv;
}

}  // namespace crossint
