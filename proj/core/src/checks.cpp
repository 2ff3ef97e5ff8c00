#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "crossint/arith.hpp"
#include "crossint/errors.hpp"
#include "crossint/verification.hpp"

namespace crossint {

KkPreservationResult verify_kk_preservation(int n, int k, int l,
                                            std::uint64_t trials,
                                            std::uint64_t seed) {
  if (n < k + l || k < 1 || l < 1)
    throw ValidationError("verify_kk_preservation requires n >= k+l >= 2");
  KkPreservationResult res;
  res.n = n;
  res.k = k;
  res.l = l;
  res.trials = trials;
  res.seed = seed;
  res.pass = true;

  std::mt19937_64 rng(seed);
  const std::uint64_t attempt_limit = trials * 100 + 1000;
  std::uint64_t attempts = 0;
  for (std::uint64_t done = 0; done < trials; ++attempts) {
    if (attempts >= attempt_limit) {
      res.pass = false;  // generator starved, not a property failure
      return res;
    }
    auto pair = random_cross_intersecting_pair(n, k, l, rng);
    if (!pair) {
      ++res.rejected_samples;
      continue;
    }
    ++done;
    const Family ca = compress(pair->first);
    const Family cb = compress(pair->second);
    if (!is_cross_intersecting(ca, cb)) {
      res.pass = false;
      res.counterexample = std::move(*pair);
      return res;
    }
  }
  return res;
}

ShadowMinimumResult verify_proposition_fm(int n, int k, int l, int r,
                                          const ScanOptions& opts) {
  if (k < 1 || r < 1 || r > l)
    throw ValidationError("verify_proposition_fm requires l >= r >= 1, k >= 1");
  if (n <= k + l)
    throw ValidationError("verify_proposition_fm requires n > k+l");

  ShadowMinimumResult res;
  res.n = n;
  res.k = k;
  res.l = l;
  res.r = r;
  res.expected_min = binomial(n - r, k);
  res.expected_minimizers = binomial(n, r).convert_to<std::uint64_t>();

  const std::vector<std::uint64_t> lu = lex_universe(n, l);
  const std::vector<std::uint64_t> ku = lex_universe(n, k);
  const std::size_t U = lu.size();
  if (U > 62 || ku.size() > 64)
    throw BudgetExceeded("universe too large for subset masks");
  const BigInt msize_big = binomial(n - r, l - r);
  const auto M = msize_big.convert_to<std::uint64_t>();
  const BigInt count = binomial(static_cast<long>(U), static_cast<long>(M));
  if (count > BigInt(opts.max_candidates))
    throw BudgetExceeded("C(" + std::to_string(U) + "," + std::to_string(M) +
                         ") = " + count.str() +
                         " families exceed max_candidates");

  // dis[j]: k-sets disjoint from the j-th l-set; the union over a family's
  // members is exactly its k-disjointness shadow.
  std::vector<std::uint64_t> dis(U, 0);
  for (std::size_t j = 0; j < U; ++j)
    for (std::size_t v = 0; v < ku.size(); ++v)
      if ((lu[j] & ku[v]) == 0) dis[j] |= std::uint64_t{1} << v;

  const std::uint64_t total = count.convert_to<std::uint64_t>();
  int min_shadow = static_cast<int>(ku.size()) + 1;
  std::uint64_t minimizers = 0;
  bool all_principal = true;

  // Gosper's hack walks all size-M subset masks of the universe in
  // ascending numeric order.
  std::uint64_t S = (M == 0) ? 0 : (std::uint64_t{1} << M) - 1;
  for (std::uint64_t it = 0; it < total; ++it) {
    std::uint64_t shadow = 0;
    std::uint64_t core = ~std::uint64_t{0};
    for (std::uint64_t rest = S; rest != 0; rest &= rest - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(rest));
      shadow |= dis[j];
      core &= lu[j];
    }
    const int sh = std::popcount(shadow);
    if (sh < min_shadow) {
      min_shadow = sh;
      minimizers = 0;
      all_principal = true;
    }
    if (sh == min_shadow) {
      ++minimizers;
      // |B| = C(n-r, l-r) members sharing an r-core is exactly {B : R ⊆ B}.
      if (std::popcount(core) != r) all_principal = false;
    }
    if (it + 1 < total) {
      const std::uint64_t c = S & (~S + 1);
      const std::uint64_t rr = S + c;
      S = (((rr ^ S) >> 2) / c) | rr;
    }
  }

  res.families_checked = total;
  res.min_shadow = min_shadow;
  res.minimizer_count = minimizers;
  res.minimizers_all_principal = all_principal;
  res.pass = (BigInt(min_shadow) == res.expected_min) &&
             (minimizers == res.expected_minimizers) && all_principal;
  return res;
}

namespace {

std::vector<std::uint64_t> window_subsets(int n, int s, int size) {
  // size-subsets of [s+1, n] as masks over [1, n], lex order.
  if (size < 0) return {};
  if (size == 0) return {0};
  if (n - s < size) return {};
  std::vector<std::uint64_t> out = lex_universe(n - s, size);
  for (auto& m : out) m <<= s;
  return out;
}

}  // namespace

BipartiteLemmaResult verify_bipartite_lemma(int n, int k, int l, int s,
                                            const Rational& c,
                                            const ScanOptions& opts) {
  if (n < 1 || n > 64 || k < 1 || l < 1 || s < 1)
    throw ValidationError("verify_bipartite_lemma requires n,k,l,s >= 1");
  if (c <= 0) throw ValidationError("c must be positive");

  BipartiteLemmaResult res;
  res.n = n;
  res.k = k;
  res.l = l;
  res.s = s;
  res.c = c;

  const std::vector<std::uint64_t> xs = window_subsets(n, s, k - 1);
  const std::vector<std::uint64_t> ys = window_subsets(n, s, l - s + 1);
  res.x_size = xs.size();
  res.y_size = ys.size();
  if (xs.size() + ys.size() > 26)
    throw BudgetExceeded("|X| + |Y| = " +
                         std::to_string(xs.size() + ys.size()) +
                         " exceeds the 26-vertex enumeration budget");

  std::vector<std::uint64_t> adj_x(xs.size(), 0), adj_y(ys.size(), 0);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j)
      if ((xs[i] & ys[j]) == 0) {
        adj_x[i] |= std::uint64_t{1} << j;
        adj_y[j] |= std::uint64_t{1} << i;
      }

  res.x_degree = xs.empty() ? 0 : std::popcount(adj_x[0]);
  res.y_degree = ys.empty() ? 0 : std::popcount(adj_y[0]);
  res.biregular = true;
  for (const auto m : adj_x)
    if (std::popcount(m) != res.x_degree) res.biregular = false;
  for (const auto m : adj_y)
    if (std::popcount(m) != res.y_degree) res.biregular = false;

  // BFS over both sides; a graph with at most one vertex counts connected.
  {
    const std::size_t tot = xs.size() + ys.size();
    if (tot <= 1) {
      res.connected = true;
    } else if (xs.empty() || ys.empty()) {
      res.connected = false;  // two or more isolated vertices
    } else {
      std::vector<char> seen_x(xs.size(), 0), seen_y(ys.size(), 0);
      std::vector<std::pair<char, std::size_t>> queue{{0, 0}};
      seen_x[0] = 1;
      std::size_t reached = 1;
      while (!queue.empty()) {
        const auto [side, idx] = queue.back();
        queue.pop_back();
        const std::uint64_t nb = (side == 0) ? adj_x[idx] : adj_y[idx];
        for (std::uint64_t rest = nb; rest != 0; rest &= rest - 1) {
          const auto j = static_cast<std::size_t>(std::countr_zero(rest));
          auto& seen = (side == 0) ? seen_y : seen_x;
          if (!seen[j]) {
            seen[j] = 1;
            ++reached;
            queue.emplace_back(static_cast<char>(1 - side), j);
          }
        }
      }
      res.connected = (reached == tot);
    }
  }

  // Exact scaled comparison: values |P0|*den + num*|Q0| against
  // max{|X|*den, num*|Y|}.
  const BigInt num_big = boost::multiprecision::numerator(c);
  const BigInt den_big = boost::multiprecision::denominator(c);
  if (num_big > (BigInt(1) << 31) || den_big > (BigInt(1) << 31))
    throw ValidationError("c exceeds the scan-engine magnitude limit");
  const auto num = num_big.convert_to<std::int64_t>();
  const auto den = den_big.convert_to<std::int64_t>();
  const std::int64_t bound =
      std::max(static_cast<std::int64_t>(xs.size()) * den,
               num * static_cast<std::int64_t>(ys.size()));
  res.max_value = std::max(Rational(BigInt(xs.size())),
                           c * Rational(BigInt(ys.size())));

  bool bound_holds = true;
  bool equality_clean = true;
  // Enumerate the smaller side; the maximal completion on the other side
  // dominates every independent set with the same enumerated half, so
  // bound and equality structure are fully covered.
  const bool enumerate_x = xs.size() <= ys.size();
  const std::size_t esize = enumerate_x ? xs.size() : ys.size();
  const std::size_t osize = enumerate_x ? ys.size() : xs.size();
  const auto& adj = enumerate_x ? adj_x : adj_y;
  const std::uint64_t full_other =
      (osize == 0) ? 0 : (~std::uint64_t{0} >> (64 - osize));
  const std::uint64_t subsets = std::uint64_t{1} << esize;
  if (subsets > opts.max_candidates)
    throw BudgetExceeded("independent-set enumeration exceeds max_candidates");
  for (std::uint64_t S = 0; S < subsets; ++S) {
    std::uint64_t nb = 0;
    for (std::uint64_t rest = S; rest != 0; rest &= rest - 1)
      nb |= adj[static_cast<std::size_t>(std::countr_zero(rest))];
    const std::int64_t own = std::popcount(S);
    const std::int64_t other =
        static_cast<std::int64_t>(osize) - std::popcount(nb);
    const std::int64_t val = enumerate_x ? own * den + num * other
                                         : other * den + num * own;
    if (val > bound) bound_holds = false;
    if (val == bound) {
      const bool at_enum_side = (S + 1 == subsets) && (nb == full_other);
      const bool at_other_side = (S == 0);
      if (!at_enum_side && !at_other_side) equality_clean = false;
    }
  }
  res.subsets_checked = subsets;
  res.bound_holds = bound_holds;
  res.equality_only_full_sides = equality_clean;
  res.pass = res.biregular && bound_holds &&
             (n > k + l ? res.connected : true) &&
             (res.connected ? equality_clean : true);
  return res;
}

CorollaryCheckResult verify_corollary(int n, int k, int t,
                                      CorollaryMode mode) {
  CorollaryCheckResult res;
  res.n = n;
  res.k = k;
  res.t = t;
  res.mode = mode;
  res.bound = corollary_bound(n, k, t);  // validates n >= 2k, t >= 2

  if (mode == CorollaryMode::construction) {
    // r-branch pattern: one family of everything meeting [k] plus t-1
    // copies of the singleton {[k]}; 1-branch pattern: t stars over 1.
    std::vector<Family> rt{r_family(n, k, k)};
    for (int i = 1; i < t; ++i) rt.push_back(p_family(n, k, k));
    std::vector<Family> st;
    for (int i = 0; i < t; ++i) st.push_back(p_family(n, k, 1));

    bool valid = is_cross_intersecting(rt) && is_cross_intersecting(st);
    for (const auto& f : rt) valid = valid && !f.empty();
    for (const auto& f : st) valid = valid && !f.empty();
    res.constructions_valid = valid;
    for (const auto& f : rt) res.r_sum += BigInt(f.size());
    for (const auto& f : st) res.star_sum += BigInt(f.size());
    res.observed = std::max(res.r_sum, res.star_sum);
    res.pass = valid &&
               Rational(res.r_sum) == res.bound.branch_values[0].second &&
               Rational(res.star_sum) == res.bound.branch_values[1].second &&
               Rational(res.observed) == res.bound.max_value;
    return res;
  }

  const std::vector<std::uint64_t> u = lex_universe(n, k);
  const std::size_t U = u.size();
  if (U > 16 || t > 3)
    throw BudgetExceeded(
        "exhaustive corollary mode requires C(n,k) <= 16 and t <= 3");

  // Compression plus the proof's nesting argument reduce the search to
  // L-initial prefix tuples (m1, m2, ..., m2) with m1 >= m2 >= 1, where
  // for t >= 3 the common second prefix must itself be intersecting.
  std::vector<std::size_t> first_disjoint(U, U + 1);
  for (std::size_t i = 0; i < U; ++i)
    for (std::size_t j = 0; j < U; ++j)
      if ((u[i] & u[j]) == 0) {
        first_disjoint[i] = j;
        break;
      }
  // cross(m1, m2) <=> min over i < m1 of first_disjoint[i] >= m2.
  std::vector<std::size_t> pref_min(U + 1, U + 1);
  for (std::size_t m = 1; m <= U; ++m)
    pref_min[m] = std::min(pref_min[m - 1], first_disjoint[m - 1]);

  std::size_t self_max = U;  // largest intersecting prefix
  for (std::size_t m = 1; m <= U; ++m) {
    bool ok = true;
    for (std::size_t j = 0; j + 1 < m; ++j)
      if ((u[m - 1] & u[j]) == 0) ok = false;
    if (!ok) {
      self_max = m - 1;
      break;
    }
  }

  BigInt best = -1;
  std::uint64_t bm1 = 0, bm2 = 0;
  for (std::size_t m1 = 1; m1 <= U; ++m1)
    for (std::size_t m2 = 1; m2 <= m1; ++m2) {
      if (pref_min[m1] < m2) break;  // larger m2 only gets worse
      if (t >= 3 && m2 > self_max) break;
      const BigInt sum = BigInt(m1) + BigInt(t - 1) * BigInt(m2);
      if (sum > best) {
        best = sum;
        bm1 = m1;
        bm2 = m2;
      }
    }
  res.observed = best;
  res.best_m1 = bm1;
  res.best_m2 = bm2;
  res.pass = (best >= 0) && Rational(best) == res.bound.max_value;
  return res;
}

InequalityScanReport scan_inequalities(int max_n) {
  if (max_n < 2 || max_n > 60)
    throw ValidationError("scan_inequalities requires 2 <= max_n <= 60");
  InequalityScanReport rep;
  rep.max_n = max_n;
  bool eq13_exact = true;

  for (int l = 1; l <= max_n; ++l)
    for (int k = l; k <= max_n; ++k)
      for (int n = k + l; n <= max_n; ++n) {
        ++rep.cells_checked;
        // (12): C(n-1,k-1) + C(n-1,l-1) <= C(n,k) - C(n-l,k) + 1
        if (binomial(n - 1, k - 1) + binomial(n - 1, l - 1) >
            binomial(n, k) - binomial(n - l, k) + 1)
          rep.violations.push_back({12, n, k, l, 0});
        // (13): C(n,l) - C(n-k,l) <= C(n,k) - C(n-l,k),
        // equality exactly at n = k+l for k > l (identical sides at k = l).
        const BigInt lhs = binomial(n, l) - binomial(n - k, l);
        const BigInt rhs = binomial(n, k) - binomial(n - l, k);
        if (lhs > rhs) rep.violations.push_back({13, n, k, l, 0});
        if (k == l) {
          ++rep.eq13_degenerate_cells;
        } else if (n == k + l) {
          ++rep.eq13_threshold_cells;
          if (lhs != rhs) eq13_exact = false;
        } else if (lhs == rhs) {
          eq13_exact = false;
        }
        // (14): C(n-i, l+1-i) <= C(n-i, k-1) for 2 <= i <= l
        for (int i = 2; i <= l; ++i)
          if (binomial(n - i, l + 1 - i) > binomial(n - i, k - 1))
            rep.violations.push_back({14, n, k, l, i});
      }

  rep.eq13_locus_exact = eq13_exact;
  rep.pass = rep.violations.empty() && eq13_exact;
  return rep;
}

}  // namespace crossint
