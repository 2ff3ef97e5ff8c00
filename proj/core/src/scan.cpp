#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crossint/arith.hpp"
#include "crossint/errors.hpp"
#include "crossint/verification.hpp"
#include "parallel.hpp"
#include "subset_engine.hpp"

namespace crossint {
namespace {

using detail::PairUniverse;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0)
        .count();
  }
};

// Exact maximization of |A| + c|B| over int64: values are compared in the
// scaled form |A|*den + num*|B| with c = num/den. Guarding num, den and the
// candidate counts keeps every product below 2^58.
struct ScaledC {
  std::int64_t num = 1, den = 1;
  std::int64_t value(std::uint64_t partner, std::uint64_t m) const {
    return static_cast<std::int64_t>(partner) * den +
           num * static_cast<std::int64_t>(m);
  }
};

ScaledC scaled_c(const Rational& c) {
  const BigInt num = boost::multiprecision::numerator(c);
  const BigInt den = boost::multiprecision::denominator(c);
  const BigInt cap = BigInt(1) << 31;
  if (num <= 0)
    throw ValidationError("c must be positive");
  if (num > cap || den > cap)
    throw ValidationError(
        "c numerator/denominator exceed the 2^31 scan-engine limit");
  return {num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>()};
}

std::pair<std::uint64_t, std::uint64_t> resolve_window(
    const TheoremParams& p, const ScanOptions& opts) {
  if (!opts.window) return {p.window_lo(), p.window_hi()};
  const auto [lo, hi] = *opts.window;
  const BigInt total = binomial(p.n, p.l);
  if (lo < 1 || hi < lo || BigInt(hi) > total)
    throw ValidationError("size window must satisfy 1 <= lo <= hi <= C(n,l)");
  return {lo, hi};
}

int minimal_prefix_s(const TheoremParams& p, std::uint64_t m) {
  // P_s is the lex prefix of size C(n-s, l-s), so P_s fits inside a larger
  // prefix exactly when its size does.
  for (int s = 1; s <= p.l; ++s)
    if (binomial(p.n - s, p.l - s) <= BigInt(m)) return s;
  return 0;
}

// Fast structural classification at n = k + l, where the maximal partner
// is always the complement of the complemented family and classification
// depends only on c and |B|.
std::string classify_balanced(const TheoremParams& p, std::uint64_t m) {
  const std::uint64_t wlo = p.window_lo();
  const std::uint64_t whi = p.window_hi();
  if (m < wlo || m > whi) return "none";
  if (p.c < 1) return m == wlo ? "iii" : "none";
  if (p.c == 1) return "iv";
  return m == whi ? "v" : "none";
}

struct CaseTally {
  std::map<std::string, std::uint64_t> counts;
  void add(const std::string& label) { ++counts[label]; }
  void merge(const CaseTally& other) {
    for (const auto& [k, v] : other.counts) counts[k] += v;
  }
};

struct BrutePass2 {
  std::uint64_t argmax_count = 0;
  std::vector<std::uint64_t> prefix;  // first witness masks, capped
  CaseTally tally;
};

ScanResult brute_scan_impl(const TheoremParams& p, const ScanOptions& opts,
                           CaseTally* tally_out) {
  p.validate();
  Timer timer;
  const auto [wlo, whi] = resolve_window(p, opts);
  const ScaledC sc = scaled_c(p.c);

  const PairUniverse u = detail::build_pair_universe(
      p.n, p.k, p.l, 1, static_cast<std::size_t>(opts.max_universe_bits));
  const int ubits = static_cast<int>(u.lu.size());
  const std::uint64_t total = std::uint64_t{1} << ubits;
  if (total > opts.max_candidates)
    throw BudgetExceeded("2^" + std::to_string(ubits) +
                         " subsets exceed max_candidates");

  const bool balanced = (p.n == p.k + p.l);

  struct Pass1 {
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    std::uint64_t examined = 0;
  };
  const Pass1 first = detail::chunked_reduce<Pass1>(
      total, opts.workers,
      [&](std::uint64_t lo, std::uint64_t hi) {
        Pass1 part;
        for (std::uint64_t S = lo; S < hi; ++S) {
          const auto m = static_cast<std::uint64_t>(std::popcount(S));
          if (m < wlo || m > whi) continue;
          ++part.examined;
          const std::uint32_t pc = detail::partner_count(u, S);
          if (opts.require_nonempty_partner && pc == 0) continue;
          part.best = std::max(part.best, sc.value(pc, m));
        }
        return part;
      },
      [](Pass1& acc, Pass1&& next) {
        acc.best = std::max(acc.best, next.best);
        acc.examined += next.examined;
      });
  if (first.best == std::numeric_limits<std::int64_t>::min())
    throw ValidationError("empty candidate window");

  const std::int64_t best = first.best;
  const BrutePass2 collected = detail::chunked_reduce<BrutePass2>(
      total, opts.workers,
      [&](std::uint64_t lo, std::uint64_t hi) {
        BrutePass2 part;
        for (std::uint64_t S = lo; S < hi; ++S) {
          const auto m = static_cast<std::uint64_t>(std::popcount(S));
          if (m < wlo || m > whi) continue;
          const std::uint32_t pc = detail::partner_count(u, S);
          if (opts.require_nonempty_partner && pc == 0) continue;
          if (sc.value(pc, m) != best) continue;
          ++part.argmax_count;
          if (part.prefix.size() < opts.witness_cap) part.prefix.push_back(S);
          if (tally_out) {
            if (balanced) {
              part.tally.add(classify_balanced(p, m));
            } else {
              const Family b = detail::family_from_subset_mask(u, S);
              const Family a =
                  Family::from_masks(p.n, p.k, detail::partner_masks(u, S));
              part.tally.add(classify_extremal(a, b, p).case_label);
            }
          }
        }
        return part;
      },
      [&](BrutePass2& acc, BrutePass2&& next) {
        acc.argmax_count += next.argmax_count;
        for (std::uint64_t S : next.prefix)
          if (acc.prefix.size() < opts.witness_cap) acc.prefix.push_back(S);
        acc.tally.merge(next.tally);
      });
  if (tally_out) *tally_out = collected.tally;

  ScanResult res;
  res.params = p;
  res.engine = "brute";
  res.window_lo = wlo;
  res.window_hi = whi;
  res.observed_max = Rational(BigInt(best), BigInt(sc.den));
  res.witness_total = collected.argmax_count;
  for (std::uint64_t S : collected.prefix) {
    WitnessPair w{Family::from_masks(p.n, p.k, detail::partner_masks(u, S)),
                  detail::family_from_subset_mask(u, S), 0};
    w.minimal_s =
        minimal_prefix_s(p, static_cast<std::uint64_t>(w.b.size()));
    res.witnesses.push_back(std::move(w));
  }
  res.bound = main_bound(p);
  res.matched = (res.observed_max == res.bound.max_value);
  res.candidates_examined = first.examined;
  res.wall_seconds = timer.seconds();
  res.workers = std::max(1, opts.workers);
  return res;
}

}  // namespace

ScanResult brute_force_max(const TheoremParams& p, const ScanOptions& opts) {
  return brute_scan_impl(p, opts, nullptr);
}

ScanResult l_initial_scan(const TheoremParams& p, const ScanOptions& opts) {
  p.validate();
  Timer timer;
  const auto [wlo, whi] = resolve_window(p, opts);
  const ScaledC sc = scaled_c(p.c);

  const BigInt k_count = binomial(p.n, p.k);
  if (k_count > BigInt(opts.max_candidates) ||
      BigInt(whi) > BigInt(opts.max_candidates))
    throw BudgetExceeded("l_initial_scan: C(n,k) or the window exceeds "
                         "max_candidates");

  // The first whi sets of size l in lex order; prefix(m) is the unique
  // L-initial candidate of size m.
  std::vector<std::uint64_t> prefix;
  prefix.reserve(static_cast<std::size_t>(whi));
  for (std::uint64_t rank = 0; rank < whi; ++rank)
    prefix.push_back(lex_unrank(p.n, p.l, rank).mask());

  std::vector<std::uint64_t> alive = lex_universe(p.n, p.k);
  auto filter_alive = [&alive](std::uint64_t member) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < alive.size(); ++i)
      if ((alive[i] & member) != 0) alive[out++] = alive[i];
    alive.resize(out);
  };
  for (std::uint64_t j = 0; j < wlo; ++j)
    filter_alive(prefix[static_cast<std::size_t>(j)]);

  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  std::uint64_t argmax_count = 0;
  std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> stored;
  std::uint64_t examined = 0;

  // Two passes folded into one: track the running best and keep snapshots
  // for every candidate matching it; ties discovered later flush earlier
  // snapshots (the best value only improves).
  for (std::uint64_t m = wlo; m <= whi; ++m) {
    ++examined;
    const bool eligible = !(opts.require_nonempty_partner && alive.empty());
    if (eligible) {
      const std::int64_t val = sc.value(alive.size(), m);
      if (val > best) {
        best = val;
        argmax_count = 0;
        stored.clear();
      }
      if (val == best) {
        ++argmax_count;
        if (stored.size() < opts.witness_cap) stored.emplace_back(m, alive);
      }
    }
    if (m < whi) filter_alive(prefix[static_cast<std::size_t>(m)]);
  }
  if (best == std::numeric_limits<std::int64_t>::min())
    throw ValidationError("empty candidate window");

  ScanResult res;
  res.params = p;
  res.engine = "l-initial";
  res.window_lo = wlo;
  res.window_hi = whi;
  res.observed_max = Rational(BigInt(best), BigInt(sc.den));
  res.witness_total = argmax_count;
  for (auto& [m, partner] : stored) {
    WitnessPair w{
        Family::from_masks(p.n, p.k, std::move(partner)),
        Family::from_masks(
            p.n, p.l,
            std::vector<std::uint64_t>(
                prefix.begin(),
                prefix.begin() + static_cast<std::ptrdiff_t>(m))),
        0};
    w.minimal_s = minimal_prefix_s(p, m);
    res.witnesses.push_back(std::move(w));
  }
  res.bound = main_bound(p);
  res.matched = (res.observed_max == res.bound.max_value);
  res.candidates_examined = examined;
  res.wall_seconds = timer.seconds();
  res.workers = 1;  // the window walk is inherently sequential
  return res;
}

std::vector<Rational> canonical_pair_values(const TheoremParams& p) {
  p.validate();
  std::vector<Rational> vals;
  vals.reserve(static_cast<std::size_t>(p.r));
  for (int i = 1; i <= p.r; ++i)
    vals.push_back(Rational(binomial(p.n, p.k) - binomial(p.n - i, p.k)) +
                   p.c * Rational(binomial(p.n - i, p.l - i)));
  return vals;
}

ExtremalClassification classify_extremal(const Family& a, const Family& b,
                                         const TheoremParams& p) {
  p.validate();
  if (b.ground_n() != p.n || b.set_size() != p.l)
    throw ValidationError("classify_extremal: b is not an l-family on [n]");
  if (a.size() > 0 && (a.ground_n() != p.n || a.set_size() != p.k))
    throw ValidationError("classify_extremal: a is not a k-family on [n]");
  if (!is_cross_q_intersecting(a, b, 1))
    throw ValidationError("classify_extremal: pair is not cross-intersecting");

  ExtremalClassification out;
  const BigInt bsize = BigInt(b.size());
  if (bsize < p.window_lo() || bsize > p.window_hi())
    throw ValidationError("classify_extremal: |b| outside the size window");
  if (b.size() == 0) return out;

  const auto& bm = b.masks();
  const auto& am = a.masks();

  if (p.n > p.k + p.l) {
    const BoundReport rep = main_bound(p);
    const Rational rb = rep.branch_values[0].second;
    const Rational ob = rep.branch_values[1].second;

    // Case (i): b is the principal family over some r-set R and a is the
    // full family of k-sets meeting R. On a tie with the star branch a
    // star pair also matches here with r = 1; the first structural match
    // wins, and the case tally records which forms actually occur.
    std::uint64_t core = bm[0];
    for (std::uint64_t m : bm) core &= m;
    if (rb >= ob && std::popcount(core) == p.r &&
        BigInt(b.size()) == binomial(p.n - p.r, p.l - p.r) &&
        BigInt(a.size()) == binomial(p.n, p.k) - binomial(p.n - p.r, p.k)) {
      bool all_meet = true;
      for (std::uint64_t m : am)
        if ((m & core) == 0) {
          all_meet = false;
          break;
        }
      if (all_meet) {
        out.case_label = "i";
        out.witness_r_set = KSet::from_mask(p.n, core);
        return out;
      }
    }

    // Case (ii): both families are full stars over a common element.
    if (rb <= ob && !am.empty()) {
      std::uint64_t acore = am[0];
      for (std::uint64_t m : am) acore &= m;
      const std::uint64_t common = acore & core;
      if (common != 0 &&
          BigInt(a.size()) == binomial(p.n - 1, p.k - 1) &&
          BigInt(b.size()) == binomial(p.n - 1, p.l - 1)) {
        const int x = std::countr_zero(common) + 1;
        out.case_label = "ii";
        out.witness_r_set = KSet(p.n, {x});
        return out;
      }
    }
    return out;
  }

  // n = k + l: the extremal pairs are exactly a = C([n],k) minus the
  // complements of b, with |b| pinned by c (cases iii/iv/v).
  if (BigInt(a.size()) != binomial(p.n, p.k) - BigInt(b.size())) return out;
  const std::uint64_t full = (p.n == 64) ? ~std::uint64_t{0}
                                         : ((std::uint64_t{1} << p.n) - 1);
  for (std::uint64_t m : bm) {
    const std::uint64_t comp = full & ~m;
    if (a.contains_mask(comp)) return out;
  }
  out.case_label = classify_balanced(p, static_cast<std::uint64_t>(b.size()));
  return out;
}

MainVerification verify_main_theorem(const TheoremParams& p, VerifyMode mode,
                                     const ScanOptions& opts) {
  p.validate();
  MainVerification v;
  v.params = p;
  v.bound = main_bound(p);

  CaseTally tally;
  const bool want_brute = (mode != VerifyMode::scan);
  const bool want_scan = (mode != VerifyMode::brute);
  if (want_brute) v.brute = brute_scan_impl(p, opts, &tally);
  if (want_scan) v.lscan = l_initial_scan(p, opts);

  if (v.brute && v.lscan)
    v.engines_agree = (v.brute->observed_max == v.lscan->observed_max);

  const ScanResult& primary = v.primary();
  v.matched = primary.matched;

  // Classify the stored witnesses with the structural classifier; for the
  // brute engine this doubles as a spot-check of the streamed tally.
  for (const WitnessPair& w : primary.witnesses)
    v.witness_classifications.push_back(classify_extremal(w.a, w.b, p));

  if (want_brute) {
    v.case_counts = tally.counts;
    if (p.n == p.k + p.l) {
      for (std::size_t i = 0; i < primary.witnesses.size(); ++i) {
        const std::string fast = classify_balanced(
            p, static_cast<std::uint64_t>(primary.witnesses[i].b.size()));
        if (fast != v.witness_classifications[i].case_label)
          throw std::logic_error(
              "engine classification disagrees with the structural "
              "classifier");
      }
    }
  } else {
    for (const auto& cls : v.witness_classifications)
      ++v.case_counts[cls.case_label];
  }
  if (const auto it = v.case_counts.find("none");
      it != v.case_counts.end()) {
    v.unclassified = it->second;
    v.case_counts.erase(it);
  }
  return v;
}

}  // namespace crossint
