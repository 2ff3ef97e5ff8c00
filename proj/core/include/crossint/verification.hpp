#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crossint/bounds.hpp"
#include "crossint/family.hpp"

namespace crossint {

struct ScanOptions {
  // Override of the |B| size window (defaults to the theorem window).
  std::optional<std::pair<std::uint64_t, std::uint64_t>> window;
  // Drop candidates whose maximal partner is empty (the non-empty-pair
  // variants of the bounds).
  bool require_nonempty_partner = false;
  // Stored witnesses are a deterministic prefix of the full argmax set.
  std::size_t witness_cap = 64;
  int workers = 1;
  // Brute-force enumeration requires C(n,l) <= max_universe_bits.
  int max_universe_bits = 24;
  // Generic enumeration count budget (exceeding is an error, exit 3).
  std::uint64_t max_candidates = std::uint64_t{1} << 26;
};

struct WitnessPair {
  Family a;
  Family b;
  // Least s with P_s contained in b, 0 when no P_s fits.
  int minimal_s = 0;
};

struct ScanResult {
  TheoremParams params;
  std::string engine;  // "brute" or "l-initial"
  std::uint64_t window_lo = 0;
  std::uint64_t window_hi = 0;
  Rational observed_max;
  std::uint64_t witness_total = 0;
  std::vector<WitnessPair> witnesses;  // deterministic prefix, capped
  BoundReport bound;
  bool matched = false;  // observed_max == bound.max_value
  std::uint64_t candidates_examined = 0;
  double wall_seconds = 0.0;
  int workers = 1;
};

// Enumerates every B within the size window (all subsets of the l-universe),
// pairs it with its maximal partner, and maximizes |A| + c|B|.
ScanResult brute_force_max(const TheoremParams& p, const ScanOptions& = {});

// Same maximization restricted to L-initial B (one per window size).
ScanResult l_initial_scan(const TheoremParams& p, const ScanOptions& = {});

// Structural classification of an extremal pair against the equality cases
// of the central bound. case_label is one of "i".."v" or "none".
struct ExtremalClassification {
  std::string case_label = "none";
  std::optional<KSet> witness_r_set;  // R for case i, {x} for case ii
};

ExtremalClassification classify_extremal(const Family& a, const Family& b,
                                         const TheoremParams& p);

enum class VerifyMode { brute, scan, both };

struct MainVerification {
  TheoremParams params;
  BoundReport bound;
  std::optional<ScanResult> brute;
  std::optional<ScanResult> lscan;
  bool engines_agree = true;
  // Classification tallies over *all* argmax witnesses of the primary
  // engine (brute when it ran), not just the stored prefix.
  std::map<std::string, std::uint64_t> case_counts;
  std::uint64_t unclassified = 0;
  // Aligned with the primary engine's stored witnesses.
  std::vector<ExtremalClassification> witness_classifications;
  bool matched = false;

  const ScanResult& primary() const { return brute ? *brute : *lscan; }
  bool ok() const { return matched && engines_agree && unclassified == 0; }
};

// Runs the requested engines, checks the observed maximum against the
// bound, and classifies every argmax witness. Mismatches are reported in
// the result (never silently); callers decide the exit path.
MainVerification verify_main_theorem(const TheoremParams& p, VerifyMode mode,
                                     const ScanOptions& = {});

// The canonical-pair values |R_i| + c * |P_i| for i = 1..r; the scan
// maximum must equal their maximum for n > k + l.
std::vector<Rational> canonical_pair_values(const TheoremParams& p);

struct KkPreservationResult {
  int n = 0, k = 0, l = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t rejected_samples = 0;
  bool pass = false;
  // Pre-compression pair that broke cross-intersection, if any.
  std::optional<std::pair<Family, Family>> counterexample;
};

// Property check: compressing both members of a random cross-intersecting
// pair preserves cross-intersection. Deterministic for a fixed seed.
KkPreservationResult verify_kk_preservation(int n, int k, int l,
                                            std::uint64_t trials,
                                            std::uint64_t seed);

struct ShadowMinimumResult {
  int n = 0, k = 0, l = 0, r = 0;
  std::uint64_t families_checked = 0;
  BigInt min_shadow;      // min |D_k(B)| over all |B| = C(n-r, l-r)
  BigInt expected_min;    // C(n-r, k)
  std::uint64_t minimizer_count = 0;
  std::uint64_t expected_minimizers = 0;  // C(n, r)
  bool minimizers_all_principal = false;  // every minimizer is {B : R ⊆ B}
  bool pass = false;
};

// Exhaustive check that among l-families of size C(n-r, l-r) (n > k+l) the
// k-disjointness shadow is minimized exactly by the principal families.
ShadowMinimumResult verify_proposition_fm(int n, int k, int l, int r,
                                          const ScanOptions& = {});

struct BipartiteLemmaResult {
  int n = 0, k = 0, l = 0, s = 0;
  Rational c;
  std::size_t x_size = 0, y_size = 0;
  int x_degree = 0, y_degree = 0;
  bool biregular = false;
  bool connected = false;
  bool bound_holds = false;
  bool equality_only_full_sides = false;  // meaningful when connected
  Rational max_value;                     // max{|X|, c|Y|}
  std::uint64_t subsets_checked = 0;
  bool pass = false;
};

// Builds the link graph (X = (k-1)-subsets of [s+1,n], Y = (l-s+1)-subsets,
// edges between disjoint pairs) and verifies the weighted independent-set
// bound |P0| + c|Q0| <= max{|X|, c|Y|}, with equality only at a full side
// when the graph is connected. Budget: |X| + |Y| <= 26.
BipartiteLemmaResult verify_bipartite_lemma(int n, int k, int l, int s,
                                            const Rational& c,
                                            const ScanOptions& = {});

enum class CorollaryMode { exhaustive, construction };

struct CorollaryCheckResult {
  int n = 0, k = 0, t = 0;
  CorollaryMode mode = CorollaryMode::construction;
  BoundReport bound;
  BigInt observed;  // exhaustive: true max; construction: best valid sum
  // Construction mode details.
  BigInt r_sum, star_sum;
  bool constructions_valid = false;
  // Exhaustive mode witness (L-initial sizes m1 >= m2, families 2..t = B2).
  std::uint64_t best_m1 = 0, best_m2 = 0;
  bool pass = false;
};

// Verifies the t-family corollary bound. Exhaustive mode scans nested
// L-initial tuples (complete by compression + nesting); requires
// C(n,k) <= 16 and t <= 3. Construction mode instantiates both extremal
// patterns and checks they attain the winning branch.
CorollaryCheckResult verify_corollary(int n, int k, int t, CorollaryMode mode);

struct InequalityViolation {
  int inequality = 0;  // 12, 13 or 14
  int n = 0, k = 0, l = 0, i = 0;
};

struct InequalityScanReport {
  int max_n = 0;
  std::uint64_t cells_checked = 0;
  std::vector<InequalityViolation> violations;
  // Inequality 13 with k > l: equality exactly at n = k + l. Cells with
  // k = l have syntactically identical sides and are counted separately.
  bool eq13_locus_exact = false;
  std::uint64_t eq13_threshold_cells = 0;
  std::uint64_t eq13_degenerate_cells = 0;
  bool pass = false;
};

// Exact scan of the three binomial inequalities underlying the sum bounds,
// over all k >= l >= 1, k + l <= n <= max_n.
InequalityScanReport scan_inequalities(int max_n);

}  // namespace crossint
