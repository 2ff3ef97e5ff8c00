#pragma once

#include <string>
#include <vector>

#include "crossint/arith.hpp"

namespace crossint {

// Parameters of the central two-branch bound: pairs A (k-sets), B (l-sets)
// over [1,n], cross-intersecting, with C(n-r, l-r) <= |B| <= C(n-1, l-1),
// maximizing |A| + c|B|.
struct TheoremParams {
  int n = 0;
  int k = 0;
  int l = 0;
  int r = 0;
  Rational c = 1;

  // Throws ValidationError unless n >= k+l, l >= r >= 1, k >= 1, c > 0.
  void validate() const;

  // The |B| window implied by the parameters.
  std::uint64_t window_lo() const;  // C(n-r, l-r)
  std::uint64_t window_hi() const;  // C(n-1, l-1)
};

// A bound of the form max over labelled branches of an exact value.
struct BoundReport {
  std::vector<std::pair<std::string, Rational>> branch_values;
  Rational max_value;
  std::vector<std::string> argmax_labels;
  bool tie = false;
  // For the central bound: which extremal configuration labels (i..v) are
  // admissible at these parameters. Empty for other bounds.
  std::vector<std::string> predicted_cases;

  static BoundReport from_branches(
      std::vector<std::pair<std::string, Rational>> branches);
};

// Largest intersecting k-family, n >= 2k: C(n-1, k-1).
BigInt ekr_bound(int n, int k);

// t >= 2 cross-intersecting k-families, n >= 2k: sum of sizes is at most
// max{C(n,k), t*C(n-1,k-1)} ("all-branch" vs "star-branch", tie at t = n/k).
BoundReport hilton_bound(int n, int k, int t);

// Non-empty cross-intersecting pair of k-families, n >= 2k:
// |A|+|B| <= C(n,k) - C(n-k,k) + 1.
BigInt hm_bound(int n, int k);

// The central bound: max{C(n,k) - C(n-r,k) + c*C(n-r,l-r),
//                        C(n-1,k-1) + c*C(n-1,l-1)}
// with branch labels "r-branch" and "1-branch" and predicted extremal cases.
BoundReport main_bound(const TheoremParams& p);

// t >= 2 non-empty pairwise cross-intersecting k-families, n >= 2k:
// sum <= max{C(n,k) - C(n-k,k) + t-1, t*C(n-1,k-1)};
// same branch labels as main_bound (it is the r=k=l, c=t-1 specialization).
BoundReport corollary_bound(int n, int k, int t);

// Non-empty cross-intersecting A (k-sets), B (l-sets), n >= k+l, k >= l:
// |A|+|B| <= C(n,k) - C(n-l,k) + 1.
BigInt ft_bound(int n, int k, int l);

// Largest intersecting k-family with empty common intersection, n > 2k:
// C(n-1,k-1) - C(n-k-1,k-1) + 1.
BigInt hm_stability_bound(int n, int k);

// Non-empty cross-q-intersecting pair of k-families, k > q >= 1, n > 2k-q:
// |A|+|B| <= C(n,k) - sum_{i<q} C(k,i) C(n-k,k-i) + 1.
BigInt fk_bound(int n, int k, int q);

// Non-empty cross-q-intersecting A (k-sets), B (l-sets) under
// n >= 4, k,l >= 2, q < min(k,l), n > k+l-q, (n,q) != (k+l,1),
// C(n,k) <= C(n,l):  |A|+|B| <= C(n,k) - sum_{i<q} C(k,i) C(n-k,l-i) + 1.
BigInt wz_bound(int n, int k, int l, int q);

// A conjectured-extremal instance for the open sum-maximization problems:
// t >= 2 pairwise cross-q-intersecting families, sizes k_1 >= ... >= k_t.
//   problem 1: q = 1, n >= k_1 + k_2
//   problem 2: all sizes equal, k > q >= 1, n > 2k - q
//   problem 3: k_t >= q >= 1, n > k_1 + k_2 - q   (search ops need k_t > q)
struct ProblemInstance {
  int problem_id = 0;  // 1, 2 or 3
  int n = 0;
  int t = 0;
  std::vector<int> sizes;
  int q = 1;

  void validate() const;
};

// The conjectured two-branch bound for the instance, labels "r-branch"
// (structure around [k_t]) and "1-branch" ([q]-stars).
BoundReport problem_bound(const ProblemInstance& inst);

}  // namespace crossint
