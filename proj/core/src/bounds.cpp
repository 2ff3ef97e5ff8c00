#include "crossint/bounds.hpp"

#include <algorithm>

#include "crossint/errors.hpp"

namespace crossint {

void TheoremParams::validate() const {
  if (n < 1 || k < 1 || l < 1 || r < 1)
    throw ValidationError("params: n, k, l, r must be positive");
  if (c <= 0) throw ValidationError("params: c must be positive");
  if (n < k + l) throw ValidationError("params: need n >= k + l");
  if (r > l) throw ValidationError("params: need r <= l");
  if (n > 64) throw ValidationError("params: n > 64 not supported");
}

std::uint64_t TheoremParams::window_lo() const {
  return binomial_u64(n - r, l - r);
}

std::uint64_t TheoremParams::window_hi() const {
  return binomial_u64(n - 1, l - 1);
}

BoundReport BoundReport::from_branches(
    std::vector<std::pair<std::string, Rational>> branches) {
  if (branches.empty())
    throw ValidationError("BoundReport: no branches");
  BoundReport rep;
  rep.branch_values = std::move(branches);
  rep.max_value = rep.branch_values[0].second;
  for (const auto& [label, value] : rep.branch_values)
    if (value > rep.max_value) rep.max_value = value;
  for (const auto& [label, value] : rep.branch_values)
    if (value == rep.max_value) rep.argmax_labels.push_back(label);
  rep.tie = rep.argmax_labels.size() > 1;
  return rep;
}

BigInt ekr_bound(int n, int k) {
  if (k < 1) throw ValidationError("ekr_bound: need k >= 1");
  if (n < 2 * k) throw ValidationError("ekr_bound: need n >= 2k");
  return binomial(n - 1, k - 1);
}

BoundReport hilton_bound(int n, int k, int t) {
  if (k < 1) throw ValidationError("hilton_bound: need k >= 1");
  if (n < 2 * k) throw ValidationError("hilton_bound: need n >= 2k");
  if (t < 2) throw ValidationError("hilton_bound: need t >= 2");
  return BoundReport::from_branches(
      {{"all-branch", Rational(binomial(n, k))},
       {"star-branch", Rational(t * binomial(n - 1, k - 1))}});
}

BigInt hm_bound(int n, int k) {
  if (k < 1) throw ValidationError("hm_bound: need k >= 1");
  if (n < 2 * k) throw ValidationError("hm_bound: need n >= 2k");
  return binomial(n, k) - binomial(n - k, k) + 1;
}

BoundReport main_bound(const TheoremParams& p) {
  p.validate();
  const Rational r_branch = Rational(binomial(p.n, p.k) -
                                     binomial(p.n - p.r, p.k)) +
                            p.c * Rational(binomial(p.n - p.r, p.l - p.r));
  const Rational one_branch = Rational(binomial(p.n - 1, p.k - 1)) +
                              p.c * Rational(binomial(p.n - 1, p.l - 1));
  BoundReport rep = BoundReport::from_branches(
      {{"r-branch", r_branch}, {"1-branch", one_branch}});
  if (p.n > p.k + p.l) {
    if (r_branch > one_branch)
      rep.predicted_cases = {"i"};
    else if (r_branch < one_branch)
      rep.predicted_cases = {"ii"};
    else
      rep.predicted_cases = {"i", "ii"};
  } else {
    if (p.c < 1)
      rep.predicted_cases = {"iii"};
    else if (p.c == 1)
      rep.predicted_cases = {"iv"};
    else
      rep.predicted_cases = {"v"};
  }
  return rep;
}

BoundReport corollary_bound(int n, int k, int t) {
  if (k < 1) throw ValidationError("corollary_bound: need k >= 1");
  if (n < 2 * k) throw ValidationError("corollary_bound: need n >= 2k");
  if (t < 2) throw ValidationError("corollary_bound: need t >= 2");
  return BoundReport::from_branches(
      {{"r-branch", Rational(binomial(n, k) - binomial(n - k, k) + (t - 1))},
       {"1-branch", Rational(t * binomial(n - 1, k - 1))}});
}

BigInt ft_bound(int n, int k, int l) {
  if (l < 1) throw ValidationError("ft_bound: need l >= 1");
  if (k < l) throw ValidationError("ft_bound: need k >= l");
  if (n < k + l) throw ValidationError("ft_bound: need n >= k + l");
  return binomial(n, k) - binomial(n - l, k) + 1;
}

BigInt hm_stability_bound(int n, int k) {
  if (k < 2) throw ValidationError("hm_stability_bound: need k >= 2");
  if (n <= 2 * k) throw ValidationError("hm_stability_bound: need n > 2k");
  return binomial(n - 1, k - 1) - binomial(n - k - 1, k - 1) + 1;
}

BigInt fk_bound(int n, int k, int q) {
  if (q < 1) throw ValidationError("fk_bound: need q >= 1");
  if (k <= q) throw ValidationError("fk_bound: need k > q");
  if (n <= 2 * k - q) throw ValidationError("fk_bound: need n > 2k - q");
  BigInt missing = 0;
  for (int i = 0; i < q; ++i)
    missing += binomial(k, i) * binomial(n - k, k - i);
  return binomial(n, k) - missing + 1;
}

BigInt wz_bound(int n, int k, int l, int q) {
  if (n < 4) throw ValidationError("wz_bound: need n >= 4");
  if (k < 2 || l < 2) throw ValidationError("wz_bound: need k, l >= 2");
  if (q < 1 || q >= std::min(k, l))
    throw ValidationError("wz_bound: need 1 <= q < min(k, l)");
  if (n <= k + l - q) throw ValidationError("wz_bound: need n > k + l - q");
  if (n == k + l && q == 1)
    throw ValidationError("wz_bound: (n, q) = (k + l, 1) excluded");
  if (binomial(n, k) > binomial(n, l))
    throw ValidationError("wz_bound: need C(n,k) <= C(n,l)");
  BigInt missing = 0;
  for (int i = 0; i < q; ++i)
    missing += binomial(k, i) * binomial(n - k, l - i);
  return binomial(n, k) - missing + 1;
}

void ProblemInstance::validate() const {
  if (problem_id < 1 || problem_id > 3)
    throw ValidationError("problem: id must be 1, 2 or 3");
  if (t < 2) throw ValidationError("problem: need t >= 2");
  if (static_cast<int>(sizes.size()) != t)
    throw ValidationError("problem: need exactly t sizes");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw ValidationError("problem: sizes must be >= 1");
    if (i > 0 && sizes[i] > sizes[i - 1])
      throw ValidationError("problem: sizes must be non-increasing");
  }
  const int k1 = sizes.front();
  const int k2 = sizes[1];
  const int kt = sizes.back();
  switch (problem_id) {
    case 1:
      if (q != 1) throw ValidationError("problem 1: q must be 1");
      if (n < k1 + k2) throw ValidationError("problem 1: need n >= k_1 + k_2");
      break;
    case 2:
      if (kt != k1)
        throw ValidationError("problem 2: all sizes must be equal");
      if (q < 1 || q >= k1)
        throw ValidationError("problem 2: need 1 <= q < k");
      if (n <= 2 * k1 - q)
        throw ValidationError("problem 2: need n > 2k - q");
      break;
    case 3:
      // The bound evaluator accepts q = k_t (branches coincide there);
      // search operations require the strict q < k_t separately.
      if (q < 1 || q > kt)
        throw ValidationError("problem 3: need 1 <= q <= k_t");
      if (n <= k1 + k2 - q)
        throw ValidationError("problem 3: need n > k_1 + k_2 - q");
      break;
    default:
      break;
  }
  if (n > 64) throw ValidationError("problem: n > 64 not supported");
}

BoundReport problem_bound(const ProblemInstance& inst) {
  inst.validate();
  const int n = inst.n;
  const int kt = inst.sizes.back();
  // All three problems share one two-branch shape; problems 1 and 2 are the
  // q = 1 and equal-size specializations of the general formula.
  BigInt r_branch = binomial(n, inst.sizes[0]);
  for (int i = 0; i < inst.q; ++i)
    r_branch -= binomial(kt, i) * binomial(n - kt, inst.sizes[0] - i);
  for (int j = 1; j < inst.t; ++j)
    r_branch += binomial(n - kt, inst.sizes[static_cast<std::size_t>(j)] - kt);
  BigInt one_branch = 0;
  for (int j = 0; j < inst.t; ++j)
    one_branch += binomial(n - inst.q,
                           inst.sizes[static_cast<std::size_t>(j)] - inst.q);
  return BoundReport::from_branches(
      {{"r-branch", Rational(r_branch)}, {"1-branch", Rational(one_branch)}});
}

}  // namespace crossint
