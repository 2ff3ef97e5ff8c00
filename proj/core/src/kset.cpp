#include "crossint/kset.hpp"

#include <algorithm>
#include <bit>

#include "crossint/errors.hpp"

namespace crossint {

namespace {

void check_ground(int ground_n) {
  if (ground_n < 1 || ground_n > 64)
    throw ValidationError("KSet: ground_n must be in [1,64], got " +
                          std::to_string(ground_n));
}

}  // namespace

KSet::KSet(int ground_n, std::vector<int> elements) {
  check_ground(ground_n);
  std::sort(elements.begin(), elements.end());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const int e = elements[i];
    if (e < 1 || e > ground_n)
      throw ValidationError("KSet: element " + std::to_string(e) +
                            " outside [1," + std::to_string(ground_n) + "]");
    if (i > 0 && elements[i - 1] == e)
      throw ValidationError("KSet: duplicate element " + std::to_string(e));
  }
  ground_n_ = ground_n;
  elements_ = std::move(elements);
  mask_ = 0;
  for (int e : elements_) mask_ |= std::uint64_t{1} << (e - 1);
}

KSet KSet::from_mask(int ground_n, std::uint64_t mask) {
  check_ground(ground_n);
  if (ground_n < 64 && (mask >> ground_n) != 0)
    throw ValidationError("KSet: mask has bits outside the ground set");
  KSet s;
  s.ground_n_ = ground_n;
  s.mask_ = mask;
  s.elements_.reserve(static_cast<std::size_t>(std::popcount(mask)));
  for (std::uint64_t m = mask; m != 0; m &= m - 1)
    s.elements_.push_back(std::countr_zero(m) + 1);
  return s;
}

bool KSet::contains(int element) const noexcept {
  if (element < 1 || element > 64) return false;
  return (mask_ >> (element - 1)) & 1u;
}

bool KSet::disjoint_from(const KSet& other) const {
  if (ground_n_ != other.ground_n_)
    throw ValidationError("KSet: ground set mismatch in disjoint_from");
  return (mask_ & other.mask_) == 0;
}

KSet KSet::complement() const {
  const std::uint64_t full = (ground_n_ == 64)
                                 ? ~std::uint64_t{0}
                                 : ((std::uint64_t{1} << ground_n_) - 1);
  return from_mask(ground_n_, full & ~mask_);
}

std::string KSet::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(elements_[i]);
  }
  out += '}';
  return out;
}

bool lex_mask_less(std::uint64_t a, std::uint64_t b) noexcept {
  const std::uint64_t diff = a ^ b;
  if (diff == 0) return false;
  // The lowest differing element belongs to exactly one set; that set
  // is the lexicographically smaller one.
  return (a & (diff & (~diff + 1))) != 0;
}

Ordering lex_compare(const KSet& a, const KSet& b) {
  if (a.ground_n() != b.ground_n())
    throw ValidationError("lex_compare: ground set mismatch");
  if (a.size() != b.size())
    throw ValidationError("lex_compare: set size mismatch");
  if (a.mask() == b.mask()) return Ordering::equal;
  return lex_mask_less(a.mask(), b.mask()) ? Ordering::less : Ordering::greater;
}

std::uint64_t lex_rank(const KSet& set) {
  const int n = set.ground_n();
  const int k = set.size();
  // Combinatorial number system: count the k-subsets that precede `set`,
  // grouped by the first position where they diverge downward.
  std::uint64_t rank = 0;
  int prev = 0;
  for (int i = 1; i <= k; ++i) {
    const int a_i = set.elements()[static_cast<std::size_t>(i - 1)];
    for (int j = prev + 1; j < a_i; ++j) rank += binomial_u64(n - j, k - i);
    prev = a_i;
  }
  return rank;
}

KSet lex_unrank(int ground_n, int set_size, std::uint64_t rank) {
  check_ground(ground_n);
  if (set_size < 0 || set_size > ground_n)
    throw ValidationError("lex_unrank: set_size outside [0, ground_n]");
  if (rank >= binomial_u64(ground_n, set_size))
    throw ValidationError("lex_unrank: rank " + std::to_string(rank) +
                          " out of range for C(" + std::to_string(ground_n) +
                          "," + std::to_string(set_size) + ")");
  std::vector<int> elems;
  elems.reserve(static_cast<std::size_t>(set_size));
  int prev = 0;
  for (int i = 1; i <= set_size; ++i) {
    int j = prev + 1;
    for (;; ++j) {
      const std::uint64_t block = binomial_u64(ground_n - j, set_size - i);
      if (rank < block) break;
      rank -= block;
    }
    elems.push_back(j);
    prev = j;
  }
  return KSet(ground_n, std::move(elems));
}

}  // namespace crossint
