#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crossint/arith.hpp"

namespace crossint {

enum class Ordering { less, equal, greater };

// A k-element subset of the ground set [1, ground_n]. Elements are kept
// sorted ascending; a 64-bit membership mask (bit e-1 <=> element e) is
// carried as derived data, which caps ground_n at 64. That is far above
// every enumeration scale in this toolkit.
class KSet {
 public:
  KSet(int ground_n, std::vector<int> elements);
  static KSet from_mask(int ground_n, std::uint64_t mask);

  int ground_n() const noexcept { return ground_n_; }
  int size() const noexcept { return static_cast<int>(elements_.size()); }
  const std::vector<int>& elements() const noexcept { return elements_; }
  std::uint64_t mask() const noexcept { return mask_; }

  bool contains(int element) const noexcept;
  // Same ground set required; throws ValidationError otherwise.
  bool disjoint_from(const KSet& other) const;

  // Complement within the ground set.
  KSet complement() const;

  std::string str() const;  // "{1,3,5}"

  friend bool operator==(const KSet& a, const KSet& b) noexcept {
    return a.ground_n_ == b.ground_n_ && a.mask_ == b.mask_;
  }

 private:
  KSet() = default;
  int ground_n_ = 0;
  std::vector<int> elements_;
  std::uint64_t mask_ = 0;
};

// Lexicographic set order: A < B iff min(A \ B) < min(B \ A).
// Requires equal sizes and ground sets.
Ordering lex_compare(const KSet& a, const KSet& b);

// Mask form of the same order, usable on any two distinct masks:
// the lowest differing element decides. Strict less-than.
bool lex_mask_less(std::uint64_t a, std::uint64_t b) noexcept;

// Position of the set among all size()-subsets of its ground set in
// lexicographic order, counting from 0. Closed form via the combinatorial
// number system; inverse below.
std::uint64_t lex_rank(const KSet& set);
KSet lex_unrank(int ground_n, int set_size, std::uint64_t rank);

}  // namespace crossint
