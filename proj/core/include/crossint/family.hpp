#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "crossint/kset.hpp"

namespace crossint {

// A finite family of k-element subsets of [1, ground_n], all the same size.
// Members are stored as masks, sorted by lexicographic set order, unique.
class Family {
 public:
  Family(int ground_n, int set_size);  // empty family
  Family(int ground_n, int set_size, const std::vector<KSet>& members);
  static Family from_masks(int ground_n, int set_size,
                           std::vector<std::uint64_t> masks);

  int ground_n() const noexcept { return ground_n_; }
  int set_size() const noexcept { return set_size_; }
  std::size_t size() const noexcept { return masks_.size(); }
  bool empty() const noexcept { return masks_.empty(); }

  const std::vector<std::uint64_t>& masks() const noexcept { return masks_; }
  std::vector<KSet> members() const;

  bool contains(const KSet& set) const;
  bool contains_mask(std::uint64_t mask) const noexcept;

  // True iff the members are exactly the first size() sets in lex order.
  bool is_l_initial() const;

  friend bool operator==(const Family&, const Family&) = default;

 private:
  int ground_n_;
  int set_size_;
  std::vector<std::uint64_t> masks_;
};

// All k-subset masks of [1,n] in lexicographic order (the rank-r mask sits
// at index r). Throws when C(n,k) would not fit in memory sensibly.
std::vector<std::uint64_t> lex_universe(int n, int k);

// The first m sets of C([n],k) in lex order.
Family l_initial(int n, int k, std::uint64_t m);

// Replaces a family by the lex-initial family of the same size.
Family compress(const Family& f);

// Canonical families: all l-sets containing [1,i], and all k-sets meeting
// [1,i]. Sizes C(n-i, l-i) and C(n,k) - C(n-i,k).
Family p_family(int n, int l, int i);
Family r_family(int n, int k, int i);

// Every member of every family intersects every member of every other
// family (at least two families; pairwise, not within a family).
bool is_cross_intersecting(std::span<const Family> families);
bool is_cross_intersecting(const Family& a, const Family& b);

// Pairwise |A ∩ B| >= q across distinct families.
bool is_cross_q_intersecting(std::span<const Family> families, int q);
bool is_cross_q_intersecting(const Family& a, const Family& b, int q);

// All j-sets disjoint from at least one member of f.
// Requires ground_n >= set_size + j.
Family disjointness_shadow(const Family& f, int j);

// The largest k-family cross-intersecting with b: all k-sets meeting every
// member. Complement of the disjointness k-shadow. Requires n >= k + l.
Family maximal_partner(const Family& b, int k);

// The largest family of `set_size`-sets whose members q-intersect every
// member of every fixed family. No ground-size precondition: for q >= 2
// the interesting range sits below k + l.
Family maximal_q_partner(std::span<const Family> fixed, int set_size, int q);

struct MaximalPair {
  Family a;
  Family b;
  int rounds;  // alternation rounds until the fixed point
};

// Grows a cross-intersecting pair to a maximal pair by alternating
// maximal-partner steps. Inputs must be cross-intersecting; the result
// contains the inputs and is a fixed point (a = partner(b), b = partner(a)).
MaximalPair close_to_maximal_pair(const Family& a, const Family& b);

// Text serialization. One block per family:
//   family n=<n> k=<k> size=<m>
//   e1,e2,...,ek      (one member per line, ascending)
// Blank lines and lines starting with '#' are ignored.
void write_families(std::ostream& out, std::span<const Family> families);
std::string families_to_string(std::span<const Family> families);
std::vector<Family> read_families(std::istream& in);
std::vector<Family> families_from_string(const std::string& text);

// Uniform integer in [0, bound) from raw engine output (rejection sampling;
// portable across standard libraries, unlike std distributions).
std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t bound);

// Samples two random families (sizes uniform in [1, C(n,k)] resp.
// [1, C(n,l)]), then repeatedly deletes from the currently larger family a
// member disjoint from some member of the other until the pair is
// cross-intersecting. Returns nullopt when a side empties (caller retries).
// Reaches diverse non-maximal pairs, unlike partner-closure constructions.
std::optional<std::pair<Family, Family>> random_cross_intersecting_pair(
    int n, int k, int l, std::mt19937_64& rng);

}  // namespace crossint
