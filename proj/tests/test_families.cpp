#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cstdint>
#include <random>
#include <sstream>
#include <vector>

#include "crossint/arith.hpp"
#include "crossint/errors.hpp"
#include "crossint/family.hpp"
#include "crossint/kset.hpp"

using namespace crossint;

namespace {

Family fam(int n, int k, const std::vector<std::vector<int>>& sets) {
  std::vector<KSet> members;
  members.reserve(sets.size());
  for (const auto& s : sets) members.emplace_back(n, s);
  return Family(n, k, members);
}

// Oracle: j-sets disjoint from at least one member, by direct scan.
Family shadow_oracle(const Family& f, int j) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m : lex_universe(f.ground_n(), j)) {
    bool disjoint = false;
    for (std::uint64_t b : f.masks())
      if ((m & b) == 0) {
        disjoint = true;
        break;
      }
    if (disjoint) out.push_back(m);
  }
  return Family::from_masks(f.ground_n(), j, out);
}

}  // namespace

TEST_CASE("Family: uniformity, dedup rejection, lookups") {
  const Family f = fam(5, 2, {{1, 2}, {1, 3}});
  CHECK(f.size() == 2);
  CHECK(f.contains(KSet(5, {1, 3})));
  CHECK_FALSE(f.contains(KSet(5, {2, 3})));
  CHECK(f.contains_mask(KSet(5, {1, 2}).mask()));
  CHECK_THROWS_AS(fam(5, 2, {{1, 2}, {1, 2, 3}}), ValidationError);
  CHECK_THROWS_AS(fam(5, 2, {{1, 2}, {1, 2}}), ValidationError);
  CHECK(Family(5, 2).empty());
}

TEST_CASE("lex_universe is the full lex-ordered list") {
  const auto u = lex_universe(5, 2);
  REQUIRE(u.size() == 10);
  for (std::size_t r = 0; r < u.size(); ++r)
    CHECK(u[r] == lex_unrank(5, 2, r).mask());
}

TEST_CASE("cross-intersection predicates: frozen examples") {
  CHECK(is_cross_intersecting(fam(4, 2, {{1, 2}}), fam(4, 2, {{1, 3}})));
  CHECK_FALSE(
      is_cross_intersecting(fam(4, 2, {{1, 2}}), fam(4, 2, {{3, 4}})));
  CHECK(is_cross_intersecting(p_family(5, 3, 2), r_family(5, 2, 2)));

  CHECK(is_cross_q_intersecting(fam(6, 3, {{1, 2, 3}}),
                                fam(6, 3, {{1, 2, 3}}), 3));
  CHECK_FALSE(is_cross_q_intersecting(fam(6, 3, {{1, 2, 3}}),
                                      fam(6, 3, {{1, 4, 5}}), 2));
  CHECK(is_cross_q_intersecting(fam(6, 3, {{1, 2, 3}, {1, 2, 4}}),
                                fam(6, 3, {{1, 2, 5}, {1, 2, 6}}), 2));

  // Within-family members never constrain each other.
  const std::vector<Family> three = {fam(6, 2, {{1, 2}, {3, 4}}),
                                     fam(6, 2, {{1, 3}, {1, 4}, {2, 3}}),
                                     fam(6, 2, {{1, 3}})};
  CHECK(is_cross_intersecting(three));
  const std::vector<Family> broken = {fam(6, 2, {{1, 2}, {3, 4}}),
                                      fam(6, 2, {{1, 3}}),
                                      fam(6, 2, {{1, 2}})};
  CHECK_FALSE(is_cross_intersecting(broken));
  CHECK_THROWS_AS(
      is_cross_intersecting(fam(4, 2, {{1, 2}}), fam(5, 2, {{1, 2}})),
      ValidationError);
}

TEST_CASE("canonical families: frozen examples and cardinalities") {
  CHECK(p_family(4, 2, 1) == fam(4, 2, {{1, 2}, {1, 3}, {1, 4}}));
  CHECK(p_family(4, 2, 2) == fam(4, 2, {{1, 2}}));
  CHECK(p_family(6, 3, 2).size() == 4);
  CHECK(r_family(4, 2, 1) == p_family(4, 2, 1));
  CHECK(r_family(4, 2, 4).size() == 6);
  CHECK(r_family(5, 2, 2).size() == 7);
  CHECK_THROWS_AS(p_family(4, 2, 3), ValidationError);
  CHECK_THROWS_AS(r_family(4, 5, 1), ValidationError);

  for (int n = 4; n <= 10; ++n)
    for (int l = 2; l <= n / 2; ++l)
      for (int i = 1; i <= l; ++i) {
        CHECK(BigInt(p_family(n, l, i).size()) == binomial(n - i, l - i));
        CHECK(BigInt(r_family(n, l, i).size()) ==
              binomial(n, l) - binomial(n - i, l));
        CHECK(p_family(n, l, i).is_l_initial());
        CHECK(r_family(n, l, i).is_l_initial());
      }
}

TEST_CASE("l_initial and compress: frozen examples") {
  CHECK(l_initial(4, 2, 0).empty());
  CHECK(l_initial(4, 2, 3) == p_family(4, 2, 1));
  CHECK(l_initial(5, 3, 6) == p_family(5, 3, 1));
  CHECK_THROWS_AS(l_initial(4, 2, 7), ValidationError);

  CHECK(compress(fam(4, 2, {{2, 3}, {3, 4}})) ==
        fam(4, 2, {{1, 2}, {1, 3}}));
  CHECK(compress(p_family(4, 2, 1)) == p_family(4, 2, 1));
  const Family full = l_initial(4, 2, 6);
  CHECK(compress(full) == full);
  // Idempotence on arbitrary families.
  const Family g = fam(6, 3, {{2, 4, 6}, {1, 3, 5}, {4, 5, 6}});
  CHECK(compress(compress(g)) == compress(g));
  CHECK(compress(g).is_l_initial());
}

TEST_CASE("disjointness shadow: frozen examples and oracle sweep") {
  CHECK(disjointness_shadow(fam(4, 2, {{1, 2}}), 2) == fam(4, 2, {{3, 4}}));
  const Family d = disjointness_shadow(p_family(6, 3, 2), 2);
  CHECK(d.size() == 6);
  for (const KSet& s : d.members())
    CHECK((s.mask() & 0b11) == 0);  // avoids [2]
  CHECK(disjointness_shadow(Family(6, 3), 2).empty());
  CHECK_THROWS_AS(disjointness_shadow(fam(4, 2, {{1, 2}}), 3),
                  ValidationError);

  std::mt19937_64 rng(11);
  for (int round = 0; round < 40; ++round) {
    const int n = 4 + static_cast<int>(rand_below(rng, 4));
    const int k = 1 + static_cast<int>(rand_below(rng, n / 2));
    const int j = 1 + static_cast<int>(rand_below(rng, n - k));
    const auto universe = lex_universe(n, k);
    std::vector<std::uint64_t> picked;
    for (std::uint64_t m : universe)
      if (rand_below(rng, 3) == 0) picked.push_back(m);
    const Family f = Family::from_masks(n, k, picked);
    CHECK(disjointness_shadow(f, j) == shadow_oracle(f, j));
  }
}

TEST_CASE("maximal partner: duality grid and complementarity") {
  CHECK(maximal_partner(p_family(4, 2, 1), 2) == r_family(4, 2, 1));
  CHECK(maximal_partner(p_family(6, 3, 2), 2) == r_family(6, 2, 2));
  CHECK(r_family(6, 2, 2).size() == 9);

  for (int n = 4; n <= 14; ++n)
    for (int k = 2; k <= 7 && 2 * k <= n; ++k)
      for (int i = 1; i <= k; ++i) {
        CHECK(maximal_partner(p_family(n, k, i), k) == r_family(n, k, i));
        CHECK(maximal_partner(r_family(n, k, i), k) == p_family(n, k, i));
      }
  // Unequal sizes too.
  for (int i = 1; i <= 2; ++i) {
    CHECK(maximal_partner(p_family(7, 3, i), 2) == r_family(7, 2, i));
    CHECK(maximal_partner(r_family(7, 2, i), 3) == p_family(7, 3, i));
  }

  // Partner and shadow partition the universe.
  const Family b = fam(6, 3, {{1, 2, 3}, {2, 4, 6}});
  const Family partner = maximal_partner(b, 2);
  const Family shadow = disjointness_shadow(b, 2);
  CHECK(partner.size() + shadow.size() == 15);
  for (std::uint64_t m : partner.masks()) CHECK_FALSE(shadow.contains_mask(m));
}

TEST_CASE("complement law at n = k+l") {
  for (int k = 2; k <= 3; ++k)
    for (int l = 2; l <= 3; ++l) {
      const int n = k + l;
      std::mt19937_64 rng(99);
      for (int round = 0; round < 20; ++round) {
        const auto universe = lex_universe(n, l);
        std::vector<std::uint64_t> picked;
        for (std::uint64_t m : universe)
          if (rand_below(rng, 2) == 0) picked.push_back(m);
        if (picked.empty()) continue;
        const Family b = Family::from_masks(n, l, picked);
        const Family a = maximal_partner(b, k);
        CHECK(a.size() == binomial_u64(n, k) - b.size());
        for (std::uint64_t m : b.masks())
          CHECK_FALSE(
              a.contains_mask(KSet::from_mask(n, m).complement().mask()));
      }
    }
}

TEST_CASE("close_to_maximal_pair: containment, fixed point, idempotence") {
  const Family a0 = fam(5, 2, {{1, 2}});
  const Family b0 = fam(5, 2, {{1, 3}});
  const MaximalPair mp = close_to_maximal_pair(a0, b0);
  for (std::uint64_t m : a0.masks()) CHECK(mp.a.contains_mask(m));
  for (std::uint64_t m : b0.masks()) CHECK(mp.b.contains_mask(m));
  CHECK(mp.a == maximal_partner(mp.b, 2));
  CHECK(mp.b == maximal_partner(mp.a, 2));
  CHECK(mp.rounds <= 3);

  const MaximalPair already =
      close_to_maximal_pair(r_family(5, 2, 1), p_family(5, 2, 1));
  CHECK(already.a == r_family(5, 2, 1));
  CHECK(already.b == p_family(5, 2, 1));

  const MaximalPair swapped =
      close_to_maximal_pair(p_family(7, 3, 2), r_family(7, 4, 2));
  CHECK(swapped.a == p_family(7, 3, 2));
  CHECK(swapped.b == r_family(7, 4, 2));

  CHECK_THROWS_AS(
      close_to_maximal_pair(fam(4, 2, {{1, 2}}), fam(4, 2, {{3, 4}})),
      ValidationError);
}

TEST_CASE("maximal_q_partner generalizes maximal_partner") {
  const Family b = fam(7, 3, {{1, 2, 3}, {1, 4, 5}});
  const std::vector<Family> fixed = {b};
  CHECK(maximal_q_partner(fixed, 3, 1) == maximal_partner(b, 3));
  const Family q2 = maximal_q_partner(fixed, 3, 2);
  for (const KSet& s : q2.members())
    for (const KSet& t : b.members())
      CHECK(std::popcount(s.mask() & t.mask()) >= 2);
  // Oracle count: 3-sets meeting both {1,2,3} and {1,4,5} in >= 2 points.
  std::size_t expected = 0;
  for (std::uint64_t m : lex_universe(7, 3))
    if (std::popcount(m & 0b0000111) >= 2 && std::popcount(m & 0b0011001) >= 2)
      ++expected;
  CHECK(q2.size() == expected);
}

TEST_CASE("family text format: round-trip including empty") {
  const std::vector<Family> fams = {p_family(5, 3, 1), Family(5, 2),
                                    r_family(5, 2, 2)};
  const std::string text = families_to_string(fams);
  const auto back = families_from_string(text);
  REQUIRE(back.size() == fams.size());
  for (std::size_t i = 0; i < fams.size(); ++i) CHECK(back[i] == fams[i]);

  std::istringstream commented("# witness\n\nfamily n=4 k=2 size=1\n1,2\n");
  const auto read = read_families(commented);
  REQUIRE(read.size() == 1);
  CHECK(read[0] == fam(4, 2, {{1, 2}}));

  std::istringstream bad("family n=4 k=2 size=2\n1,2\n");
  CHECK_THROWS_AS(read_families(bad), ValidationError);
}

TEST_CASE("rand_below: range and determinism") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) CHECK(rand_below(rng, 13) < 13);
  std::mt19937_64 a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(rand_below(a, 97) == rand_below(b, 97));
}

TEST_CASE("random cross-intersecting pairs are cross-intersecting") {
  std::mt19937_64 rng(4242);
  int produced = 0;
  for (int i = 0; i < 60 && produced < 30; ++i) {
    const auto pair = random_cross_intersecting_pair(6, 2, 3, rng);
    if (!pair) continue;
    ++produced;
    CHECK(is_cross_intersecting(pair->first, pair->second));
    CHECK_FALSE(pair->first.empty());
    CHECK_FALSE(pair->second.empty());
  }
  CHECK(produced > 0);
}

TEST_CASE("compression preserves cross-intersection (random pairs)") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int i = 0; i < 200 && checked < 100; ++i) {
    const auto pair = random_cross_intersecting_pair(7, 3, 3, rng);
    if (!pair) continue;
    ++checked;
    CHECK(is_cross_intersecting(compress(pair->first),
                                compress(pair->second)));
  }
  CHECK(checked == 100);
}
