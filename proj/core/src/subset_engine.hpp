#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "crossint/errors.hpp"
#include "crossint/family.hpp"

namespace crossint::detail {

// Shared plumbing for the exhaustive engines: both uniform universes in
// lex order plus, per k-candidate, the bitmask (over l-universe indices)
// of its q-conflicts. A family B encoded as a subset-bitmask S then has
// maximal partner {v : conf[v] & S == 0}.
struct PairUniverse {
  int n = 0, k = 0, l = 0, q = 1;
  std::vector<std::uint64_t> lu;  // l-sets, lex order (element masks)
  std::vector<std::uint64_t> ku;  // k-sets, lex order
  std::vector<std::uint64_t> conf;  // per ku index, bitmask over lu indices
};

inline int intersection_size(std::uint64_t a, std::uint64_t b) {
  return std::popcount(a & b);
}

inline PairUniverse build_pair_universe(int n, int k, int l, int q,
                                        std::size_t max_universe_bits) {
  PairUniverse u;
  u.n = n;
  u.k = k;
  u.l = l;
  u.q = q;
  u.lu = lex_universe(n, l);
  if (u.lu.size() > max_universe_bits)
    throw BudgetExceeded("brute-force universe C(" + std::to_string(n) + "," +
                         std::to_string(l) + ") = " +
                         std::to_string(u.lu.size()) + " exceeds the " +
                         std::to_string(max_universe_bits) +
                         "-bit subset-enumeration limit");
  u.ku = (k == l) ? u.lu : lex_universe(n, k);
  u.conf.assign(u.ku.size(), 0);
  for (std::size_t v = 0; v < u.ku.size(); ++v) {
    std::uint64_t m = 0;
    for (std::size_t j = 0; j < u.lu.size(); ++j)
      if (intersection_size(u.ku[v], u.lu[j]) < q) m |= std::uint64_t{1} << j;
    u.conf[v] = m;
  }
  return u;
}

inline std::uint32_t partner_count(const PairUniverse& u, std::uint64_t S) {
  std::uint32_t cnt = 0;
  for (const std::uint64_t c : u.conf)
    if ((c & S) == 0) ++cnt;
  return cnt;
}

inline std::vector<std::uint64_t> partner_masks(const PairUniverse& u,
                                                std::uint64_t S) {
  std::vector<std::uint64_t> out;
  for (std::size_t v = 0; v < u.ku.size(); ++v)
    if ((u.conf[v] & S) == 0) out.push_back(u.ku[v]);
  return out;
}

inline Family family_from_subset_mask(const PairUniverse& u,
                                      std::uint64_t S) {
  std::vector<std::uint64_t> masks;
  masks.reserve(static_cast<std::size_t>(std::popcount(S)));
  for (std::uint64_t rest = S; rest != 0; rest &= rest - 1)
    masks.push_back(u.lu[static_cast<std::size_t>(std::countr_zero(rest))]);
  return Family::from_masks(u.n, u.l, std::move(masks));
}

}  // namespace crossint::detail
