#include "crossint/family.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "crossint/errors.hpp"

namespace crossint {

namespace {

void check_family_params(int n, int k) {
  if (n < 1 || n > 64)
    throw ValidationError("Family: ground_n must be in [1,64]");
  if (k < 0 || k > n)
    throw ValidationError("Family: set_size must be in [0, ground_n]");
}

}  // namespace

Family::Family(int ground_n, int set_size)
    : ground_n_(ground_n), set_size_(set_size) {
  check_family_params(ground_n, set_size);
}

Family::Family(int ground_n, int set_size, const std::vector<KSet>& members)
    : Family(ground_n, set_size) {
  masks_.reserve(members.size());
  for (const KSet& s : members) {
    if (s.ground_n() != ground_n)
      throw ValidationError("Family: member ground set mismatch");
    if (s.size() != set_size)
      throw ValidationError("Family: member size mismatch");
    masks_.push_back(s.mask());
  }
  std::sort(masks_.begin(), masks_.end(), lex_mask_less);
  if (std::adjacent_find(masks_.begin(), masks_.end()) != masks_.end())
    throw ValidationError("Family: duplicate member");
}

Family Family::from_masks(int ground_n, int set_size,
                          std::vector<std::uint64_t> masks) {
  Family f(ground_n, set_size);
  const std::uint64_t full = (ground_n == 64)
                                 ? ~std::uint64_t{0}
                                 : ((std::uint64_t{1} << ground_n) - 1);
  for (std::uint64_t m : masks) {
    if ((m & ~full) != 0)
      throw ValidationError("Family: mask outside the ground set");
    if (std::popcount(m) != set_size)
      throw ValidationError("Family: mask popcount != set_size");
  }
  std::sort(masks.begin(), masks.end(), lex_mask_less);
  if (std::adjacent_find(masks.begin(), masks.end()) != masks.end())
    throw ValidationError("Family: duplicate member");
  f.masks_ = std::move(masks);
  return f;
}

std::vector<KSet> Family::members() const {
  std::vector<KSet> out;
  out.reserve(masks_.size());
  for (std::uint64_t m : masks_) out.push_back(KSet::from_mask(ground_n_, m));
  return out;
}

bool Family::contains(const KSet& set) const {
  if (set.ground_n() != ground_n_ || set.size() != set_size_) return false;
  return contains_mask(set.mask());
}

bool Family::contains_mask(std::uint64_t mask) const noexcept {
  auto it =
      std::lower_bound(masks_.begin(), masks_.end(), mask, lex_mask_less);
  return it != masks_.end() && *it == mask;
}

bool Family::is_l_initial() const {
  if (masks_.empty()) return true;
  // Sorted and unique, so L-initial iff the last member has rank size()-1.
  return lex_rank(KSet::from_mask(ground_n_, masks_.back())) ==
         masks_.size() - 1;
}

std::vector<std::uint64_t> lex_universe(int n, int k) {
  check_family_params(n, k);
  const std::uint64_t count = binomial_u64(n, k);
  if (count > (std::uint64_t{1} << 28))
    throw BudgetExceeded("lex_universe: C(n,k) too large to materialize");
  std::vector<std::uint64_t> out;
  out.reserve(count);
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  // Standard ascending-combination odometer; visits sets in lex order.
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i + 1;
  for (;;) {
    std::uint64_t m = 0;
    for (int e : c) m |= std::uint64_t{1} << (e - 1);
    out.push_back(m);
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

Family l_initial(int n, int k, std::uint64_t m) {
  check_family_params(n, k);
  if (m > binomial_u64(n, k))
    throw ValidationError("l_initial: m exceeds C(n,k)");
  std::vector<std::uint64_t> masks;
  masks.reserve(m);
  for (std::uint64_t r = 0; r < m; ++r)
    masks.push_back(lex_unrank(n, k, r).mask());
  return Family::from_masks(n, k, std::move(masks));
}

Family compress(const Family& f) {
  return l_initial(f.ground_n(), f.set_size(), f.size());
}

Family p_family(int n, int l, int i) {
  check_family_params(n, l);
  if (i < 1 || i > l)
    throw ValidationError("p_family: need 1 <= i <= l");
  std::vector<std::uint64_t> masks;
  const std::uint64_t base = (std::uint64_t{1} << i) - 1;  // [1,i]
  for (std::uint64_t tail : lex_universe(n, l - i)) {
    if ((tail & base) == 0) masks.push_back(base | tail);
  }
  return Family::from_masks(n, l, std::move(masks));
}

Family r_family(int n, int k, int i) {
  check_family_params(n, k);
  if (i < 1 || i > n)
    throw ValidationError("r_family: need 1 <= i <= n");
  const std::uint64_t head = (std::uint64_t{1} << i) - 1;  // [1,i]
  std::vector<std::uint64_t> masks;
  for (std::uint64_t m : lex_universe(n, k)) {
    if ((m & head) != 0) masks.push_back(m);
  }
  return Family::from_masks(n, k, std::move(masks));
}

namespace {

void check_cross_args(std::span<const Family> families) {
  if (families.size() < 2)
    throw ValidationError("cross-intersection: need at least two families");
  for (const Family& f : families)
    if (f.ground_n() != families[0].ground_n())
      throw ValidationError("cross-intersection: ground set mismatch");
}

}  // namespace

bool is_cross_q_intersecting(std::span<const Family> families, int q) {
  check_cross_args(families);
  if (q < 1) throw ValidationError("cross-intersection: q must be >= 1");
  for (std::size_t i = 0; i < families.size(); ++i)
    for (std::size_t j = i + 1; j < families.size(); ++j)
      for (std::uint64_t a : families[i].masks())
        for (std::uint64_t b : families[j].masks())
          if (std::popcount(a & b) < q) return false;
  return true;
}

bool is_cross_q_intersecting(const Family& a, const Family& b, int q) {
  const Family fams[2] = {a, b};
  return is_cross_q_intersecting(std::span<const Family>(fams, 2), q);
}

bool is_cross_intersecting(std::span<const Family> families) {
  return is_cross_q_intersecting(families, 1);
}

bool is_cross_intersecting(const Family& a, const Family& b) {
  return is_cross_q_intersecting(a, b, 1);
}

Family disjointness_shadow(const Family& f, int j) {
  if (j < 1 || j > f.ground_n())
    throw ValidationError("disjointness_shadow: bad shadow size");
  if (f.ground_n() < f.set_size() + j)
    throw ValidationError(
        "disjointness_shadow: need ground_n >= set_size + j");
  std::vector<std::uint64_t> out;
  for (std::uint64_t cand : lex_universe(f.ground_n(), j)) {
    for (std::uint64_t m : f.masks()) {
      if ((cand & m) == 0) {
        out.push_back(cand);
        break;
      }
    }
  }
  return Family::from_masks(f.ground_n(), j, std::move(out));
}

Family maximal_q_partner(std::span<const Family> fixed, int set_size, int q) {
  if (fixed.empty())
    throw ValidationError("maximal_q_partner: need at least one family");
  const int n = fixed[0].ground_n();
  for (const Family& f : fixed)
    if (f.ground_n() != n)
      throw ValidationError("maximal_q_partner: ground set mismatch");
  if (q < 1) throw ValidationError("maximal_q_partner: q must be >= 1");
  std::vector<std::uint64_t> out;
  for (std::uint64_t cand : lex_universe(n, set_size)) {
    bool ok = true;
    for (const Family& f : fixed) {
      for (std::uint64_t m : f.masks()) {
        if (std::popcount(cand & m) < q) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) out.push_back(cand);
  }
  return Family::from_masks(n, set_size, std::move(out));
}

Family maximal_partner(const Family& b, int k) {
  if (b.ground_n() < b.set_size() + k)
    throw ValidationError("maximal_partner: need ground_n >= set_size + k");
  const Family fams[1] = {b};
  return maximal_q_partner(std::span<const Family>(fams, 1), k, 1);
}

MaximalPair close_to_maximal_pair(const Family& a, const Family& b) {
  if (!is_cross_intersecting(a, b))
    throw ValidationError("close_to_maximal_pair: inputs not cross-intersecting");
  if (a.empty() || b.empty())
    throw ValidationError("close_to_maximal_pair: inputs must be non-empty");
  Family cur_a = a;
  Family cur_b = b;
  int rounds = 0;
  for (;;) {
    Family next_a = maximal_partner(cur_b, a.set_size());
    Family next_b = maximal_partner(next_a, b.set_size());
    ++rounds;
    if (next_a == cur_a && next_b == cur_b) break;
    cur_a = std::move(next_a);
    cur_b = std::move(next_b);
    // The partner map is antitone, so one full round reaches the closure
    // and the next merely confirms it.
    if (rounds > 3)
      throw std::logic_error("close_to_maximal_pair: did not stabilize");
  }
  return MaximalPair{std::move(cur_a), std::move(cur_b), rounds};
}

void write_families(std::ostream& out, std::span<const Family> families) {
  for (const Family& f : families) {
    out << "family n=" << f.ground_n() << " k=" << f.set_size()
        << " size=" << f.size() << "\n";
    for (const KSet& s : f.members()) {
      const auto& e = s.elements();
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) out << ',';
        out << e[i];
      }
      out << "\n";
    }
  }
}

std::string families_to_string(std::span<const Family> families) {
  std::ostringstream os;
  write_families(os, families);
  return os.str();
}

namespace {

bool parse_int_token(const std::string& tok, int& out) {
  if (tok.empty()) return false;
  long v = 0;
  for (char ch : tok) {
    if (ch < '0' || ch > '9') return false;
    v = v * 10 + (ch - '0');
    if (v > 1'000'000) return false;
  }
  out = static_cast<int>(v);
  return true;
}

}  // namespace

std::vector<Family> read_families(std::istream& in) {
  std::vector<Family> out;
  std::string line;
  int n = 0, k = 0;
  long expect = -1;
  std::vector<KSet> members;
  bool in_block = false;

  auto flush = [&]() {
    if (!in_block) return;
    if (expect >= 0 && static_cast<long>(members.size()) != expect)
      throw ValidationError("family text: size=" + std::to_string(expect) +
                            " but " + std::to_string(members.size()) +
                            " member lines");
    out.emplace_back(n, k, members);
    members.clear();
    in_block = false;
  };

  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("family ", 0) == 0) {
      flush();
      int got_n = 0, got_k = 0, got_size = 0;
      bool ok_n = false, ok_k = false, ok_size = false;
      std::istringstream hs(line.substr(7));
      std::string tok;
      while (hs >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
          throw ValidationError("family text: bad header token '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        int val = 0;
        if (!parse_int_token(tok.substr(eq + 1), val))
          throw ValidationError("family text: bad header value in '" + tok +
                                "'");
        if (key == "n") { got_n = val; ok_n = true; }
        else if (key == "k") { got_k = val; ok_k = true; }
        else if (key == "size") { got_size = val; ok_size = true; }
        else throw ValidationError("family text: unknown header key '" + key +
                                   "'");
      }
      if (!ok_n || !ok_k)
        throw ValidationError("family text: header needs n= and k=");
      n = got_n;
      k = got_k;
      expect = ok_size ? got_size : -1;
      in_block = true;
      continue;
    }
    if (!in_block)
      throw ValidationError("family text: member line before any header");
    std::vector<int> elems;
    std::string tok;
    std::istringstream ls(line);
    while (std::getline(ls, tok, ',')) {
      int e = 0;
      if (!parse_int_token(tok, e))
        throw ValidationError("family text: bad element '" + tok + "'");
      elems.push_back(e);
    }
    if (!std::is_sorted(elems.begin(), elems.end()))
      throw ValidationError("family text: elements must be ascending");
    members.emplace_back(n, std::move(elems));
  }
  flush();
  return out;
}

std::vector<Family> families_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_families(is);
}

std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw ValidationError("rand_below: zero bound");
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t v = rng();
    if (v < limit) return v % bound;
  }
}

namespace {

Family random_family(int n, int k, std::mt19937_64& rng) {
  std::vector<std::uint64_t> universe = lex_universe(n, k);
  const std::uint64_t target = 1 + rand_below(rng, universe.size());
  // Partial Fisher-Yates: the first `target` slots become the sample.
  for (std::uint64_t i = 0; i < target; ++i) {
    const std::uint64_t j = i + rand_below(rng, universe.size() - i);
    std::swap(universe[i], universe[j]);
  }
  universe.resize(target);
  return Family::from_masks(n, k, std::move(universe));
}

}  // namespace

std::optional<std::pair<Family, Family>> random_cross_intersecting_pair(
    int n, int k, int l, std::mt19937_64& rng) {
  if (n < k + l)
    throw ValidationError("random_cross_intersecting_pair: need n >= k + l");
  std::vector<std::uint64_t> a = random_family(n, k, rng).masks();
  std::vector<std::uint64_t> b = random_family(n, l, rng).masks();
  for (;;) {
    // Find the lex-first offending member of the larger side.
    std::vector<std::uint64_t>& larger = (a.size() >= b.size()) ? a : b;
    std::vector<std::uint64_t>& other = (a.size() >= b.size()) ? b : a;
    std::size_t victim = larger.size();
    for (std::size_t i = 0; i < larger.size() && victim == larger.size(); ++i)
      for (std::uint64_t m : other)
        if ((larger[i] & m) == 0) {
          victim = i;
          break;
        }
    if (victim == larger.size()) break;  // cross-intersecting now
    larger.erase(larger.begin() + static_cast<std::ptrdiff_t>(victim));
    if (larger.empty()) return std::nullopt;
  }
  return std::make_pair(Family::from_masks(n, k, std::move(a)),
                        Family::from_masks(n, l, std::move(b)));
}

}  // namespace crossint
