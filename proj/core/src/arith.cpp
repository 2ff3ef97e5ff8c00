#include "crossint/arith.hpp"

#include <array>
#include <cstddef>

#include "crossint/errors.hpp"

namespace crossint {

BigInt binomial(long n, long k) {
  if (n < 0) throw ValidationError("binomial: n must be non-negative");
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;  // exact: product of i consecutive integers is divisible by i!
  }
  return result;
}

namespace {

// Pascal table for n <= 64. C(64,32) = 1832624140942590534 fits in uint64.
struct BinomTable {
  std::array<std::array<std::uint64_t, 65>, 65> c{};
  BinomTable() {
    for (int n = 0; n <= 64; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= n; ++k)
        c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
    }
  }
};

const BinomTable& table() {
  static const BinomTable t;
  return t;
}

}  // namespace

std::uint64_t binomial_u64(int n, int k) {
  if (n < 0 || n > 64) throw ValidationError("binomial_u64: n out of [0,64]");
  if (k < 0 || k > n) return 0;
  return table().c[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

std::string fraction_str(const Rational& value) {
  std::string s = numerator(value).str();
  if (denominator(value) != 1) {
    s += '/';
    s += denominator(value).str();
  }
  return s;
}

Rational parse_fraction(std::string_view text) {
  auto parse_int = [](std::string_view part) -> BigInt {
    if (part.empty()) throw ValidationError("fraction: empty integer part");
    std::size_t start = (part[0] == '-') ? 1 : 0;
    if (start == part.size())
      throw ValidationError("fraction: sign without digits");
    for (std::size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9')
        throw ValidationError("fraction: invalid character in '" +
                              std::string(part) + "'");
    return BigInt(std::string(part));
  };
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const BigInt num = parse_int(text.substr(0, slash));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ValidationError("fraction: zero denominator");
  return Rational(num, den);  // cpp_rational normalizes sign and gcd
}

}  // namespace crossint
