#include "tpsimp/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace tpsimp {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num)) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  if (num[0] == '+') num.remove_prefix(1);
  Integer n(std::string(num), 10);
  Integer d = 1;
  if (slash != std::string_view::npos) {
    std::string_view den = text.substr(slash + 1);
    if (!is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
      throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    d = Integer(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  }
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::string to_string(const Integer& z) { return z.get_str(10); }

Integer denominator_lcm(const std::vector<Rational>& values) {
  Integer l = 1;
  for (const auto& v : values) {
    if (v.get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  return l;
}

Integer content(const std::vector<Integer>& values) {
  Integer g = 0;
  for (const auto& v : values) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

std::size_t bit_length(const Integer& z) {
  if (z == 0) return 0;
  return mpz_sizeinbase(z.get_mpz_t(), 2);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % span);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

}  // namespace tpsimp
