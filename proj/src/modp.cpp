#include "tpsimp/modp.hpp"

#include <stdexcept>
#include <utility>

namespace tpsimp {

namespace {

std::uint64_t mulmod_plain(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_plain(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_plain(r, a, m);
    a = mulmod_plain(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 3 || (p & 1) == 0 || p >= (std::uint64_t{1} << 62)) throw std::invalid_argument("PrimeField: bad modulus");
  std::uint64_t inv = p;  // Newton iteration for p^{-1} mod 2^64
  for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
  pinv_neg_ = ~inv + 1;
  std::uint64_t r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) % p);
  one_ = r;
  r2_ = mulmod_plain(r, r, p);
}

std::uint64_t PrimeField::from_int(const Integer& z) const {
  std::uint64_t r = mpz_fdiv_ui(z.get_mpz_t(), p_);
  return from_u64(r);
}

std::optional<std::uint64_t> PrimeField::from_rational(const Rational& q) const {
  std::uint64_t d = mpz_fdiv_ui(q.get_den_mpz_t(), p_);
  if (d == 0) return std::nullopt;
  std::uint64_t n = mpz_fdiv_ui(q.get_num_mpz_t(), p_);
  return mul(from_u64(n), inv(from_u64(d)));
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = one_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a == 0) throw std::domain_error("PrimeField::inv: zero");
  return pow(a, p_ - 2);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_plain(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_plain(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t PrimeSequence::next() {
  while (cursor_ > 3) {
    std::uint64_t c = cursor_;
    cursor_ -= 2;
    if (is_prime_u64(c)) return c;
  }
  throw std::runtime_error("PrimeSequence exhausted");
}

std::uint64_t det_mod(const PrimeField& f, std::span<std::uint64_t> a, std::size_t n) {
  std::uint64_t det = f.one();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv * n + k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      det = f.neg(det);
    }
    const std::uint64_t pk = a[k * n + k];
    det = f.mul(det, pk);
    const std::uint64_t inv = f.inv(pk);
    for (std::size_t i = k + 1; i < n; ++i) {
      std::uint64_t factor = a[i * n + k];
      if (factor == 0) continue;
      factor = f.mul(factor, inv);
      std::uint64_t* ri = &a[i * n];
      const std::uint64_t* rk = &a[k * n];
      for (std::size_t j = k + 1; j < n; ++j) ri[j] = f.sub(ri[j], f.mul(factor, rk[j]));
    }
  }
  return det;
}

std::size_t rank_mod(const PrimeField& f, std::span<std::uint64_t> a, std::size_t rows, std::size_t cols) {
  std::size_t rk = 0;
  for (std::size_t c = 0; c < cols && rk < rows; ++c) {
    std::size_t piv = rk;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rk)
      for (std::size_t j = c; j < cols; ++j) std::swap(a[rk * cols + j], a[piv * cols + j]);
    const std::uint64_t inv = f.inv(a[rk * cols + c]);
    for (std::size_t i = rk + 1; i < rows; ++i) {
      std::uint64_t factor = a[i * cols + c];
      if (factor == 0) continue;
      factor = f.mul(factor, inv);
      for (std::size_t j = c; j < cols; ++j) a[i * cols + j] = f.sub(a[i * cols + j], f.mul(factor, a[rk * cols + j]));
    }
    ++rk;
  }
  return rk;
}

void crt_accumulate(std::vector<Integer>& acc, Integer& modulus, std::span<const std::uint64_t> residues,
                    std::uint64_t p) {
  if (acc.size() != residues.size()) throw std::invalid_argument("crt_accumulate: size mismatch");
  if (modulus == 0 || modulus == 1) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = static_cast<unsigned long>(residues[i]);
    modulus = static_cast<unsigned long>(p);
    return;
  }
  // x = a + M * ((r - a) * M^{-1} mod p)
  const std::uint64_t m_mod_p = mpz_fdiv_ui(modulus.get_mpz_t(), p);
  const std::uint64_t m_inv = powmod_plain(m_mod_p, p - 2, p);
  for (std::size_t i = 0; i < acc.size(); ++i) {
    std::uint64_t a_mod_p = mpz_fdiv_ui(acc[i].get_mpz_t(), p);
    std::uint64_t diff = residues[i] >= a_mod_p ? residues[i] - a_mod_p : residues[i] + p - a_mod_p;
    std::uint64_t t = mulmod_plain(diff, m_inv, p);
    if (t != 0) mpz_addmul_ui(acc[i].get_mpz_t(), modulus.get_mpz_t(), static_cast<unsigned long>(t));
  }
  mpz_mul_ui(modulus.get_mpz_t(), modulus.get_mpz_t(), static_cast<unsigned long>(p));
}

std::optional<Rational> rational_reconstruct(const Integer& u, const Integer& m) {
  Integer bound;
  mpz_fdiv_q_2exp(bound.get_mpz_t(), m.get_mpz_t(), 1);
  mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
  Integer r0 = m, r1 = u % m;
  if (r1 < 0) r1 += m;
  Integer t0 = 0, t1 = 1, q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = std::move(r1);
    r1 = std::move(tmp);
    tmp = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(tmp);
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rational q_out(r1, t1);
  q_out.canonicalize();
  return q_out;
}

}  // namespace tpsimp
