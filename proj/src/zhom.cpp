#include "tpsimp/zhom.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace tpsimp {

namespace {

struct MonoTable {
  std::vector<Exponent4> mons;
  std::vector<std::uint32_t> index;  // (e0,e1,e2) -> position
  int d;
  std::uint32_t at(const Exponent4& e) const {
    const std::size_t n = static_cast<std::size_t>(d) + 1;
    return index[(static_cast<std::size_t>(e[0]) * n + static_cast<std::size_t>(e[1])) * n +
                 static_cast<std::size_t>(e[2])];
  }
};

const MonoTable& mono_table(int d) {
  static std::unordered_map<int, MonoTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  MonoTable t{surf_monomials(d), {}, d};
  const std::size_t n = static_cast<std::size_t>(d) + 1;
  t.index.assign(n * n * n, 0);
  for (std::size_t k = 0; k < t.mons.size(); ++k) {
    const auto& e = t.mons[k];
    t.index[(static_cast<std::size_t>(e[0]) * n + static_cast<std::size_t>(e[1])) * n +
            static_cast<std::size_t>(e[2])] = static_cast<std::uint32_t>(k);
  }
  return cache.emplace(d, std::move(t)).first->second;
}

}  // namespace

ZHom ZHom::zero(int d) { return ZHom{d, std::vector<Integer>(surf_dim(d))}; }
ZHom ZHom::one() { return ZHom{0, {Integer(1)}}; }

bool ZHom::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const Integer& x) { return x == 0; });
}

ZHom zmul(const ZHom& a, const ZHom& b) {
  const MonoTable &ta = mono_table(a.d), &tb = mono_table(b.d), &to = mono_table(a.d + b.d);
  ZHom out{a.d + b.d, std::vector<Integer>(to.mons.size())};
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    const auto& ea = ta.mons[i];
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j] == 0) continue;
      const auto& eb = tb.mons[j];
      Integer& z = out.c[to.at({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]})];
      mpz_addmul(z.get_mpz_t(), a.c[i].get_mpz_t(), b.c[j].get_mpz_t());
    }
  }
  return out;
}

void zsub_inplace(ZHom& a, const ZHom& b) {
  for (std::size_t k = 0; k < a.c.size(); ++k) a.c[k] -= b.c[k];
}

// Exact quotient a / b; throws if b does not divide a.
ZHom zdivexact(ZHom a, const ZHom& b) {
  const MonoTable &ta = mono_table(a.d), &tb = mono_table(b.d), &tq = mono_table(a.d - b.d);
  ZHom q{a.d - b.d, std::vector<Integer>(tq.mons.size())};
  std::size_t lb = 0;
  while (lb < b.c.size() && b.c[lb] == 0) ++lb;
  if (lb == b.c.size()) throw std::domain_error("zdivexact: division by zero");
  const Exponent4 eb = tb.mons[lb];
  Integer qc, rem;
  for (std::size_t k = 0; k < a.c.size(); ++k) {
    if (a.c[k] == 0) continue;
    const auto& e = ta.mons[k];
    Exponent4 eq{e[0] - eb[0], e[1] - eb[1], e[2] - eb[2], e[3] - eb[3]};
    if (eq[0] < 0 || eq[1] < 0 || eq[2] < 0 || eq[3] < 0) throw std::domain_error("zdivexact: not divisible");
    mpz_tdiv_qr(qc.get_mpz_t(), rem.get_mpz_t(), a.c[k].get_mpz_t(), b.c[lb].get_mpz_t());
    if (rem != 0) throw std::domain_error("zdivexact: not divisible");
    q.c[tq.at(eq)] = qc;
    for (std::size_t j = lb; j < b.c.size(); ++j) {
      if (b.c[j] == 0) continue;
      const auto& ej = tb.mons[j];
      Integer& z = a.c[ta.at({eq[0] + ej[0], eq[1] + ej[1], eq[2] + ej[2], eq[3] + ej[3]})];
      mpz_submul(z.get_mpz_t(), qc.get_mpz_t(), b.c[j].get_mpz_t());
    }
  }
  return q;
}

ZHom bareiss_poly(std::vector<ZHom> a, std::size_t n) {
  if (n == 0) return ZHom{0, {Integer(1)}};
  bool negate = false;
  ZHom prev{0, {Integer(1)}};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a[r * n + k].is_zero()) ++r;
      if (r == n) return ZHom{static_cast<int>(n), std::vector<Integer>(surf_dim(static_cast<int>(n)))};
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[r * n + j]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        ZHom x = zmul(a[k * n + k], a[i * n + j]);
        zsub_inplace(x, zmul(a[i * n + k], a[k * n + j]));
        a[i * n + j] = k == 0 ? std::move(x) : zdivexact(std::move(x), prev);
      }
    }
    prev = a[k * n + k];
  }
  ZHom d = std::move(a[n * n - 1]);
  if (negate)
    for (auto& x : d.c) x = -x;
  return d;
}

SurfForm to_surf(const ZHom& z) {
  SurfForm s(z.d);
  for (std::size_t k = 0; k < z.c.size(); ++k) s.coeffs()[k] = Rational(z.c[k]);
  return s;
}

}  // namespace tpsimp
