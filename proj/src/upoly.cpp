#include "tpsimp/upoly.hpp"

#include <numeric>
#include <stdexcept>

namespace tpsimp {

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  std::vector<Rational> c = c_;
  const Rational inv = 1 / c.back();
  for (auto& x : c) x *= inv;
  return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
  if (d.is_zero()) throw std::domain_error("UPoly::divmod: division by zero");
  std::vector<Rational> r = c_;
  if (degree() < d.degree()) return {UPoly(), *this};
  std::vector<Rational> q(static_cast<std::size_t>(degree() - d.degree() + 1));
  const Rational inv = 1 / d.lead();
  for (int k = degree(); k >= d.degree(); --k) {
    const Rational& top = r[k];
    if (top == 0) continue;
    const Rational factor = top * inv;
    const int shift = k - d.degree();
    q[shift] = factor;
    for (int j = 0; j <= d.degree(); ++j) r[shift + j] -= factor * d.c_[j];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
  return UPoly(std::move(c));
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a.divmod(b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& f) {
  std::vector<std::pair<UPoly, int>> out;
  if (f.degree() <= 0) return out;
  const UPoly fm = f.monic();
  const UPoly df = fm.derivative();
  UPoly a = gcd(fm, df);
  UPoly b = fm.divmod(a).first;
  UPoly c = df.divmod(a).first;
  UPoly d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    UPoly g = gcd(b, d);
    if (g.degree() > 0) out.push_back({g, i});
    b = b.divmod(g).first;
    c = d.divmod(g).first;
    d = c - b.derivative();
  }
  return out;
}

int perfect_power_exponent(const UPoly& f) {
  int e = 0;
  for (const auto& [g, i] : squarefree_decomposition(f)) e = std::gcd(e, i);
  return e == 0 ? 1 : e;
}

namespace {

using ModPoly = std::vector<std::uint64_t>;

void trim_mod(ModPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

ModPoly rem_mod(const PrimeField& F, ModPoly a, const ModPoly& b) {
  const std::uint64_t inv = F.inv(b.back());
  while (a.size() >= b.size()) {
    const std::uint64_t factor = F.mul(a.back(), inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = F.sub(a[shift + j], F.mul(factor, b[j]));
    a.pop_back();
    trim_mod(a);
  }
  return a;
}

}  // namespace

int gcd_with_derivative_degree_mod(const PrimeField& F, std::vector<std::uint64_t> f) {
  trim_mod(f);
  if (f.empty()) return -1;
  ModPoly df;
  for (std::size_t k = 1; k < f.size(); ++k) df.push_back(F.mul(f[k], F.from_u64(k)));
  trim_mod(df);
  ModPoly a = std::move(f), b = std::move(df);
  while (!b.empty()) {
    ModPoly r = rem_mod(F, std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  return static_cast<int>(a.size()) - 1;
}

}  // namespace tpsimp
