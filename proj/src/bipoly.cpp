#include "tpsimp/bipoly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>

namespace tpsimp {

// ---------------------------------------------------------------------------
// Bigraded side

std::size_t MonomialBasis::index_of(const Exponent4& e) const {
  if (e[0] + e[1] != degree.i || e[2] + e[3] != degree.j || e[0] < 0 || e[1] < 0 || e[2] < 0 || e[3] < 0)
    throw std::invalid_argument("monomial not in basis");
  return bi_index(degree, e[1], e[3]);
}

MonomialBasis mono_basis(int i, int j) {
  if (i < 0 || j < 0) throw std::invalid_argument("mono_basis: negative bidegree");
  MonomialBasis b{{i, j}, {}};
  b.monomials.reserve(bi_dim({i, j}));
  for (int p = 0; p <= i; ++p)
    for (int q = 0; q <= j; ++q) b.monomials.push_back({i - p, p, j - q, q});
  return b;
}

BiForm::BiForm(Bidegree d, std::vector<Rational> coeffs) : deg_(d), c_(std::move(coeffs)) {
  if (c_.size() != bi_dim(d)) throw std::invalid_argument("BiForm: coefficient count does not match bidegree");
}

BiForm BiForm::monomial(const Exponent4& e, Rational c) {
  BiForm f({e[0] + e[1], e[2] + e[3]});
  f.c_[bi_index(f.deg_, e[1], e[3])] = std::move(c);
  return f;
}

namespace {

BiForm biform_from_parsed(const ParsedPoly& p, std::optional<Bidegree> expected) {
  if (p.surface_alphabet && p.has_variables)
    throw std::invalid_argument("expected a polynomial in s,t,u,v");
  std::optional<Bidegree> deg = expected;
  for (const auto& [e, c] : p.terms) {
    Bidegree d{e[0] + e[1], e[2] + e[3]};
    if (!deg) deg = d;
    if (*deg != d) throw std::invalid_argument("polynomial is not bihomogeneous of the expected bidegree");
  }
  if (!deg) throw std::invalid_argument("bidegree of the zero polynomial must be given");
  BiForm f(*deg);
  for (const auto& [e, c] : p.terms) f.coeffs()[bi_index(*deg, e[1], e[3])] = c;
  return f;
}

}  // namespace

BiForm BiForm::parse(std::string_view text) { return biform_from_parsed(parse_polynomial(text), std::nullopt); }

BiForm BiForm::parse(std::string_view text, Bidegree expected) {
  return biform_from_parsed(parse_polynomial(text), expected);
}

Rational BiForm::coeff(const Exponent4& e) const {
  if (e[0] + e[1] != deg_.i || e[2] + e[3] != deg_.j) return 0;
  return c_[bi_index(deg_, e[1], e[3])];
}

bool BiForm::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
}

std::size_t BiForm::num_terms() const {
  return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](const Rational& x) { return x != 0; }));
}

std::vector<std::pair<Exponent4, Rational>> BiForm::terms() const {
  std::vector<std::pair<Exponent4, Rational>> out;
  for (int p = 0; p <= deg_.i; ++p)
    for (int q = 0; q <= deg_.j; ++q) {
      const Rational& c = c_[bi_index(deg_, p, q)];
      if (c != 0) out.push_back({{deg_.i - p, p, deg_.j - q, q}, c});
    }
  return out;
}

namespace {

std::vector<Rational> powers(const Rational& x, int n) {
  std::vector<Rational> p(static_cast<std::size_t>(n) + 1);
  p[0] = 1;
  for (int k = 1; k <= n; ++k) p[k] = p[k - 1] * x;
  return p;
}

}  // namespace

Rational BiForm::evaluate(const Rational& s, const Rational& t, const Rational& u, const Rational& v) const {
  auto ps = powers(s, deg_.i), pt = powers(t, deg_.i), pu = powers(u, deg_.j), pv = powers(v, deg_.j);
  Rational acc = 0;
  for (int p = 0; p <= deg_.i; ++p) {
    Rational row = 0;
    for (int q = 0; q <= deg_.j; ++q) {
      const Rational& c = c_[bi_index(deg_, p, q)];
      if (c != 0) row += c * pu[deg_.j - q] * pv[q];
    }
    if (row != 0) acc += row * ps[deg_.i - p] * pt[p];
  }
  return acc;
}

BiForm& BiForm::operator+=(const BiForm& o) {
  if (deg_ != o.deg_) throw std::invalid_argument("BiForm add: bidegree mismatch");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

BiForm& BiForm::operator-=(const BiForm& o) {
  if (deg_ != o.deg_) throw std::invalid_argument("BiForm add: bidegree mismatch");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

BiForm& BiForm::operator*=(const Rational& c) {
  for (auto& x : c_) x *= c;
  return *this;
}

BiForm operator*(const BiForm& a, const BiForm& b) {
  const Bidegree da = a.deg_, db = b.deg_;
  BiForm out({da.i + db.i, da.j + db.j});
  for (int p1 = 0; p1 <= da.i; ++p1)
    for (int q1 = 0; q1 <= da.j; ++q1) {
      const Rational& x = a.c_[bi_index(da, p1, q1)];
      if (x == 0) continue;
      for (int p2 = 0; p2 <= db.i; ++p2)
        for (int q2 = 0; q2 <= db.j; ++q2) {
          const Rational& y = b.c_[bi_index(db, p2, q2)];
          if (y != 0) out.c_[bi_index(out.deg_, p1 + p2, q1 + q2)] += x * y;
        }
    }
  return out;
}

std::string BiForm::to_string() const { return format_terms(terms(), false); }

// ---------------------------------------------------------------------------
// Surface side

std::size_t surf_dim(int d) {
  if (d < 0) return 0;
  const auto n = static_cast<std::size_t>(d);
  return (n + 1) * (n + 2) * (n + 3) / 6;
}

std::size_t surf_index(int d, const Exponent4& e) {
  if (e[0] + e[1] + e[2] + e[3] != d) throw std::invalid_argument("surf_index: degree mismatch");
  // Count the monomials preceding e in lex order X > Y > Z > W.
  std::size_t idx = 0;
  for (int x = e[0] + 1; x <= d; ++x) {
    const auto r = static_cast<std::size_t>(d - x);
    idx += (r + 1) * (r + 2) / 2;
  }
  const int d1 = d - e[0];
  for (int y = e[1] + 1; y <= d1; ++y) idx += static_cast<std::size_t>(d1 - y + 1);
  const int d2 = d1 - e[1];
  idx += static_cast<std::size_t>(d2 - e[2]);
  return idx;
}

std::vector<Exponent4> surf_monomials(int d) {
  std::vector<Exponent4> out;
  out.reserve(surf_dim(d));
  for (int x = d; x >= 0; --x)
    for (int y = d - x; y >= 0; --y)
      for (int z = d - x - y; z >= 0; --z) out.push_back({x, y, z, d - x - y - z});
  return out;
}

SurfForm::SurfForm(int degree, std::vector<Rational> coeffs) : d_(degree), c_(std::move(coeffs)) {
  if (c_.size() != surf_dim(degree)) throw std::invalid_argument("SurfForm: coefficient count does not match degree");
}

namespace {

SurfForm surfform_from_parsed(const ParsedPoly& p, std::optional<int> expected) {
  if (!p.surface_alphabet && p.has_variables) throw std::invalid_argument("expected a polynomial in X,Y,Z,W");
  std::optional<int> deg = expected;
  for (const auto& [e, c] : p.terms) {
    int d = e[0] + e[1] + e[2] + e[3];
    if (!deg) deg = d;
    if (*deg != d) throw std::invalid_argument("polynomial is not homogeneous of the expected degree");
  }
  if (!deg) throw std::invalid_argument("degree of the zero polynomial must be given");
  SurfForm h(*deg);
  for (const auto& [e, c] : p.terms) h.coeff_ref(e) = c;
  return h;
}

}  // namespace

SurfForm SurfForm::parse(std::string_view text) { return surfform_from_parsed(parse_polynomial(text), std::nullopt); }

SurfForm SurfForm::parse(std::string_view text, int expected_degree) {
  return surfform_from_parsed(parse_polynomial(text), expected_degree);
}

SurfForm SurfForm::linear(const std::array<Rational, 4>& c) {
  return SurfForm(1, {c[0], c[1], c[2], c[3]});
}

bool SurfForm::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
}

std::size_t SurfForm::num_terms() const {
  return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](const Rational& x) { return x != 0; }));
}

std::vector<std::pair<Exponent4, Rational>> SurfForm::terms() const {
  std::vector<std::pair<Exponent4, Rational>> out;
  const auto mons = surf_monomials(d_);
  for (std::size_t k = 0; k < mons.size(); ++k)
    if (c_[k] != 0) out.push_back({mons[k], c_[k]});
  return out;
}

Rational SurfForm::leading_coeff() const {
  for (const auto& c : c_)
    if (c != 0) return c;
  return 0;
}

Rational SurfForm::evaluate(std::span<const Rational> xyzw) const {
  if (xyzw.size() != 4) throw std::invalid_argument("SurfForm::evaluate: need four coordinates");
  std::array<std::vector<Rational>, 4> pw;
  for (int v = 0; v < 4; ++v) pw[v] = powers(xyzw[v], d_);
  Rational acc = 0;
  const auto mons = surf_monomials(d_);
  for (std::size_t k = 0; k < mons.size(); ++k) {
    if (c_[k] == 0) continue;
    const auto& e = mons[k];
    acc += c_[k] * pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]] * pw[3][e[3]];
  }
  return acc;
}

SurfForm SurfForm::normalized() const {
  if (is_zero()) return *this;
  Integer l = denominator_lcm(c_);
  std::vector<Integer> ints;
  ints.reserve(c_.size());
  for (const auto& c : c_) ints.push_back(Integer(c * l));
  Integer g = content(ints);
  if (leading_coeff() < 0) g = -g;
  SurfForm out(d_);
  for (std::size_t k = 0; k < c_.size(); ++k) out.c_[k] = Rational(ints[k] / g);
  return out;
}

bool SurfForm::is_normalized() const { return !is_zero() && normalized() == *this; }

bool SurfForm::proportional_to(const SurfForm& other) const {
  if (d_ != other.d_ || is_zero() || other.is_zero()) return false;
  return normalized() == other.normalized();
}

SurfForm& SurfForm::operator+=(const SurfForm& o) {
  if (d_ != o.d_) throw std::invalid_argument("SurfForm add: degree mismatch");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

SurfForm& SurfForm::operator*=(const Rational& c) {
  for (auto& x : c_) x *= c;
  return *this;
}

SurfForm operator*(const SurfForm& a, const SurfForm& b) {
  SurfForm out(a.d_ + b.d_);
  const auto ta = a.terms(), tb = b.terms();
  for (const auto& [ea, ca] : ta)
    for (const auto& [eb, cb] : tb) {
      Exponent4 e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]};
      out.coeff_ref(e) += ca * cb;
    }
  return out;
}

std::string SurfForm::to_string() const { return format_terms(terms(), true); }

// ---------------------------------------------------------------------------
// Substitution

namespace {

// Integer bigraded form used by the Horner evaluation.
struct IntBi {
  Bidegree deg;
  std::vector<Integer> c;
};

IntBi int_mul(const IntBi& a, const IntBi& b) {
  IntBi out{{a.deg.i + b.deg.i, a.deg.j + b.deg.j}, {}};
  out.c.assign(bi_dim(out.deg), Integer(0));
  for (int p1 = 0; p1 <= a.deg.i; ++p1)
    for (int q1 = 0; q1 <= a.deg.j; ++q1) {
      const Integer& x = a.c[bi_index(a.deg, p1, q1)];
      if (x == 0) continue;
      for (int p2 = 0; p2 <= b.deg.i; ++p2)
        for (int q2 = 0; q2 <= b.deg.j; ++q2) {
          const Integer& y = b.c[bi_index(b.deg, p2, q2)];
          if (y == 0) continue;
          Integer& z = out.c[bi_index(out.deg, p1 + p2, q1 + q2)];
          mpz_addmul(z.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        }
    }
  return out;
}

struct Horner {
  Bidegree fdeg;
  std::array<IntBi, 4> f;
  std::vector<IntBi> wpow;  // powers of f[3]

  IntBi zero(int D) const {
    IntBi z{{D * fdeg.i, D * fdeg.j}, {}};
    z.c.assign(bi_dim(z.deg), Integer(0));
    return z;
  }

  const IntBi& fw(int e) {
    while (static_cast<int>(wpow.size()) <= e) {
      if (wpow.empty()) {
        wpow.push_back(IntBi{{0, 0}, {Integer(1)}});
      } else {
        wpow.push_back(int_mul(wpow.back(), f[3]));
      }
    }
    return wpow[e];
  }

  // terms[lo,hi) all have the exponents of variables < v fixed and
  // total remaining degree D; sorted lex-descending.
  std::optional<IntBi> run(const std::vector<std::pair<Exponent4, Integer>>& terms, std::size_t lo, std::size_t hi,
                           int v, int D) {
    if (lo == hi) return std::nullopt;
    if (v == 3) {
      IntBi out = fw(D);
      for (auto& x : out.c) x *= terms[lo].second;
      return out;
    }
    std::optional<IntBi> acc;
    std::size_t pos = lo;
    for (int k = D; k >= 0; --k) {
      if (acc) acc = int_mul(*acc, f[v]);
      std::size_t end = pos;
      while (end < hi && terms[end].first[v] == k) ++end;
      auto sub = run(terms, pos, end, v + 1, D - k);
      pos = end;
      if (sub) {
        if (!acc) {
          acc = std::move(sub);
        } else {
          for (std::size_t i = 0; i < acc->c.size(); ++i) acc->c[i] += sub->c[i];
        }
      }
    }
    return acc;
  }
};

}  // namespace

BiForm substitute_surface(const SurfForm& H, std::span<const BiForm> f) {
  if (f.size() != 4) throw std::invalid_argument("substitute_surface: need four forms");
  const Bidegree fd = f[0].bidegree();
  for (const auto& fi : f)
    if (fi.bidegree() != fd) throw std::invalid_argument("substitute_surface: bidegree mismatch among f");
  const int d = H.degree();
  const Bidegree out_deg{d * fd.i, d * fd.j};

  Integer lh = denominator_lcm(H.coeffs());
  std::vector<Rational> all_f;
  for (const auto& fi : f) all_f.insert(all_f.end(), fi.coeffs().begin(), fi.coeffs().end());
  Integer lf = denominator_lcm(all_f);

  Horner h{fd, {}, {}};
  for (int i = 0; i < 4; ++i) {
    h.f[i].deg = fd;
    for (const auto& c : f[i].coeffs()) h.f[i].c.push_back(Integer(c * lf));
  }
  std::vector<std::pair<Exponent4, Integer>> terms;
  for (const auto& [e, c] : H.terms()) terms.push_back({e, Integer(c * lh)});

  auto res = h.run(terms, 0, terms.size(), 0, d);
  BiForm out(out_deg);
  if (!res) return out;
  Integer lfd;
  mpz_pow_ui(lfd.get_mpz_t(), lf.get_mpz_t(), static_cast<unsigned long>(d));
  const Rational scale = Rational(1) / Rational(lh * lfd);
  for (std::size_t k = 0; k < res->c.size(); ++k)
    if (res->c[k] != 0) out.coeffs()[k] = Rational(res->c[k]) * scale;
  return out;
}

// ---------------------------------------------------------------------------
// Text grammar

namespace {

constexpr char kBiVars[4] = {'s', 't', 'u', 'v'};
constexpr char kSurfVars[4] = {'X', 'Y', 'Z', 'W'};

int var_slot(char c, bool& surface) {
  for (int k = 0; k < 4; ++k) {
    if (c == kBiVars[k]) {
      surface = false;
      return k;
    }
    if (c == kSurfVars[k]) {
      surface = true;
      return k;
    }
  }
  return -1;
}

[[noreturn]] void bad(std::string_view text, const std::string& why) {
  throw std::invalid_argument("malformed polynomial '" + std::string(text) + "': " + why);
}

}  // namespace

ParsedPoly parse_polynomial(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) bad(text, "empty");

  ParsedPoly out;
  std::optional<bool> alphabet;
  std::map<Exponent4, Rational> acc;
  std::size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      bad(text, "expected '+' or '-'");
    }
    first = false;
    Rational coef = sign;
    Exponent4 e{0, 0, 0, 0};
    bool any_factor = false;
    while (true) {
      if (pos >= s.size()) bad(text, "dangling operator");
      char c = s[pos];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t end = pos;
        while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
        if (end < s.size() && s[end] == '/') {
          ++end;
          if (end >= s.size() || !std::isdigit(static_cast<unsigned char>(s[end]))) bad(text, "bad rational");
          while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
        }
        coef *= parse_rational(std::string_view(s).substr(pos, end - pos));
        pos = end;
      } else {
        bool surface = false;
        int slot = var_slot(c, surface);
        if (slot < 0) bad(text, std::string("unknown symbol '") + c + "'");
        if (alphabet && *alphabet != surface) bad(text, "mixes s,t,u,v with X,Y,Z,W");
        alphabet = surface;
        ++pos;
        int power = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          std::size_t end = pos;
          while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
          if (end == pos || end - pos > 6) bad(text, "bad exponent");
          power = std::stoi(s.substr(pos, end - pos));
          pos = end;
        }
        e[slot] += power;
      }
      any_factor = true;
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!any_factor) bad(text, "empty term");
    acc[e] += coef;
  }
  out.surface_alphabet = alphabet.value_or(false);
  out.has_variables = alphabet.has_value();
  for (auto it = acc.rbegin(); it != acc.rend(); ++it)
    if (it->second != 0) out.terms.push_back(*it);
  return out;
}

std::string format_terms(const std::vector<std::pair<Exponent4, Rational>>& terms, bool surface_alphabet) {
  if (terms.empty()) return "0";
  const char* names = surface_alphabet ? kSurfVars : kBiVars;
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms) {
    if (c == 0) continue;
    const bool neg = c < 0;
    if (neg) {
      out += '-';
    } else if (!first) {
      out += '+';
    }
    first = false;
    const Rational mag = abs(c);
    const bool constant = e[0] == 0 && e[1] == 0 && e[2] == 0 && e[3] == 0;
    bool need_star = false;
    if (constant || mag != 1) {
      out += to_string(mag);
      need_star = true;
    }
    for (int k = 0; k < 4; ++k) {
      if (e[k] == 0) continue;
      if (need_star) out += '*';
      out += names[k];
      if (e[k] > 1) out += '^' + std::to_string(e[k]);
      need_star = true;
    }
  }
  return first ? "0" : out;
}

}  // namespace tpsimp
