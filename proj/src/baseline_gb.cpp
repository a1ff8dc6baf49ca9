#include "tpsimp/baseline_gb.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace tpsimp {

namespace {

int grevlex_block(const Mono8& a, const Mono8& b, int first) {
  int da = 0, db = 0;
  for (int k = first; k < first + 4; ++k) {
    da += a[k];
    db += b[k];
  }
  if (da != db) return da < db ? -1 : 1;
  for (int k = first + 3; k >= first; --k)
    if (a[k] != b[k]) return a[k] > b[k] ? -1 : 1;
  return 0;
}

struct Greater {
  bool operator()(const Mono8& a, const Mono8& b) const { return compare_mono8(a, b) > 0; }
};

using Work = std::map<Mono8, Rational, Greater>;

bool divides(const Mono8& d, const Mono8& m) {
  for (int k = 0; k < 8; ++k)
    if (d[k] > m[k]) return false;
  return true;
}

Mono8 quotient(const Mono8& m, const Mono8& d) {
  Mono8 q;
  for (int k = 0; k < 8; ++k) q[k] = static_cast<std::uint8_t>(m[k] - d[k]);
  return q;
}

Mono8 lcm(const Mono8& a, const Mono8& b) {
  Mono8 l;
  for (int k = 0; k < 8; ++k) l[k] = std::max(a[k], b[k]);
  return l;
}

bool coprime(const Mono8& a, const Mono8& b) {
  for (int k = 0; k < 8; ++k)
    if (a[k] != 0 && b[k] != 0) return false;
  return true;
}

int degree(const Mono8& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

void add_to(Work& w, const Mono8& m, const Rational& c) {
  auto [it, inserted] = w.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) w.erase(it);
  }
}

}  // namespace

int compare_mono8(const Mono8& a, const Mono8& b) {
  const int c = grevlex_block(a, b, 0);
  return c != 0 ? c : grevlex_block(a, b, 4);
}

MPoly8::MPoly8(std::vector<Term> terms) {
  Work w;
  for (auto& [m, c] : terms)
    if (c != 0) add_to(w, m, c);
  terms_.assign(w.begin(), w.end());
}

MPoly8 MPoly8::variable(int index) {
  Mono8 m{};
  m[index] = 1;
  return MPoly8({{m, Rational(1)}});
}

MPoly8 MPoly8::constant(const Rational& c) { return MPoly8({{Mono8{}, c}}); }

bool MPoly8::free_of_params() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.first[0] == 0 && t.first[1] == 0 && t.first[2] == 0 && t.first[3] == 0; });
}

int MPoly8::total_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, degree(t.first));
  return d;
}

MPoly8 MPoly8::monic() const {
  if (is_zero()) return *this;
  return scaled(1 / lead_coeff(), Mono8{});
}

MPoly8 MPoly8::scaled(const Rational& c, const Mono8& m) const {
  MPoly8 out;
  if (c == 0) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& [e, x] : terms_) {
    Mono8 p;
    for (int k = 0; k < 8; ++k) p[k] = static_cast<std::uint8_t>(e[k] + m[k]);
    out.terms_.push_back({p, x * c});  // monomial multiplication preserves the order
  }
  return out;
}

MPoly8 operator+(const MPoly8& a, const MPoly8& b) {
  std::vector<MPoly8::Term> t = a.terms_;
  t.insert(t.end(), b.terms_.begin(), b.terms_.end());
  return MPoly8(std::move(t));
}

MPoly8 operator-(const MPoly8& a, const MPoly8& b) { return a + b.scaled(-1, Mono8{}); }

MPoly8 operator*(const MPoly8& a, const MPoly8& b) {
  Work w;
  for (const auto& [m, c] : b.terms_)
    for (const auto& [e, x] : a.terms_) {
      Mono8 p;
      for (int k = 0; k < 8; ++k) p[k] = static_cast<std::uint8_t>(e[k] + m[k]);
      add_to(w, p, x * c);
    }
  MPoly8 out;
  out.terms_.assign(w.begin(), w.end());
  return out;
}

std::string MPoly8::to_string() const {
  static constexpr const char* kNames[8] = {"s", "t", "u", "v", "X", "Y", "Z", "W"};
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (c < 0)
      os << '-';
    else if (!first)
      os << '+';
    first = false;
    bool wrote = false;
    if (mag != 1 || degree(m) == 0) {
      os << tpsimp::to_string(mag);
      wrote = true;
    }
    for (int k = 0; k < 8; ++k) {
      if (m[k] == 0) continue;
      if (wrote) os << '*';
      os << kNames[k];
      if (m[k] > 1) os << '^' << int(m[k]);
      wrote = true;
    }
  }
  return os.str();
}

MPoly8 normal_form(const MPoly8& f, const std::vector<MPoly8>& G) {
  Work p(f.terms().begin(), f.terms().end());
  std::vector<MPoly8::Term> rem;
  while (!p.empty()) {
    auto lt = p.begin();
    const MPoly8* red = nullptr;
    for (const auto& g : G)
      if (!g.is_zero() && divides(g.lead_mono(), lt->first)) {
        red = &g;
        break;
      }
    if (!red) {
      rem.push_back(*lt);
      p.erase(lt);
      continue;
    }
    const Rational factor = lt->second / red->lead_coeff();
    const Mono8 shift = quotient(lt->first, red->lead_mono());
    p.erase(lt);
    bool skip_lead = true;
    for (const auto& [m, c] : red->terms()) {
      if (skip_lead) {
        skip_lead = false;
        continue;
      }
      Mono8 e;
      for (int k = 0; k < 8; ++k) e[k] = static_cast<std::uint8_t>(m[k] + shift[k]);
      add_to(p, e, -factor * c);
    }
  }
  return MPoly8(std::move(rem));
}

MPoly8 s_polynomial(const MPoly8& f, const MPoly8& g) {
  const Mono8 l = lcm(f.lead_mono(), g.lead_mono());
  return f.scaled(1 / f.lead_coeff(), quotient(l, f.lead_mono())) -
         g.scaled(1 / g.lead_coeff(), quotient(l, g.lead_mono()));
}

std::vector<MPoly8> buchberger(const std::vector<MPoly8>& gens, std::size_t step_cap) {
  if (gens.empty()) throw std::invalid_argument("buchberger: empty generator list");
  std::vector<MPoly8> G;
  for (const auto& g : gens)
    if (!g.is_zero()) G.push_back(g.monic());

  struct Pair {
    int deg;
    std::size_t j, i;
    bool operator<(const Pair& o) const { return std::tie(deg, j, i) < std::tie(o.deg, o.j, o.i); }
  };
  std::vector<Pair> pairs;
  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i)
      pairs.push_back({degree(lcm(G[i].lead_mono(), G[j].lead_mono())), j, i});
  };
  for (std::size_t j = 1; j < G.size(); ++j) add_pairs(j);

  std::size_t steps = 0;
  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end());
    const Pair pr = *it;
    pairs.erase(it);
    if (coprime(G[pr.i].lead_mono(), G[pr.j].lead_mono())) continue;
    if (++steps > step_cap) throw StepCapExceeded("buchberger: step cap of " + std::to_string(step_cap) + " exceeded");
    MPoly8 h = normal_form(s_polynomial(G[pr.i], G[pr.j]), G);
    if (h.is_zero()) continue;
    G.push_back(h.monic());
    add_pairs(G.size() - 1);
  }

  // Minimalize, then interreduce.
  std::vector<MPoly8> minimal;
  for (std::size_t k = 0; k < G.size(); ++k) {
    bool redundant = false;
    for (std::size_t l = 0; l < G.size() && !redundant; ++l) {
      if (l == k || !divides(G[l].lead_mono(), G[k].lead_mono())) continue;
      redundant = G[l].lead_mono() != G[k].lead_mono() || l < k;
    }
    if (!redundant) minimal.push_back(G[k]);
  }
  std::vector<MPoly8> reduced;
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<MPoly8> others;
    for (std::size_t l = 0; l < minimal.size(); ++l)
      if (l != k) others.push_back(minimal[l]);
    const MPoly8 tail = normal_form(minimal[k] - MPoly8({minimal[k].terms().front()}), others);
    reduced.push_back(MPoly8({minimal[k].terms().front()}) + tail);
  }
  std::sort(reduced.begin(), reduced.end(),
            [](const MPoly8& a, const MPoly8& b) { return compare_mono8(a.lead_mono(), b.lead_mono()) < 0; });
  return reduced;
}

bool is_groebner_basis(const std::vector<MPoly8>& G) {
  for (std::size_t j = 0; j < G.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!normal_form(s_polynomial(G[i], G[j]), G).is_zero()) return false;
  return true;
}

EliminationResult eliminate_params(const std::array<BiForm, 4>& f, std::size_t step_cap) {
  // Chart t = 1: f(s,1,u,v) stays homogeneous in (u,v), so the affine image
  // is the cone over the surface and the elimination ideal is principal.
  std::vector<MPoly8> gens;
  for (int i = 0; i < 4; ++i) {
    std::vector<MPoly8::Term> terms;
    Mono8 xi{};
    xi[4 + i] = 1;
    terms.push_back({xi, Rational(1)});
    for (const auto& [e, c] : f[i].terms()) {
      Mono8 m{};
      m[0] = static_cast<std::uint8_t>(e[0]);
      m[2] = static_cast<std::uint8_t>(e[2]);
      m[3] = static_cast<std::uint8_t>(e[3]);
      terms.push_back({m, -c});
    }
    gens.push_back(MPoly8(std::move(terms)));
  }
  const auto G = buchberger(gens, step_cap);

  EliminationResult res;
  res.basis_size = G.size();
  std::vector<const MPoly8*> elim;
  for (const auto& g : G)
    if (g.free_of_params()) elim.push_back(&g);
  res.eliminated_count = elim.size();
  std::stable_sort(elim.begin(), elim.end(),
                   [](const MPoly8* a, const MPoly8* b) { return a->total_degree() < b->total_degree(); });
  for (const MPoly8* g : elim) {
    const int D = g->total_degree();
    if (D == 0) continue;
    SurfForm H(D);
    for (const auto& [m, c] : g->terms()) {
      const int dt = degree(m);
      H.coeff_ref({m[4], m[5], m[6], m[7] + (D - dt)}) += c;
    }
    if (substitute_surface(H, f).is_zero()) {
      res.H = H.normalized();
      return res;
    }
  }
  throw std::runtime_error("elimination: no eliminated polynomial vanishes on the image");
}

}  // namespace tpsimp
