#include "tpsimp/interpolate.hpp"

#include <stdexcept>

namespace tpsimp {

LowerSetInterpolator::LowerSetInterpolator(const PrimeField& f, int degree,
                                           std::array<std::vector<std::uint64_t>, 3> nodes)
    : f_(f), d_(degree), n_(static_cast<std::size_t>(degree) + 1), nodes_(std::move(nodes)) {
  for (int axis = 0; axis < 3; ++axis) {
    const auto& x = nodes_[axis];
    if (x.size() != n_) throw std::invalid_argument("LowerSetInterpolator: need D+1 nodes per axis");
    auto& tab = inv_diff_[axis];
    tab.assign(n_, std::vector<std::uint64_t>(n_, 0));
    for (std::size_t l = 1; l < n_; ++l)
      for (std::size_t i = l; i < n_; ++i) {
        const std::uint64_t diff = f_.sub(x[i], x[i - l]);
        if (diff == 0) throw std::invalid_argument("LowerSetInterpolator: repeated node");
        tab[l][i] = f_.inv(diff);
      }
  }
}

namespace {

// Visits every axis-parallel line of the lower set along `axis`: calls
// fn(m, at) where at(t) is the flat position of the t-th point, t = 0..m.
template <class Pos, class Fn>
void for_each_line(int d, int axis, Pos pos, Fn fn) {
  for (int u = 0; u <= d; ++u)
    for (int w = 0; u + w <= d; ++w) {
      const int m = d - u - w;
      auto at = [&](int t) {
        switch (axis) {
          case 0: return pos(t, u, w);
          case 1: return pos(u, t, w);
          default: return pos(u, w, t);
        }
      };
      fn(m, at);
    }
}

}  // namespace

void LowerSetInterpolator::newton_1d(std::vector<std::uint64_t>& v, int axis) const {
  const auto& tab = inv_diff_[axis];
  auto pos = [this](int i, int j, int k) { return this->pos(i, j, k); };
  for_each_line(d_, axis, pos, [&](int m, auto at) {
    for (int l = 1; l <= m; ++l)
      for (int i = m; i >= l; --i) {
        const std::size_t pi = at(i), pj = at(i - 1);
        v[pi] = f_.mul(f_.sub(v[pi], v[pj]), tab[l][i]);
      }
  });
}

void LowerSetInterpolator::to_monomial_1d(std::vector<std::uint64_t>& v, int axis) const {
  const auto& x = nodes_[axis];
  auto pos = [this](int i, int j, int k) { return this->pos(i, j, k); };
  std::vector<std::uint64_t> res(n_ + 1);
  for_each_line(d_, axis, pos, [&](int m, auto at) {
    std::fill(res.begin(), res.end(), 0);
    res[0] = v[at(m)];
    for (int i = m - 1; i >= 0; --i) {
      // res <- res * (x - x_i) + c_i
      const int deg = m - 1 - i;
      for (int k = deg + 1; k >= 0; --k) {
        const std::uint64_t lower = k > 0 ? res[k - 1] : 0;
        res[k] = f_.sub(lower, f_.mul(x[i], res[k]));
      }
      res[0] = f_.add(res[0], v[at(i)]);
    }
    for (int t = 0; t <= m; ++t) v[at(t)] = res[t];
  });
}

void LowerSetInterpolator::solve(std::vector<std::uint64_t>& v) const {
  if (v.size() != value_size()) throw std::invalid_argument("LowerSetInterpolator::solve: bad value array");
  for (int axis = 0; axis < 3; ++axis) newton_1d(v, axis);
  for (int axis = 0; axis < 3; ++axis) to_monomial_1d(v, axis);
}

void RationalLifter::reset() {
  for (auto& x : acc_) x = 0;
  modulus_ = 0;
  primes_ = 0;
  den_lcm_ = 1;
  last_failure_ = 0;
}

void RationalLifter::add_image(std::span<const std::uint64_t> residues, std::uint64_t p) {
  crt_accumulate(acc_, modulus_, residues, p);
  ++primes_;
}

std::optional<std::vector<Rational>> RationalLifter::try_reconstruct() {
  if (primes_ == 0) return std::nullopt;
  Integer bound;
  mpz_fdiv_q_2exp(bound.get_mpz_t(), modulus_.get_mpz_t(), 1);
  mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
  Integer half;
  mpz_fdiv_q_2exp(half.get_mpz_t(), modulus_.get_mpz_t(), 1);

  std::vector<Rational> out(n_);
  Integer w;
  for (std::size_t step = 0; step < n_; ++step) {
    const std::size_t idx = (last_failure_ + step) % n_;
    const Integer& u = acc_[idx];
    if (u == 0) continue;
    if (den_lcm_ <= bound) {
      w = den_lcm_ * u;
      mpz_mod(w.get_mpz_t(), w.get_mpz_t(), modulus_.get_mpz_t());
      if (w > half) w -= modulus_;
      if (abs(w) <= bound) {
        out[idx] = Rational(w, den_lcm_);
        out[idx].canonicalize();
        continue;
      }
    }
    auto r = rational_reconstruct(u, modulus_);
    if (!r) {
      last_failure_ = idx;
      return std::nullopt;
    }
    mpz_lcm(den_lcm_.get_mpz_t(), den_lcm_.get_mpz_t(), r->get_den_mpz_t());
    out[idx] = *r;
  }
  return out;
}

}  // namespace tpsimp
