#include "ebv/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ebv/sieve.hpp"
#include "ebv/util.hpp"

namespace ebv {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

uint64_t crt_lift(uint64_t r, uint64_t m, uint64_t q) {
  // x = r (mod m), x = 1 (mod q/m), with gcd(m, q/m) = 1.
  const uint64_t rest = q / m;
  if (rest == 1) return r % q;
  // x = r + m*t with r + m*t = 1 (mod rest).
  uint64_t minv = 1;
  {
    // modular inverse of m mod rest by extended Euclid
    int64_t a = static_cast<int64_t>(m % rest), b = static_cast<int64_t>(rest);
    int64_t x0 = 1, x1 = 0;
    while (b) {
      int64_t qq = a / b;
      a -= qq * b;
      std::swap(a, b);
      x0 -= qq * x1;
      std::swap(x0, x1);
    }
    int64_t inv = x0 % static_cast<int64_t>(rest);
    if (inv < 0) inv += static_cast<int64_t>(rest);
    minv = static_cast<uint64_t>(inv);
  }
  uint64_t delta = (1 + rest - (r % rest)) % rest;
  uint64_t t = mul_mod(delta, minv, rest);
  return (r + m * t) % q;
}

uint64_t primitive_root_prime_power(uint64_t p, uint32_t e) {
  // Least primitive root mod p, lifted to p^e when needed.
  const uint64_t order = p - 1;
  auto fac = factorize_u64(order);
  uint64_t g = 0;
  for (uint64_t cand = 2; cand < p; ++cand) {
    bool ok = true;
    for (const auto& [f, m] : fac) {
      (void)m;
      if (pow_mod(cand, order / f, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      g = cand;
      break;
    }
  }
  if (e == 1) return g;
  uint64_t pe = 1;
  for (uint32_t i = 0; i < e; ++i) pe *= p;
  // g stays primitive mod p^e iff g^(p-1) != 1 (mod p^2).
  if (pow_mod(g, p - 1, p * p) == 1) g += p;
  return g % pe;
}

}  // namespace

CharacterGroup::CharacterGroup(uint64_t q, uint64_t modulus_cap) : q_(q) {
  if (q == 0) throw std::domain_error("CharacterGroup: modulus must be >= 1");
  if (q > modulus_cap)
    throw capacity_error("CharacterGroup: modulus " + std::to_string(q) +
                         " exceeds cap " + std::to_string(modulus_cap));

  auto fac = factorize_u64(q);
  for (const auto& [p, e] : fac) {
    uint64_t pe = 1;
    for (uint32_t i = 0; i < e; ++i) pe *= p;
    Component comp{pe, {}};
    if (p == 2) {
      if (e == 2) {
        generators_.push_back({crt_lift(3, pe, q), 2});
        comp.gen_ids.push_back(generators_.size() - 1);
        std::vector<uint32_t> table(pe, 0);
        table[3] = 1;
        dlog_.push_back(std::move(table));
        dlog_modulus_.push_back(pe);
      } else if (e >= 3) {
        const uint64_t half_order = pe / 4;  // order of 5 mod 2^e
        generators_.push_back({crt_lift(pe - 1, pe, q), 2});
        comp.gen_ids.push_back(generators_.size() - 1);
        generators_.push_back({crt_lift(5, pe, q), half_order});
        comp.gen_ids.push_back(generators_.size() - 1);
        std::vector<uint32_t> sign_table(pe, 0), five_table(pe, 0);
        for (uint32_t s = 0; s < 2; ++s) {
          uint64_t v = (s == 0) ? 1 : pe - 1;
          for (uint64_t t = 0; t < half_order; ++t) {
            sign_table[v] = s;
            five_table[v] = static_cast<uint32_t>(t);
            v = mul_mod(v, 5, pe);
          }
        }
        dlog_.push_back(std::move(sign_table));
        dlog_modulus_.push_back(pe);
        dlog_.push_back(std::move(five_table));
        dlog_modulus_.push_back(pe);
      }
      // e == 1: trivial component, no generator
    } else {
      const uint64_t order = pe / p * (p - 1);
      const uint64_t g = primitive_root_prime_power(p, e);
      generators_.push_back({crt_lift(g, pe, q), order});
      comp.gen_ids.push_back(generators_.size() - 1);
      std::vector<uint32_t> table(pe, 0);
      uint64_t v = 1;
      for (uint64_t k = 0; k < order; ++k) {
        table[v] = static_cast<uint32_t>(k);
        v = mul_mod(v, g, pe);
      }
      dlog_.push_back(std::move(table));
      dlog_modulus_.push_back(pe);
    }
    components_.push_back(std::move(comp));
  }

  phi_ = 1;
  exponent_ = 1;
  for (const auto& g : generators_) {
    phi_ *= g.order;
    exponent_ = std::lcm(exponent_, g.order);
  }
  roots_.resize(exponent_);
  for (uint64_t k = 0; k < exponent_; ++k) {
    double angle = kTwoPi * static_cast<double>(k) / static_cast<double>(exponent_);
    roots_[k] = {std::cos(angle), std::sin(angle)};
  }
  angle_stride_.resize(generators_.size());
  for (std::size_t j = 0; j < generators_.size(); ++j)
    angle_stride_[j] = exponent_ / generators_[j].order;
}

DirichletCharacter CharacterGroup::character(std::size_t index) const {
  if (index >= phi_) throw std::out_of_range("CharacterGroup::character index");
  std::vector<uint32_t> exps(generators_.size());
  std::size_t rem = index;
  for (std::size_t j = 0; j < generators_.size(); ++j) {
    exps[j] = static_cast<uint32_t>(rem % generators_[j].order);
    rem /= generators_[j].order;
  }
  return DirichletCharacter(this, std::move(exps), index);
}

std::vector<DirichletCharacter> CharacterGroup::all_characters() const {
  std::vector<DirichletCharacter> out;
  out.reserve(phi_);
  for (std::size_t i = 0; i < phi_; ++i) out.push_back(character(i));
  return out;
}

int64_t CharacterGroup::root_index(const std::vector<uint32_t>& exps,
                                   uint64_t n) const {
  uint64_t r = n % q_;
  if (q_ == 1) return 0;
  if (std::gcd(r, q_) != 1) return -1;
  uint64_t k = 0;
  for (std::size_t j = 0; j < generators_.size(); ++j) {
    const uint64_t a = dlog_[j][r % dlog_modulus_[j]];
    k += (exps[j] * a % generators_[j].order) * angle_stride_[j] % exponent_;
    if (k >= exponent_) k -= exponent_;
  }
  return static_cast<int64_t>(k % exponent_);
}

bool CharacterGroup::trivial_on_kernel(const std::vector<uint32_t>& exps,
                                       uint64_t d) const {
  for (uint64_t n = 1 + d; n < q_; n += d) {
    if (std::gcd(n, q_) != 1) continue;
    if (root_index(exps, n) != 0) return false;
  }
  return true;
}

uint64_t CharacterGroup::conductor_of(const std::vector<uint32_t>& exps) const {
  for (uint64_t d = 1; d <= q_; ++d) {
    if (q_ % d != 0) continue;
    if (trivial_on_kernel(exps, d)) return d;
  }
  return q_;
}

bool CharacterGroup::primitive_fast(const std::vector<uint32_t>& exps) const {
  if (q_ == 1) return true;
  for (const auto& [p, e] : factorize_u64(q_)) {
    (void)e;
    if (trivial_on_kernel(exps, q_ / p)) return false;
  }
  return true;
}

std::vector<DirichletCharacter> CharacterGroup::primitive_characters() const {
  std::vector<DirichletCharacter> out;
  for (std::size_t i = 0; i < phi_; ++i) {
    DirichletCharacter chi = character(i);
    if (primitive_fast(chi.exponents())) out.push_back(std::move(chi));
  }
  return out;
}

uint64_t CharacterGroup::primitive_count_formula() const {
  // sum over d | q of mu(d) phi(q/d)
  int64_t total = 0;
  for (uint64_t d = 1; d <= q_; ++d) {
    if (q_ % d != 0) continue;
    int mu = 1;
    for (const auto& [p, e] : factorize_u64(d)) {
      (void)p;
      if (e > 1) {
        mu = 0;
        break;
      }
      mu = -mu;
    }
    if (mu == 0) continue;
    uint64_t cof = q_ / d;
    uint64_t phi = cof;
    for (const auto& [p, e] : factorize_u64(cof)) {
      (void)e;
      phi -= phi / p;
    }
    total += mu * static_cast<int64_t>(phi);
  }
  return static_cast<uint64_t>(total);
}

DirichletCharacter CharacterGroup::inducing_character(
    const DirichletCharacter& chi, const CharacterGroup& star_group) {
  const CharacterGroup& g = chi.group();
  const uint64_t q = g.modulus();
  const uint64_t qs = star_group.modulus();
  if (q % qs != 0)
    throw std::domain_error("inducing_character: star modulus must divide q");
  const uint64_t l1 = star_group.root_order();
  const uint64_t l2 = g.root_order();
  for (std::size_t i = 0; i < star_group.size(); ++i) {
    DirichletCharacter cand = star_group.character(i);
    bool match = true;
    for (uint64_t n = 1; n <= q && match; ++n) {
      if (std::gcd(n, q) != 1) continue;
      const int64_t k1 = cand.root_index(n);
      const int64_t k2 = chi.root_index(n);
      // e^(2 pi i k1/l1) == e^(2 pi i k2/l2) iff k1 l2 = k2 l1 (mod l1 l2)
      if (static_cast<unsigned __int128>(k1) * l2 % (l1 * l2) !=
          static_cast<unsigned __int128>(k2) * l1 % (l1 * l2))
        match = false;
    }
    if (match) return cand;
  }
  throw std::logic_error("inducing_character: no inducing character found");
}

std::complex<double> DirichletCharacter::operator()(uint64_t n) const {
  const int64_t k = group_->root_index(exps_, n);
  if (k < 0) return {0.0, 0.0};
  return group_->roots_[static_cast<std::size_t>(k)];
}

int64_t DirichletCharacter::root_index(uint64_t n) const {
  return group_->root_index(exps_, n);
}

uint64_t DirichletCharacter::conductor() const {
  if (!conductor_cache_) conductor_cache_ = group_->conductor_of(exps_);
  return *conductor_cache_;
}

bool DirichletCharacter::is_primitive() const {
  return group_->primitive_fast(exps_);
}

bool DirichletCharacter::is_principal() const {
  return std::all_of(exps_.begin(), exps_.end(),
                     [](uint32_t e) { return e == 0; });
}

std::vector<int32_t> DirichletCharacter::value_table() const {
  const uint64_t q = group_->modulus();
  std::vector<int32_t> table(q, -1);
  if (q == 1) {
    table[0] = 0;
    return table;
  }
  for (uint64_t r = 0; r < q; ++r)
    table[r] = static_cast<int32_t>(group_->root_index(exps_, r));
  return table;
}

}  // namespace ebv
