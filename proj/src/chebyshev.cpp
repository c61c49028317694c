#include "ebv/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ebv/util.hpp"

namespace ebv {

ChebyshevSums::ChebyshevSums(const SieveTables& tables) : tables_(&tables) {
  const uint64_t n_max = tables.limit();
  jump_n_.reserve(tables.primes().size() + 64);
  for (uint64_t n = 2; n <= n_max; ++n) {
    const double lam = tables.von_mangoldt(n);
    if (lam != 0.0) {
      jump_n_.push_back(static_cast<uint32_t>(n));
      jump_lambda_.push_back(lam);
    }
  }
  psi_prefix_.resize(jump_n_.size());
  pi1_prefix_.resize(jump_n_.size());
  kahan_sum psi_acc, pi1_acc;
  for (std::size_t i = 0; i < jump_n_.size(); ++i) {
    psi_acc.add(jump_lambda_[i]);
    psi_prefix_[i] = psi_acc.value();
    pi1_acc.add(jump_lambda_[i] / std::log(static_cast<double>(jump_n_[i])));
    pi1_prefix_[i] = pi1_acc.value();
  }
  theta_prefix_.resize(tables.primes().size());
  kahan_sum theta_acc;
  for (std::size_t i = 0; i < tables.primes().size(); ++i) {
    theta_acc.add(std::log(static_cast<double>(tables.primes()[i])));
    theta_prefix_[i] = theta_acc.value();
  }
}

void ChebyshevSums::check_range(double x) const {
  if (!(x >= 0))
    throw std::domain_error("ChebyshevSums: x must be >= 0");
  if (x > static_cast<double>(tables_->limit()))
    throw capacity_error("ChebyshevSums: x = " + std::to_string(x) +
                         " beyond sieve limit " + std::to_string(tables_->limit()));
}

std::size_t ChebyshevSums::jumps_upto(double x) const {
  const double fx = std::floor(x);
  if (fx < 2) return 0;
  const uint32_t n = static_cast<uint32_t>(fx);
  return static_cast<std::size_t>(
      std::upper_bound(jump_n_.begin(), jump_n_.end(), n) - jump_n_.begin());
}

double ChebyshevSums::psi(double x) const {
  check_range(x);
  const std::size_t k = jumps_upto(x);
  return k == 0 ? 0.0 : psi_prefix_[k - 1];
}

double ChebyshevSums::pi1(double x) const {
  check_range(x);
  const std::size_t k = jumps_upto(x);
  return k == 0 ? 0.0 : pi1_prefix_[k - 1];
}

double ChebyshevSums::theta(double x) const {
  check_range(x);
  const auto& primes = tables_->primes();
  if (x < 2) return 0.0;
  const uint32_t n = static_cast<uint32_t>(std::floor(x));
  const std::size_t k = static_cast<std::size_t>(
      std::upper_bound(primes.begin(), primes.end(), n) - primes.begin());
  return k == 0 ? 0.0 : theta_prefix_[k - 1];
}

uint64_t ChebyshevSums::pi(double x) const {
  check_range(x);
  const auto& primes = tables_->primes();
  if (x < 2) return 0;
  const uint32_t n = static_cast<uint32_t>(std::floor(x));
  return static_cast<uint64_t>(
      std::upper_bound(primes.begin(), primes.end(), n) - primes.begin());
}

double ChebyshevSums::psi_progression(double x, uint64_t q, uint64_t a) const {
  check_range(x);
  if (q == 0) throw std::domain_error("psi_progression: q must be >= 1");
  a %= q;
  const std::size_t k = jumps_upto(x);
  kahan_sum acc;
  for (std::size_t i = 0; i < k; ++i)
    if (jump_n_[i] % q == a) acc.add(jump_lambda_[i]);
  return acc.value();
}

uint64_t ChebyshevSums::pi_progression(double x, uint64_t q, uint64_t a) const {
  check_range(x);
  if (q == 0) throw std::domain_error("pi_progression: q must be >= 1");
  a %= q;
  const auto& primes = tables_->primes();
  uint64_t count = 0;
  for (uint32_t p : primes) {
    if (p > x) break;
    if (p % q == a) ++count;
  }
  return count;
}

double ChebyshevSums::pi1_progression(double x, uint64_t q, uint64_t a) const {
  check_range(x);
  if (q == 0) throw std::domain_error("pi1_progression: q must be >= 1");
  a %= q;
  const std::size_t k = jumps_upto(x);
  kahan_sum acc;
  for (std::size_t i = 0; i < k; ++i)
    if (jump_n_[i] % q == a)
      acc.add(jump_lambda_[i] / std::log(static_cast<double>(jump_n_[i])));
  return acc.value();
}

std::complex<double> ChebyshevSums::psi_twisted(
    double x, const DirichletCharacter& chi) const {
  check_range(x);
  const uint64_t q = chi.group().modulus();
  const auto table = chi.value_table();
  const auto& roots = chi.group().roots();
  kahan_csum acc;
  const std::size_t k = jumps_upto(x);
  for (std::size_t i = 0; i < k; ++i) {
    const int32_t idx = table[jump_n_[i] % q];
    if (idx >= 0) acc.add(jump_lambda_[i] * roots[static_cast<std::size_t>(idx)]);
  }
  return acc.value();
}

TwistedMaxReport ChebyshevSums::psi_twisted_prefix_max(
    double x, const DirichletCharacter& chi) const {
  check_range(x);
  const uint64_t q = chi.group().modulus();
  const auto table = chi.value_table();
  const auto& roots = chi.group().roots();

  TwistedMaxReport rep;
  rep.modulus = q;
  rep.character_index = chi.index();
  rep.x = x;
  kahan_csum acc;
  const std::size_t kk = jumps_upto(x);
  for (std::size_t i = 0; i < kk; ++i) {
    const int32_t idx = table[jump_n_[i] % q];
    if (idx < 0) continue;
    acc.add(jump_lambda_[i] * roots[static_cast<std::size_t>(idx)]);
    const double mag = acc.abs();
    if (mag > rep.max_abs) {
      rep.max_abs = mag;
      rep.argmax_y = jump_n_[i];
    }
  }
  rep.endpoint_abs = acc.abs();
  return rep;
}

template <class Weight>
DeviationMaxReport ChebyshevSums::deviation_scan(double x, uint64_t q,
                                                 Weight weight) const {
  if (q == 0) throw std::domain_error("deviation_max: q must be >= 1");
  if (!(x >= 2)) throw std::domain_error("deviation_max: x must be >= 2");
  check_range(x);

  DeviationMaxReport rep;
  rep.modulus = q;
  rep.x = x;

  // coprime residues and their slots
  std::vector<uint32_t> slot(q, UINT32_MAX);
  for (uint64_t a = 0; a < q; ++a) {
    if (std::gcd(a == 0 ? q : a, q) == 1) {
      slot[a] = static_cast<uint32_t>(rep.residues.size());
      rep.residues.push_back({a, 0.0, 2.0, 0.0, 0.0});
    }
  }
  const double phi = static_cast<double>(rep.residues.size());

  std::vector<kahan_sum> class_sum(rep.residues.size());
  std::vector<double> max_d(rep.residues.size(), 0.0);
  std::vector<double> min_d(rep.residues.size(), 0.0);
  std::vector<double> y_at_max(rep.residues.size(), 2.0);
  std::vector<double> y_at_min(rep.residues.size(), 2.0);
  kahan_sum global;

  const std::size_t kk = jumps_upto(x);
  for (std::size_t i = 0; i < kk; ++i) {
    const uint32_t n = jump_n_[i];
    const double v = weight(i);
    if (v == 0.0) continue;
    const uint32_t s = slot[n % q];
    if (s != UINT32_MAX) {
      // just below the jump: the per-class deviation is at its local minimum
      if (n > 2) {
        const double before = class_sum[s].value() - global.value();
        if (before < min_d[s]) {
          min_d[s] = before;
          y_at_min[s] = std::nextafter(static_cast<double>(n), 0.0);
        }
      }
      class_sum[s].add(v);
      global.add(v / phi);
      const double after = class_sum[s].value() - global.value();
      if (after > max_d[s]) {
        max_d[s] = after;
        y_at_max[s] = n;
      }
    } else {
      global.add(v / phi);
    }
  }
  // endpoint y = x closes every class's final plateau
  for (std::size_t s = 0; s < rep.residues.size(); ++s) {
    const double at_end = class_sum[s].value() - global.value();
    if (at_end < min_d[s]) {
      min_d[s] = at_end;
      y_at_min[s] = x;
    }
  }

  for (std::size_t s = 0; s < rep.residues.size(); ++s) {
    auto& r = rep.residues[s];
    r.max_signed = max_d[s];
    r.min_signed = min_d[s];
    if (max_d[s] >= -min_d[s]) {
      r.max_abs = max_d[s];
      r.argmax_y = y_at_max[s];
    } else {
      r.max_abs = -min_d[s];
      r.argmax_y = y_at_min[s];
    }
    if (r.max_abs > rep.overall_max) {
      rep.overall_max = r.max_abs;
      rep.argmax_a = r.a;
      rep.argmax_y = r.argmax_y;
    }
  }
  return rep;
}

DeviationMaxReport ChebyshevSums::deviation_max(double x, uint64_t q) const {
  return deviation_scan(x, q, [this](std::size_t i) { return jump_lambda_[i]; });
}

DeviationMaxReport ChebyshevSums::deviation_max_pi(double x, uint64_t q) const {
  return deviation_scan(x, q, [this](std::size_t i) {
    const uint32_t n = jump_n_[i];
    return tables_->is_prime(n) ? 1.0 : 0.0;
  });
}

double ChebyshevSums::mvt_lhs(double x, double Q, uint64_t ops_budget) const {
  if (!(x >= 4)) throw std::domain_error("mvt_lhs: x must be >= 4");
  check_range(x);
  if (Q < 1) return 0.0;

  const uint64_t q_max = static_cast<uint64_t>(std::floor(Q));
  // cost estimate: one jump scan per primitive character
  uint64_t characters = 0;
  for (uint64_t q = 1; q <= q_max; ++q) {
    uint64_t phi = q;
    for (const auto& [p, e] : factorize_u64(q)) {
      (void)e;
      phi -= phi / p;
    }
    characters += phi;  // upper bound on primitive count
  }
  const uint64_t est = characters * jumps_upto(x);
  if (est > ops_budget)
    throw capacity_error("mvt_lhs: estimated " + std::to_string(est) +
                         " character evaluations exceed budget " +
                         std::to_string(ops_budget));

  kahan_sum total;
  for (uint64_t q = 1; q <= q_max; ++q) {
    CharacterGroup group(q);
    const double weight =
        static_cast<double>(q) / static_cast<double>(group.phi());
    for (const auto& chi : group.primitive_characters()) {
      total.add(weight * psi_twisted_prefix_max(x, chi).max_abs);
    }
  }
  return total.value();
}

double ChebyshevSums::bv_lhs_psi(double x, double Q, double Q1) const {
  if (!(x >= 2)) throw std::domain_error("bv_lhs_psi: x must be >= 2");
  check_range(x);
  kahan_sum total;
  const uint64_t q_max = static_cast<uint64_t>(std::floor(Q));
  for (uint64_t q = 1; q <= q_max; ++q) {
    if (q > 1 && static_cast<double>(tables_->least_prime_factor(q)) <= Q1)
      continue;  // l(1) = +infinity admits q = 1 (deviation is 0 anyway)
    total.add(deviation_max(x, q).overall_max);
  }
  return total.value();
}

double ChebyshevSums::bv_lhs_pi(double x, double Q, double Q1) const {
  if (!(x >= 2)) throw std::domain_error("bv_lhs_pi: x must be >= 2");
  check_range(x);
  kahan_sum total;
  const uint64_t q_max = static_cast<uint64_t>(std::floor(Q));
  for (uint64_t q = 1; q <= q_max; ++q) {
    if (q > 1 && static_cast<double>(tables_->least_prime_factor(q)) <= Q1)
      continue;
    total.add(deviation_max_pi(x, q).overall_max);
  }
  return total.value();
}

}  // namespace ebv
