// Independent test oracles. Everything here recomputes arithmetic facts by
// the most direct method available (trial division, successive powers,
// element-by-element scans) so the fast implementations have something
// honest to be checked against. Nothing in this header may call into the
// code paths it is used to verify.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

inline bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::pair<uint64_t, uint32_t>> factor(uint64_t n) {
  std::vector<std::pair<uint64_t, uint32_t>> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    uint32_t e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.push_back({d, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline int mobius(uint64_t n) {
  int m = 1;
  for (const auto& [p, e] : factor(n)) {
    (void)p;
    if (e > 1) return 0;
    m = -m;
  }
  return m;
}

inline uint32_t omega(uint64_t n) {
  return static_cast<uint32_t>(factor(n).size());
}

inline uint64_t euler_phi(uint64_t n) {
  uint64_t r = n;
  for (const auto& [p, e] : factor(n)) {
    (void)e;
    r -= r / p;
  }
  return r;
}

inline uint64_t greatest_prime_factor(uint64_t n) {
  auto f = factor(n);
  return f.empty() ? 1 : f.back().first;
}

inline double von_mangoldt(uint64_t n) {
  auto f = factor(n);
  return f.size() == 1 ? std::log(static_cast<double>(f[0].first)) : 0.0;
}

/// Multiplicative order by successive powers (no factoring shortcuts).
inline uint64_t mult_order_bruteforce(uint64_t b, uint64_t p) {
  uint64_t v = b % p, k = 1;
  while (v != 1) {
    v = (static_cast<unsigned __int128>(v) * b) % p;
    ++k;
  }
  return k;
}

/// All divisors of n by trial division, ascending.
inline std::vector<uint64_t> divisors(uint64_t n) {
  std::vector<uint64_t> small, large;
  for (uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
  return small;
}

/// Character values on 1..q-1 for the character mod q (q prime) sending the
/// given generator to e^(2*pi*i*exponent/(q-1)), built from a brute-force
/// discrete-log table.
inline std::vector<std::complex<double>> prime_character_table(
    uint64_t q, uint64_t generator, uint64_t exponent) {
  std::map<uint64_t, uint64_t> dlog;
  uint64_t v = 1;
  for (uint64_t k = 0; k < q - 1; ++k) {
    dlog[v] = k;
    v = (static_cast<unsigned __int128>(v) * generator) % q;
  }
  std::vector<std::complex<double>> vals(q);
  vals[0] = 0.0;
  for (uint64_t n = 1; n < q; ++n) {
    const double ang = 2.0 * M_PI * static_cast<double>(exponent * dlog[n] % (q - 1)) /
                       static_cast<double>(q - 1);
    vals[n] = {std::cos(ang), std::sin(ang)};
  }
  return vals;
}

}  // namespace oracle
