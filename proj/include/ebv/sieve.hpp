#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace ebv {

struct PrimePower {
  uint64_t prime;
  uint32_t exponent;
};

/// Per-integer arithmetic tables up to a fixed limit. One least-prime-factor
/// sieve is the single source of truth; everything else (Lambda, mu, omega,
/// phi, greatest prime factor) is derived from it in a single pass.
/// Immutable after build; safe for shared concurrent reads.
class SieveTables {
 public:
  static constexpr uint64_t kDefaultMemoryCap = 16ull << 30;

  /// Builds all tables for 1..limit. Throws capacity_error when limit is 0
  /// or the tables would exceed the memory cap (~22 bytes per entry, so
  /// limit = 1e8 needs about 2.3 GB and is supported under the default cap).
  static SieveTables build(uint64_t limit,
                           uint64_t memory_cap_bytes = kDefaultMemoryCap);

  uint64_t limit() const { return limit_; }

  bool is_prime(uint64_t n) const { return n >= 2 && lpf_[n] == n; }
  /// Least prime factor of n >= 2.
  uint32_t least_prime_factor(uint64_t n) const { return lpf_[n]; }
  /// Greatest prime factor of n >= 2 (returns 1 for n = 1).
  uint32_t greatest_prime_factor(uint64_t n) const { return gpf_[n]; }
  /// Lambda(n): log p when n = p^k, else 0. Natural-log units.
  double von_mangoldt(uint64_t n) const { return vm_[n]; }
  int mobius(uint64_t n) const { return mob_[n]; }
  uint32_t omega(uint64_t n) const { return omega_[n]; }
  uint64_t euler_phi(uint64_t n) const { return phi_[n]; }

  /// All primes <= limit, ascending.
  const std::vector<uint32_t>& primes() const { return primes_; }

  std::vector<PrimePower> factorize(uint64_t n) const;
  /// Divisors of n, sorted ascending.
  std::vector<uint64_t> divisors(uint64_t n) const;

  /// Binary table cache: fixed header (magic, version, limit), raw
  /// little-endian arrays, FNV-1a checksum trailer. Lambda is rebuilt from
  /// the integer tables on load.
  void save(const std::string& path) const;
  static SieveTables load(const std::string& path,
                          uint64_t memory_cap_bytes = kDefaultMemoryCap);

 private:
  SieveTables() = default;

  uint64_t limit_ = 0;
  std::vector<uint32_t> lpf_;
  std::vector<uint32_t> gpf_;
  std::vector<uint32_t> phi_;
  std::vector<double> vm_;
  std::vector<int8_t> mob_;
  std::vector<uint8_t> omega_;
  std::vector<uint32_t> primes_;

  void derive_from_lpf();
};

/// Deterministic Miller-Rabin for 64-bit inputs (12 fixed witnesses,
/// deterministic far beyond 3.3e14).
bool is_prime_u64(uint64_t n);

/// Trial-division factorization for n beyond table range.
std::vector<PrimePower> factorize_u64(uint64_t n);

/// Least k >= 1 with b^k = 1 (mod p); p must be prime and p must not
/// divide b. Factors p-1 and descends through the divisor lattice.
uint64_t multiplicative_order(uint64_t b, uint64_t p,
                              const SieveTables* tables = nullptr);

/// Least prime L(q, a) congruent to a modulo q; requires gcd(a, q) = 1.
/// Throws search_limit_error (reporting the ceiling) when the scan
/// exhausts [1, ceiling].
uint64_t least_prime_in_ap(uint64_t q, uint64_t a,
                           uint64_t ceiling = 1'000'000'000ull);

/// Calls fn(p) for every prime p <= limit in ascending order using a
/// segmented sieve; memory stays O(sqrt(limit) + segment).
void for_primes_up_to(uint64_t limit, const std::function<void(uint64_t)>& fn);

}  // namespace ebv
