#include "ebv/sieve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "ebv/util.hpp"

namespace ebv {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch())
      .count();
}

SieveTables SieveTables::build(uint64_t limit, uint64_t memory_cap_bytes) {
  if (limit == 0) throw capacity_error("SieveTables::build: limit must be >= 1");
  if (limit > UINT32_MAX)
    throw capacity_error("SieveTables::build: limit exceeds 32-bit table range");
  // lpf + gpf + phi (4 each) + vm (8) + mob + omega (1 each) = 22 bytes/entry.
  const uint64_t need = (limit + 1) * 22ull;
  if (need > memory_cap_bytes)
    throw capacity_error("SieveTables::build: limit " + std::to_string(limit) +
                         " needs ~" + std::to_string(need >> 20) +
                         " MiB, over the cap of " +
                         std::to_string(memory_cap_bytes >> 20) + " MiB");

  SieveTables t;
  t.limit_ = limit;
  t.lpf_.assign(limit + 1, 0);
  if (limit >= 1) t.lpf_[1] = 1;

  // Linear sieve: each composite is crossed exactly once via its least
  // prime factor.
  for (uint64_t i = 2; i <= limit; ++i) {
    if (t.lpf_[i] == 0) {
      t.lpf_[i] = static_cast<uint32_t>(i);
      t.primes_.push_back(static_cast<uint32_t>(i));
    }
    for (uint32_t p : t.primes_) {
      if (p > t.lpf_[i] || i * p > limit) break;
      t.lpf_[i * p] = p;
    }
  }
  t.derive_from_lpf();
  return t;
}

void SieveTables::derive_from_lpf() {
  const uint64_t limit = limit_;
  gpf_.assign(limit + 1, 0);
  phi_.assign(limit + 1, 0);
  vm_.assign(limit + 1, 0.0);
  mob_.assign(limit + 1, 0);
  omega_.assign(limit + 1, 0);
  if (limit >= 1) {
    gpf_[1] = 1;
    phi_[1] = 1;
    mob_[1] = 1;
  }
  for (uint64_t n = 2; n <= limit; ++n) {
    const uint32_t p = lpf_[n];
    const uint64_t m = n / p;
    if (m == 1) {
      gpf_[n] = p;
      phi_[n] = p - 1;
      mob_[n] = -1;
      omega_[n] = 1;
    } else if (m % p == 0) {
      gpf_[n] = gpf_[m];
      phi_[n] = phi_[m] * p;
      mob_[n] = 0;
      omega_[n] = omega_[m];
    } else {
      gpf_[n] = gpf_[m];  // all factors of m exceed p
      phi_[n] = phi_[m] * (p - 1);
      mob_[n] = static_cast<int8_t>(-mob_[m]);
      omega_[n] = static_cast<uint8_t>(omega_[m] + 1);
    }
    if (gpf_[n] == p) vm_[n] = std::log(static_cast<double>(p));
  }
}

std::vector<PrimePower> SieveTables::factorize(uint64_t n) const {
  if (n > limit_)
    throw capacity_error("SieveTables::factorize: n beyond table limit");
  std::vector<PrimePower> out;
  while (n > 1) {
    uint64_t p = lpf_[n];
    uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return out;
}

std::vector<uint64_t> SieveTables::divisors(uint64_t n) const {
  std::vector<uint64_t> divs{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = divs.size();
    uint64_t pk = 1;
    for (uint32_t k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

namespace {

constexpr char kCacheMagic[8] = {'E', 'B', 'V', 'T', 'A', 'B', '0', '1'};
constexpr uint32_t kCacheVersion = 1;

uint64_t fnv1a(const void* data, std::size_t len, uint64_t h) {
  const auto* b = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= b[i];
    h *= 1099511628211ull;
  }
  return h;
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};

}  // namespace

void SieveTables::save(const std::string& path) const {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "wb"));
  if (!f) throw std::runtime_error("SieveTables::save: cannot open " + path);
  uint64_t checksum = 1469598103934665603ull;
  auto put = [&](const void* data, std::size_t len) {
    if (std::fwrite(data, 1, len, f.get()) != len)
      throw std::runtime_error("SieveTables::save: short write to " + path);
    checksum = fnv1a(data, len, checksum);
  };
  put(kCacheMagic, sizeof kCacheMagic);
  put(&kCacheVersion, sizeof kCacheVersion);
  put(&limit_, sizeof limit_);
  put(lpf_.data(), lpf_.size() * sizeof(uint32_t));
  put(gpf_.data(), gpf_.size() * sizeof(uint32_t));
  put(phi_.data(), phi_.size() * sizeof(uint32_t));
  put(mob_.data(), mob_.size() * sizeof(int8_t));
  put(omega_.data(), omega_.size() * sizeof(uint8_t));
  if (std::fwrite(&checksum, 1, sizeof checksum, f.get()) != sizeof checksum)
    throw std::runtime_error("SieveTables::save: short write to " + path);
}

SieveTables SieveTables::load(const std::string& path,
                              uint64_t memory_cap_bytes) {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "rb"));
  if (!f) throw std::runtime_error("SieveTables::load: cannot open " + path);
  uint64_t checksum = 1469598103934665603ull;
  auto get = [&](void* data, std::size_t len) {
    if (std::fread(data, 1, len, f.get()) != len)
      throw std::runtime_error("SieveTables::load: truncated file " + path);
    checksum = fnv1a(data, len, checksum);
  };
  char magic[8];
  uint32_t version = 0;
  uint64_t limit = 0;
  get(magic, sizeof magic);
  if (std::memcmp(magic, kCacheMagic, sizeof magic) != 0)
    throw std::runtime_error("SieveTables::load: bad magic in " + path);
  get(&version, sizeof version);
  if (version != kCacheVersion)
    throw std::runtime_error("SieveTables::load: unsupported version");
  get(&limit, sizeof limit);
  if (limit == 0 || (limit + 1) * 22ull > memory_cap_bytes)
    throw capacity_error("SieveTables::load: cached limit over memory cap");

  SieveTables t;
  t.limit_ = limit;
  t.lpf_.resize(limit + 1);
  t.gpf_.resize(limit + 1);
  t.phi_.resize(limit + 1);
  t.mob_.resize(limit + 1);
  t.omega_.resize(limit + 1);
  get(t.lpf_.data(), t.lpf_.size() * sizeof(uint32_t));
  get(t.gpf_.data(), t.gpf_.size() * sizeof(uint32_t));
  get(t.phi_.data(), t.phi_.size() * sizeof(uint32_t));
  get(t.mob_.data(), t.mob_.size() * sizeof(int8_t));
  get(t.omega_.data(), t.omega_.size() * sizeof(uint8_t));
  uint64_t expect = 0;
  if (std::fread(&expect, 1, sizeof expect, f.get()) != sizeof expect)
    throw std::runtime_error("SieveTables::load: truncated checksum");
  if (expect != checksum)
    throw std::runtime_error("SieveTables::load: checksum mismatch in " + path);

  t.vm_.assign(limit + 1, 0.0);
  t.primes_.clear();
  for (uint64_t n = 2; n <= limit; ++n) {
    if (t.lpf_[n] == n) t.primes_.push_back(static_cast<uint32_t>(n));
    if (t.gpf_[n] == t.lpf_[n])
      t.vm_[n] = std::log(static_cast<double>(t.lpf_[n]));
  }
  return t;
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<PrimePower> factorize_u64(uint64_t n) {
  std::vector<PrimePower> out;
  for (uint64_t p = 2; p * p <= n; p += (p == 2) ? 1 : 2) {
    if (n % p) continue;
    uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

uint64_t multiplicative_order(uint64_t b, uint64_t p,
                              const SieveTables* tables) {
  if (!is_prime_u64(p)) throw std::domain_error("multiplicative_order: p not prime");
  if (b % p == 0) throw std::domain_error("multiplicative_order: p divides b");
  std::vector<PrimePower> fac;
  if (tables && p - 1 <= tables->limit())
    fac = tables->factorize(p - 1);
  else
    fac = factorize_u64(p - 1);
  uint64_t order = p - 1;
  for (const auto& [q, e] : fac) {
    (void)e;
    while (order % q == 0 && pow_mod(b, order / q, p) == 1) order /= q;
  }
  return order;
}

uint64_t least_prime_in_ap(uint64_t q, uint64_t a, uint64_t ceiling) {
  if (q == 0) throw std::domain_error("least_prime_in_ap: q must be >= 1");
  a %= q;
  if (std::gcd(a, q) != 1 && q != 1)
    throw std::domain_error("least_prime_in_ap: gcd(a, q) must be 1");
  uint64_t n = (q == 1) ? 2 : a;
  if (n == 0) n = q;
  for (; n <= ceiling; n += q) {
    if (n >= 2 && is_prime_u64(n)) return n;
  }
  throw search_limit_error("least_prime_in_ap: no prime = " + std::to_string(a) +
                           " (mod " + std::to_string(q) + ") up to ceiling " +
                           std::to_string(ceiling));
}

void for_primes_up_to(uint64_t limit, const std::function<void(uint64_t)>& fn) {
  if (limit < 2) return;
  const uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  std::vector<uint8_t> small(root + 1, 1);
  std::vector<uint64_t> base;
  for (uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  }
  const uint64_t kSegment = 1u << 21;
  std::vector<uint8_t> seg;
  for (uint64_t lo = 2; lo <= limit; lo += kSegment) {
    const uint64_t hi = std::min(limit, lo + kSegment - 1);
    seg.assign(hi - lo + 1, 1);
    for (uint64_t p : base) {
      if (p * p > hi) break;
      uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (uint64_t j = start; j <= hi; j += p) seg[j - lo] = 0;
    }
    for (uint64_t n = lo; n <= hi; ++n)
      if (seg[n - lo]) fn(n);
  }
}

bool exceeds_pow_threshold(uint64_t p, uint64_t x, double theta) {
  if (theta <= 0.0) return p > 1;
  const long double t =
      std::exp(static_cast<long double>(theta) * std::log(static_cast<long double>(x)));
  const long double guard = t * 1e-12L;
  if (static_cast<long double>(p) > t + guard) return true;
  if (static_cast<long double>(p) < t - guard) return false;
  // Inside the guard band: try theta ~ num/den with a small denominator and
  // compare p^den vs x^num in exact integer arithmetic.
  for (int den = 1; den <= 6; ++den) {
    const double scaled = theta * den;
    const long long num = std::llround(scaled);
    if (std::abs(scaled - static_cast<double>(num)) > 1e-9) continue;
    const unsigned __int128 kSat = ~static_cast<unsigned __int128>(0);
    auto pow_sat = [&](uint64_t base, long long e) -> unsigned __int128 {
      unsigned __int128 r = 1;
      for (long long i = 0; i < e; ++i) {
        if (base != 0 && r > kSat / base) return kSat;
        r *= base;
      }
      return r;
    };
    const unsigned __int128 lhs = pow_sat(p, den);
    const unsigned __int128 rhs = pow_sat(x, num);
    if (lhs == kSat && rhs == kSat) break;  // ambiguous, fall through
    return lhs > rhs;
  }
  return static_cast<long double>(p) > t;
}

}  // namespace ebv
