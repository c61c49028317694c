#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ebv {

/// A request exceeded the configured memory or operation budget.
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bounded search ran out of room before finding its target.
class search_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Neumaier compensated accumulator. Long sums of logs at x ~ 1e9 lose
/// several digits with naive accumulation; this keeps them near full
/// precision at the cost of one extra add per term.
struct kahan_sum {
  double s = 0.0;
  double c = 0.0;

  void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

struct kahan_csum {
  kahan_sum re, im;

  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
  double abs() const { return std::abs(value()); }
};

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 1) return 0;
  uint64_t r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

/// Unbiased uniform draw from [0, n). Implemented directly on top of the
/// standardized mt19937_64 stream so reports are reproducible across
/// standard libraries.
inline uint64_t rng_below(std::mt19937_64& g, uint64_t n) {
  if (n == 0) throw std::domain_error("rng_below: n must be positive");
  uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t v;
  do {
    v = g();
  } while (v >= limit);
  return v % n;
}

/// Uniform in [0,1) with 53 random bits.
inline double rng_unit(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Ordered parallel map: f(i) for i in [0,n), work split across threads,
/// results deterministic because each index owns its output slot.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::atomic<std::size_t> next{0};
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&f, n, &next] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) break;
        f(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

/// Strict comparison p > x^theta that does not flip on floating-point
/// ties: values far from the threshold use a guarded double compare,
/// values inside the guard band fall back to the exact integer power
/// comparison p^den > x^num when theta is (within 1e-9) a small rational.
bool exceeds_pow_threshold(uint64_t p, uint64_t x, double theta);

double now_ms();

}  // namespace ebv
