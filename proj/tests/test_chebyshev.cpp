#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <random>

#include "ebv/chebyshev.hpp"
#include "ebv/util.hpp"
#include "oracles.hpp"

using namespace ebv;
using cd = std::complex<double>;

namespace {

const SieveTables& tables_1e6() {
  static SieveTables t = SieveTables::build(1'000'000);
  return t;
}

const ChebyshevSums& sums_1e6() {
  static ChebyshevSums cs(tables_1e6());
  return cs;
}

// O(x * phi(q)) reference: evaluates every deviation at every integer y.
struct BruteDeviation {
  std::vector<uint64_t> residues;
  std::vector<double> max_abs;
  double overall = 0;
};

BruteDeviation brute_deviation(const SieveTables& t, uint64_t x, uint64_t q,
                               bool pi_weight) {
  BruteDeviation out;
  std::vector<int> slot(q, -1);
  for (uint64_t a = 0; a < q; ++a) {
    uint64_t g = (a == 0) ? q : std::gcd(a, q);
    if (g == 1 || q == 1) {
      slot[a] = static_cast<int>(out.residues.size());
      out.residues.push_back(a);
    }
  }
  out.max_abs.assign(out.residues.size(), 0.0);
  const double phi = static_cast<double>(out.residues.size());
  std::vector<double> cls(out.residues.size(), 0.0);
  double global = 0.0;
  for (uint64_t y = 2; y <= x; ++y) {
    const double v =
        pi_weight ? (t.is_prime(y) ? 1.0 : 0.0) : t.von_mangoldt(y);
    if (v != 0.0) {
      if (slot[y % q] >= 0) cls[slot[y % q]] += v;
      global += v / phi;
    }
    for (std::size_t s = 0; s < cls.size(); ++s) {
      const double d = std::abs(cls[s] - global);
      if (d > out.max_abs[s]) out.max_abs[s] = d;
      if (d > out.overall) out.overall = d;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("psi, theta, pi basics") {
  const auto& cs = sums_1e6();
  CHECK(cs.psi(1) == 0.0);
  CHECK(cs.pi(2) == 1);
  CHECK(cs.psi(113) / 113.0 == doctest::Approx(1.03883).epsilon(1e-4));
  const double psi10 = 3 * std::log(2.0) + 2 * std::log(3.0) + std::log(5.0) +
                       std::log(7.0);
  CHECK(cs.psi(10) == doctest::Approx(psi10).epsilon(1e-14));
  CHECK(cs.theta(1) == 0.0);
  CHECK(cs.theta(2) == doctest::Approx(std::log(2.0)));
  CHECK(cs.pi(1'000'000) == 78498);
  CHECK_THROWS_AS(cs.psi(2'000'000), capacity_error);
}

TEST_CASE("theta(1e6) matches reverse-order summation oracle") {
  const auto& cs = sums_1e6();
  const auto& primes = tables_1e6().primes();
  long double rev = 0.0L;  // reverse order, extended precision
  for (auto it = primes.rbegin(); it != primes.rend(); ++it)
    rev += std::log(static_cast<long double>(*it));
  CHECK(cs.theta(1'000'000) ==
        doctest::Approx(static_cast<double>(rev)).epsilon(1e-6));
}

TEST_CASE("progression sums") {
  const auto& cs = sums_1e6();
  // psi(10; 2, 1): n in {3, 5, 7, 9}
  const double expect = 2 * std::log(3.0) + std::log(5.0) + std::log(7.0);
  CHECK(cs.psi_progression(10, 2, 1) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(cs.pi_progression(20, 4, 1) == 3);  // 5, 13, 17
  for (double x : {10.0, 100.0, 1000.0})
    CHECK(cs.pi_progression(x, 1, 0) == cs.pi(x));
  // partition of psi by residue classes
  for (uint64_t q : {1ull, 2ull, 3ull, 6ull, 7ull, 8ull}) {
    for (double x : {1000.0, 9973.0}) {
      kahan_sum acc;
      for (uint64_t a = 0; a < q; ++a) acc.add(cs.psi_progression(x, q, a));
      REQUIRE(acc.value() == doctest::Approx(cs.psi(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("pi1 prefix sums") {
  const auto& cs = sums_1e6();
  CHECK(cs.pi1(3) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(cs.pi1(4) == doctest::Approx(2.5).epsilon(1e-15));
  // direct 1/k oracle
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    uint64_t x = 100 + rng_below(rng, 20'000);
    double direct = 0.0;
    for (uint64_t p = 2; p <= x; ++p) {
      if (!oracle::is_prime(p)) continue;
      uint64_t pk = p;
      uint32_t k = 1;
      while (pk <= x) {
        direct += 1.0 / k;
        if (pk > x / p) break;
        pk *= p;
        ++k;
      }
    }
    REQUIRE(cs.pi1(static_cast<double>(x)) ==
            doctest::Approx(direct).epsilon(1e-10));
  }
  // paper's bridge bound at 1e5
  const double x = 100'000.0;
  CHECK(cs.pi1(x) - static_cast<double>(cs.pi(x)) < 2.0 * std::sqrt(x));
}

TEST_CASE("twisted prefix maxima") {
  const auto& cs = sums_1e6();
  CharacterGroup g1(1);
  auto trivial = g1.principal();
  for (double x : {10.0, 1000.0, 54321.0}) {
    auto rep = cs.psi_twisted_prefix_max(x, trivial);
    REQUIRE(rep.max_abs == doctest::Approx(cs.psi(x)).epsilon(1e-12));
    REQUIRE(rep.max_abs >= rep.endpoint_abs);
  }
  // brute-force prefix scan, nonprincipal chi mod 3, x = 20
  CharacterGroup g3(3);
  for (const auto& chi : g3.all_characters()) {
    if (chi.is_principal()) continue;
    double best = 0.0;
    cd acc(0.0, 0.0);
    for (uint64_t n = 2; n <= 20; ++n) {
      acc += oracle::von_mangoldt(n) * chi(n);
      best = std::max(best, std::abs(acc));
    }
    auto rep = cs.psi_twisted_prefix_max(20, chi);
    REQUIRE(rep.max_abs == doctest::Approx(best).epsilon(1e-12));
    REQUIRE(std::abs(cs.psi_twisted(20, chi) - acc) < 1e-12);
  }
}

TEST_CASE("deviation maxima match the integer-grid brute force") {
  const auto& cs = sums_1e6();
  const auto& t = tables_1e6();

  SUBCASE("q = 1 is identically zero") {
    auto rep = cs.deviation_max(50, 1);
    CHECK(rep.overall_max == 0.0);
  }
  SUBCASE("q = 3, x = 50, every residue") {
    auto rep = cs.deviation_max(50, 3);
    auto brute = brute_deviation(t, 50, 3, false);
    REQUIRE(rep.residues.size() == brute.residues.size());
    for (std::size_t s = 0; s < brute.residues.size(); ++s) {
      REQUIRE(rep.residues[s].a == brute.residues[s]);
      REQUIRE(rep.residues[s].max_abs ==
              doctest::Approx(brute.max_abs[s]).epsilon(1e-12));
    }
  }
  SUBCASE("q = 4, x = 1e4, overall within 1e-9") {
    auto rep = cs.deviation_max(10'000, 4);
    auto brute = brute_deviation(t, 10'000, 4, false);
    REQUIRE(rep.overall_max == doctest::Approx(brute.overall).epsilon(1e-9));
  }
  SUBCASE("pi-weighted deviations, several moduli") {
    for (uint64_t q : {3ull, 5ull, 8ull, 12ull}) {
      auto rep = cs.deviation_max_pi(2'000, q);
      auto brute = brute_deviation(t, 2'000, q, true);
      for (std::size_t s = 0; s < brute.residues.size(); ++s)
        REQUIRE(rep.residues[s].max_abs ==
                doctest::Approx(brute.max_abs[s]).epsilon(1e-12));
    }
  }
  SUBCASE("per-residue maxima dominate the endpoint value") {
    auto rep = cs.deviation_max(5'000, 7);
    for (const auto& r : rep.residues) {
      const double endpoint =
          std::abs(cs.psi_progression(5'000, 7, r.a) - cs.psi(5'000) / 6.0);
      REQUIRE(r.max_abs >= endpoint - 1e-12);
    }
  }
}

TEST_CASE("mvt_lhs") {
  const auto& cs = sums_1e6();
  CHECK(cs.mvt_lhs(100, 0.5) == 0.0);  // empty sum
  for (double x : {10.0, 5000.0})
    CHECK(cs.mvt_lhs(x, 1.5) == doctest::Approx(cs.psi(x)).epsilon(1e-12));

  // independent per-character accumulation at x = 1e4, Q = 10
  const double x = 10'000;
  kahan_sum expect;
  for (uint64_t q = 1; q <= 10; ++q) {
    CharacterGroup g(q);
    for (const auto& chi : g.all_characters()) {
      if (!chi.is_primitive()) continue;
      double best = 0.0;
      cd acc(0.0, 0.0);
      for (uint64_t n = 2; n <= static_cast<uint64_t>(x); ++n) {
        const double lam = tables_1e6().von_mangoldt(n);
        if (lam == 0.0) continue;
        acc += lam * chi(n);
        best = std::max(best, std::abs(acc));
      }
      expect.add(static_cast<double>(q) / static_cast<double>(g.phi()) * best);
    }
  }
  CHECK(cs.mvt_lhs(x, 10) == doctest::Approx(expect.value()).epsilon(1e-10));
  CHECK_THROWS_AS(cs.mvt_lhs(100'000, 50, /*ops_budget=*/1000), capacity_error);
}

TEST_CASE("bv_lhs moduli filter and brute force") {
  const auto& cs = sums_1e6();
  const auto& t = tables_1e6();
  // Q1 = Q leaves only the q = 1 term, which deviates by 0
  CHECK(cs.bv_lhs_psi(10'000, 20, 20) == 0.0);
  // x = 1e4, Q = 20, Q1 = 3: admitted moduli are 1 and primes in (3, 20]
  kahan_sum expect;
  for (uint64_t q : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull})
    expect.add(brute_deviation(t, 10'000, q, false).overall);
  CHECK(cs.bv_lhs_psi(10'000, 20, 3) ==
        doctest::Approx(expect.value()).epsilon(1e-9));
  // monotone in Q
  double prev = 0.0;
  for (double Q : {5.0, 10.0, 20.0, 40.0}) {
    double v = cs.bv_lhs_psi(10'000, Q, 3);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("principal character drops exactly the ramified prime powers") {
  const auto& cs = sums_1e6();
  std::mt19937_64 rng(17);
  for (int i = 0; i < 25; ++i) {
    const uint64_t q = 1 + rng_below(rng, 100);
    const double x = 100.0 + rng_unit(rng) * 9'900.0;
    CharacterGroup g(q);
    const cd twisted = cs.psi_twisted(x, g.principal());
    kahan_sum ramified;
    for (const auto& [p, e] : factorize_u64(q)) {
      (void)e;
      for (unsigned __int128 pk = p; pk <= static_cast<uint64_t>(x); pk *= p)
        ramified.add(std::log(static_cast<double>(p)));
    }
    REQUIRE(std::abs(twisted - cd(cs.psi(x) - ramified.value(), 0.0)) < 1e-9);
  }
}

TEST_CASE("section-7 lifting bound: |psi'(y, chi*) - psi'(y, chi)| <= (log qy)^2") {
  const auto& cs = sums_1e6();
  std::mt19937_64 rng(71);
  for (int i = 0; i < 15; ++i) {
    const uint64_t q = 2 + rng_below(rng, 99);
    CharacterGroup g(q);
    for (const auto& chi : g.all_characters()) {
      CharacterGroup star(chi.conductor());
      auto chi_star = CharacterGroup::inducing_character(chi, star);
      for (double y : {100.0, 1'000.0, 10'000.0}) {
        const cd a = cs.psi_twisted(y, chi_star) -
                     (chi_star.is_principal() ? cd(cs.psi(y), 0.0) : cd(0, 0));
        const cd b = cs.psi_twisted(y, chi) -
                     (chi.is_principal() ? cd(cs.psi(y), 0.0) : cd(0, 0));
        const double bound = std::pow(std::log(static_cast<double>(q) * y), 2);
        REQUIRE(std::abs(a - b) <= bound + 1e-9);
      }
    }
  }
}

TEST_CASE("Chebyshev bound psi(x) <= A0 x up to 1e7") {
  // A0 = 1.03883 is the classical rounded-up constant; the exact maximum
  // of psi(x)/x is psi(113)/113 = 1.038820...
  auto t = SieveTables::build(10'000'000);
  kahan_sum acc;
  double worst = 0.0;
  uint64_t worst_n = 0;
  for (uint64_t n = 2; n <= t.limit(); ++n) {
    const double lam = t.von_mangoldt(n);
    if (lam == 0.0) continue;
    acc.add(lam);
    const double ratio = acc.value() / static_cast<double>(n);
    if (ratio > worst) {
      worst = ratio;
      worst_n = n;
    }
  }
  CHECK(worst <= 1.03883);
  CHECK(worst_n == 113);
}
