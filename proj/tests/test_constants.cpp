#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ebv/constants.hpp"
#include "ebv/util.hpp"

using namespace ebv;

namespace {

const ConstantsLedger& ledger_1e6() {
  static ConstantsLedger l = compute_ledger(1'000'000);
  return l;
}

}  // namespace

TEST_CASE("prime sums reproduce the displayed digits within radius") {
  const auto& l = ledger_1e6();
  CHECK(std::abs(l.M.value - 0.26149) < 1e-4 + l.M.radius);
  CHECK(std::abs(l.E.value - (-1.33258)) < 1e-4 + l.E.radius);
  CHECK(std::abs(l.E0.value - 1.943596) < 1e-5 + l.E0.radius);
  CHECK(std::abs(l.sum_logp_pm1_sq.value - (1.25 - 0.02303)) <
        1e-4 + l.sum_logp_pm1_sq.radius);
}

TEST_CASE("the displayed sum 1/(p(p-1)) = 0.57721 is flagged as gamma") {
  const auto& l = ledger_1e6();
  CHECK(l.sum_inv_p_pm1.value == doctest::Approx(0.77316).epsilon(1e-3));
  CHECK(std::abs(l.sum_inv_p_pm1.value - 0.57721) > 0.1);
  CHECK(l.sum_inv_discrepancy_flagged());
}

TEST_CASE("cutoff below 1e5 is a precision error") {
  CHECK_THROWS_AS(compute_prime_sums(10'000), std::domain_error);
}

TEST_CASE("doubling the cutoff moves each value by less than its radius") {
  auto a = compute_prime_sums(100'000);
  auto b = compute_prime_sums(200'000);
  CHECK(std::abs(a.sum_inv_p_pm1.value - b.sum_inv_p_pm1.value) <
        a.sum_inv_p_pm1.radius);
  CHECK(std::abs(a.sum_logp_p_pm1.value - b.sum_logp_p_pm1.value) <
        a.sum_logp_p_pm1.radius);
  CHECK(std::abs(a.sum_logp_pm1_sq.value - b.sum_logp_pm1_sq.value) <
        a.sum_logp_pm1_sq.radius);
  CHECK(std::abs(a.M.value - b.M.value) < a.M.radius);
  CHECK(std::abs(a.E.value - b.E.value) < a.E.radius);
  CHECK(std::abs(a.E0.value - b.E0.value) < a.E0.radius);
}

TEST_CASE("c-constants") {
  const auto& l = ledger_1e6();
  CHECK(std::abs(l.c3.value - 2.64456) < 1e-4);
  CHECK(std::abs(l.c0.value - 48.83236) < 1e-4);
  // arithmetic identities hold exactly on stored values
  CHECK(l.c1.value ==
        doctest::Approx(1.25 * l.E0.value * l.c0.value + 1.0).epsilon(1e-15));
  CHECK(l.c2.value ==
        doctest::Approx(2.0 * l.c1.value / std::log(2.0) + 1.0).epsilon(1e-15));
  CHECK(l.c4.value ==
        doctest::Approx(std::pow(2.0, 1.5) * std::sqrt(l.A0.value) *
                        l.c3.value / (std::sqrt(3.0) * std::log(2.0)))
            .epsilon(1e-12));
}

TEST_CASE("perturbing A0 by its radius brackets the pinned c0 and c4") {
  const auto& l = ledger_1e6();
  auto c_at = [&](double a0) {
    ConstantsLedger tmp = l;
    tmp.A0.value = a0;
    tmp.A0.radius = 0;
    compute_c_constants(tmp);
    return std::pair<double, double>{tmp.c0.value, tmp.c4.value};
  };
  auto [c0_lo, c4_lo] = c_at(l.A0.value - l.A0.radius);
  auto [c0_hi, c4_hi] = c_at(l.A0.value + l.A0.radius);
  CHECK(c0_lo <= l.c0.value);
  CHECK(l.c0.value <= c0_hi);
  CHECK(c4_lo <= l.c4.value);
  CHECK(l.c4.value <= c4_hi);
}

TEST_CASE("A0 scan: argmax 113, exact ratio within 1e-5 of 1.03883") {
  auto tables = SieveTables::build(1'000'000);
  ChebyshevSums cs(tables);
  auto [argmax, value] = verify_A0(cs, 1'000'000);
  CHECK(argmax == 113);
  CHECK(std::abs(value - 1.03883) <= 1e-5);
  // boundary case: scanning exactly to 113 gives the same maximizer
  auto [argmax2, value2] = verify_A0(cs, 113);
  CHECK(argmax2 == 113);
  CHECK(value2 == doctest::Approx(value).epsilon(1e-15));
  // single-term sanity: psi(2)/2 well below A0
  CHECK(std::log(2.0) / 2.0 < value);
  // ledger's pinned A0 is a true upper bound for the scan
  const auto& l = ledger_1e6();
  CHECK(value <= l.A0.value);
  CHECK(l.A0_exact_ratio == doctest::Approx(value).epsilon(1e-12));
}

TEST_CASE("ledger exports") {
  const auto& l = ledger_1e6();
  auto text = l.to_text();
  CHECK(text.find("c0") != std::string::npos);
  CHECK(text.find("note: sum 1/(p(p-1))") != std::string::npos);
  auto json = l.to_json_string();
  CHECK(json.find("\"A0_argmax\": 113") != std::string::npos);
  CHECK(json.find("sum_inv_discrepancy_flagged\": true") != std::string::npos);
}
