#include "ebv/constants.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "ebv/sieve.hpp"
#include "ebv/util.hpp"

namespace ebv {

namespace {

constexpr double kFpAllowance = 1e-13;

// interval-style propagation for positive quantities
PinnedValue pv_mul(const PinnedValue& a, const PinnedValue& b) {
  PinnedValue out;
  out.value = a.value * b.value;
  out.radius = std::abs(a.value) * b.radius + std::abs(b.value) * a.radius +
               a.radius * b.radius + kFpAllowance;
  return out;
}

PinnedValue pv_scale(const PinnedValue& a, double k) {
  return {a.value * k, std::abs(k) * a.radius + kFpAllowance, a.cutoff};
}

PinnedValue pv_sqrt(const PinnedValue& a) {
  const double mid = std::sqrt(a.value);
  const double lo = std::sqrt(std::max(0.0, a.value - a.radius));
  const double hi = std::sqrt(a.value + a.radius);
  return {mid, std::max(hi - mid, mid - lo) + kFpAllowance, a.cutoff};
}

}  // namespace

double gamma_literal() {
  // 0.57721566490153286060651209008240243104215933593992... (OEIS A001620)
  return 0.57721566490153286060651209008240243104215933593992;
}

double c3_closed_form() {
  const double log2 = std::log(2.0);
  return (2.0 / M_PI) * (2.0 + std::log(log2 / std::log(4.0 / 3.0))) / log2;
}

PrimeSumValues compute_prime_sums(uint64_t cutoff) {
  if (cutoff < 100'000)
    throw std::domain_error(
        "compute_prime_sums: cutoff below 1e5 cannot certify the displayed "
        "digits");
  kahan_sum s_inv, s_logp, s_logp_sq, s_m, s_log_e0;
  for_primes_up_to(cutoff, [&](uint64_t prime) {
    const double p = static_cast<double>(prime);
    const double logp = std::log(p);
    const double pm1 = p - 1.0;
    s_inv.add(1.0 / (p * pm1));
    s_logp.add(logp / (p * pm1));
    s_logp_sq.add(logp / (pm1 * pm1));
    s_m.add(std::log1p(-1.0 / p) + 1.0 / p);
    s_log_e0.add(std::log1p(1.0 / (p * pm1)));
  });

  const double P = static_cast<double>(cutoff);
  const double logP = std::log(P);
  PrimeSumValues out;
  out.cutoff = cutoff;
  out.sum_inv_p_pm1 = {s_inv.value(), 1.0 / P + kFpAllowance, P};
  out.sum_logp_p_pm1 = {s_logp.value(), (logP + 2.0) / P + kFpAllowance, P};
  out.sum_logp_pm1_sq = {s_logp_sq.value(), (logP + 2.0) / P + kFpAllowance, P};
  out.M = {gamma_literal() + s_m.value(), 0.5 / (P - 2.0) + kFpAllowance, P};
  out.E = {-gamma_literal() - s_logp.value(), out.sum_logp_p_pm1.radius, P};
  const double e0 = std::exp(s_log_e0.value());
  out.E0 = {e0, e0 * std::expm1(1.0 / P) + kFpAllowance, P};
  return out;
}

void compute_c_constants(ConstantsLedger& ledger) {
  const double log2 = std::log(2.0);
  ledger.c3 = {c3_closed_form(), 1e-12, 0};

  // c4 = 2^(3/2) A0^(1/2) c3 / (sqrt 3 log 2)
  PinnedValue root_a0 = pv_sqrt(ledger.A0);
  PinnedValue c4 = pv_mul(root_a0, ledger.c3);
  c4 = pv_scale(c4, std::pow(2.0, 1.5) / (std::sqrt(3.0) * log2));
  ledger.c4 = c4;

  // c0, route 1: 2 (4/3)^(3/2) (1/3 + 3/(2 log 2)) c4
  const double shape =
      2.0 * std::pow(4.0 / 3.0, 1.5) * (1.0 / 3.0 + 3.0 / (2.0 * log2));
  PinnedValue c0 = pv_scale(c4, shape);
  // route 2: the closed form; both must agree to near-full double precision
  const double c0_closed = std::pow(2.0, 6.5) / (9.0 * M_PI * log2) *
                           (1.0 / 3.0 + 3.0 / (2.0 * log2)) *
                           ((2.0 + std::log(log2 / std::log(4.0 / 3.0))) / log2) *
                           std::sqrt(ledger.A0.value);
  if (std::abs(c0.value - c0_closed) > 1e-10 * c0.value)
    throw std::logic_error("compute_c_constants: c0 route mismatch");
  ledger.c0 = c0;

  // c1 = (5/4) E0 c0 + 1 and c2 = 2 c1/log 2 + 1, exact on stored values
  PinnedValue c1 = pv_scale(pv_mul(ledger.E0, ledger.c0), 1.25);
  c1.value += 1.0;
  ledger.c1 = c1;
  PinnedValue c2 = pv_scale(c1, 2.0 / log2);
  c2.value += 1.0;
  ledger.c2 = c2;
}

ConstantsLedger compute_ledger(uint64_t cutoff) {
  ConstantsLedger ledger;
  ledger.prime_cutoff = cutoff;
  ledger.gamma = {gamma_literal(), 1e-16, 0};

  PrimeSumValues sums = compute_prime_sums(cutoff);
  ledger.M = sums.M;
  ledger.E = sums.E;
  ledger.E0 = sums.E0;
  ledger.sum_inv_p_pm1 = sums.sum_inv_p_pm1;
  ledger.sum_logp_p_pm1 = sums.sum_logp_p_pm1;
  ledger.sum_logp_pm1_sq = sums.sum_logp_pm1_sq;

  // A0: psi(113)/113 computed exactly; stored as the classical rounded-up
  // constant 1.03883 so the Chebyshev bound psi(x) <= A0 x and the derived
  // c-constants carry their usual displayed digits. The radius covers the
  // exact ratio.
  SieveTables small = SieveTables::build(113);
  kahan_sum psi113;
  for (uint64_t n = 2; n <= 113; ++n) psi113.add(small.von_mangoldt(n));
  ledger.A0_exact_ratio = psi113.value() / 113.0;
  ledger.A0_argmax = 113;
  ledger.A0 = {1.03883, 1.03883 - ledger.A0_exact_ratio + 1e-12, 0};

  compute_c_constants(ledger);
  return ledger;
}

bool ConstantsLedger::sum_inv_discrepancy_flagged() const {
  return std::abs(sum_inv_p_pm1.value - kDisplayedSumInv) > 0.1;
}

std::pair<uint64_t, double> verify_A0(const ChebyshevSums& sums, double N) {
  if (N < 113) throw std::domain_error("verify_A0: N must be >= 113");
  if (N > static_cast<double>(sums.limit()))
    throw capacity_error("verify_A0: N beyond sieve limit");
  const auto& t = sums.tables();
  kahan_sum acc;
  double best = 0.0;
  uint64_t best_n = 0;
  const uint64_t n_max = static_cast<uint64_t>(std::floor(N));
  for (uint64_t n = 2; n <= n_max; ++n) {
    const double lam = t.von_mangoldt(n);
    if (lam == 0.0) continue;
    acc.add(lam);
    const double ratio = acc.value() / static_cast<double>(n);
    if (ratio > best) {
      best = ratio;
      best_n = n;
    }
  }
  return {best_n, best};
}

namespace {

void append_row(std::string& out, const char* name, const PinnedValue& pv) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-18s % .12f  +/- %.3e\n", name, pv.value,
                pv.radius);
  out += buf;
}

}  // namespace

std::string ConstantsLedger::to_text() const {
  std::string out;
  out += "constants ledger (prime cutoff " + std::to_string(prime_cutoff) +
         ")\n";
  append_row(out, "gamma", gamma);
  append_row(out, "M", M);
  append_row(out, "E", E);
  append_row(out, "E0", E0);
  append_row(out, "sum 1/(p(p-1))", sum_inv_p_pm1);
  append_row(out, "sum logp/(p(p-1))", sum_logp_p_pm1);
  append_row(out, "sum logp/(p-1)^2", sum_logp_pm1_sq);
  append_row(out, "A0", A0);
  append_row(out, "c0", c0);
  append_row(out, "c1", c1);
  append_row(out, "c2", c2);
  append_row(out, "c3", c3);
  append_row(out, "c4", c4);
  char buf[200];
  std::snprintf(buf, sizeof buf, "A0 maximizer: psi(%llu)/%llu = %.12f\n",
                static_cast<unsigned long long>(A0_argmax),
                static_cast<unsigned long long>(A0_argmax), A0_exact_ratio);
  out += buf;
  if (sum_inv_discrepancy_flagged()) {
    std::snprintf(buf, sizeof buf,
                  "note: sum 1/(p(p-1)) = %.5f differs from the displayed "
                  "0.57721 (= gamma) by %.3f; the computed value is used\n",
                  sum_inv_p_pm1.value,
                  std::abs(sum_inv_p_pm1.value - kDisplayedSumInv));
    out += buf;
  }
  return out;
}

std::string ConstantsLedger::to_json_string() const {
  nlohmann::json j;
  auto put = [&](const char* name, const PinnedValue& pv) {
    j["constants"][name] = {{"value", pv.value},
                            {"radius", pv.radius},
                            {"cutoff", pv.cutoff}};
  };
  put("gamma", gamma);
  put("M", M);
  put("E", E);
  put("E0", E0);
  put("sum_inv_p_pm1", sum_inv_p_pm1);
  put("sum_logp_p_pm1", sum_logp_p_pm1);
  put("sum_logp_pm1_sq", sum_logp_pm1_sq);
  put("A0", A0);
  put("c0", c0);
  put("c1", c1);
  put("c2", c2);
  put("c3", c3);
  put("c4", c4);
  j["prime_cutoff"] = prime_cutoff;
  j["A0_argmax"] = A0_argmax;
  j["A0_exact_ratio"] = A0_exact_ratio;
  j["sum_inv_discrepancy_flagged"] = sum_inv_discrepancy_flagged();
  return j.dump(2);
}

}  // namespace ebv
