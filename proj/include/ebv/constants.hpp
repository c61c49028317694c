#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "ebv/chebyshev.hpp"

namespace ebv {

/// A constant together with a rigorous error radius: the true value lies in
/// [value - radius, value + radius]. For truncated prime sums the radius is
/// an analytic tail bound plus a blanket floating-point allowance, never a
/// heuristic.
struct PinnedValue {
  double value = 0;
  double radius = 0;
  double cutoff = 0;  // prime cutoff used; 0 for closed forms / literals

  double upper() const { return value + radius; }
  double lower() const { return value - radius; }
};

/// Prime sums truncated at p <= cutoff, with tail radii:
///   sum 1/(p(p-1))      tail <= 1/P           (telescoping majorant)
///   sum log p/(p(p-1))  tail <= (log P + 2)/P (integral comparison)
///   sum log p/(p-1)^2   tail <= (log P + 2)/P
///   M-series terms      |log(1-1/p) + 1/p| <= 1/(2(p-1)^2), tail <= 1/(2(P-2))
///   E0 product          true value in [V, V e^(1/P)]
struct PrimeSumValues {
  uint64_t cutoff = 0;
  PinnedValue sum_inv_p_pm1;     // sum over p of 1/(p(p-1))
  PinnedValue sum_logp_p_pm1;    // sum over p of log p/(p(p-1))
  PinnedValue sum_logp_pm1_sq;   // sum over p of log p/(p-1)^2
  PinnedValue M;                 // gamma + sum (log((p-1)/p) + 1/p)
  PinnedValue E;                 // -gamma - sum log p/(p(p-1))
  PinnedValue E0;                // prod (1 + 1/(p(p-1)))
};

/// Throws std::domain_error when cutoff < 1e5 (tail radii would be too
/// coarse to certify the paper's displayed digits).
PrimeSumValues compute_prime_sums(uint64_t cutoff);

struct ConstantsLedger {
  uint64_t prime_cutoff = 0;
  PinnedValue gamma;
  PinnedValue M, E, E0;
  PinnedValue sum_inv_p_pm1, sum_logp_p_pm1, sum_logp_pm1_sq;
  PinnedValue A0;  // pinned Chebyshev constant 1.03883 (valid upper bound)
  PinnedValue c0, c1, c2, c3, c4;

  uint64_t A0_argmax = 0;      // maximizer of psi(x)/x (113)
  double A0_exact_ratio = 0;   // psi(113)/113 = 1.038820...

  /// The displayed value 0.57721 for sum 1/(p(p-1)) matches Euler's gamma,
  /// not the independently computed sum (~0.77316). True when the computed
  /// ledger value is far (> 0.1) from that displayed figure.
  bool sum_inv_discrepancy_flagged() const;
  static constexpr double kDisplayedSumInv = 0.57721;

  std::string to_text() const;
  std::string to_json_string() const;
};

/// Euler-Mascheroni constant, 50-digit literal (OEIS A001620); imported,
/// not computed.
double gamma_literal();

/// c3 = (2/pi) (2 + log(log 2 / log(4/3))) / log 2.
double c3_closed_form();

/// Fills c3, c4, c0 (two algebraic routes, cross-checked), c1, c2 from the
/// ledger's A0 and E0 entries. c1 and c2 are exact arithmetic on stored
/// values: c1 = (5/4) E0 c0 + 1, c2 = 2 c1/log 2 + 1.
void compute_c_constants(ConstantsLedger& ledger);

/// Full ledger at the given prime cutoff (default 1e8 gives radii ~2e-7).
ConstantsLedger compute_ledger(uint64_t cutoff = 100'000'000);

/// Scans psi(x)/x at every prime-power jump x <= N and returns
/// (argmax, max value). N must be >= 113 and within the sieve limit.
std::pair<uint64_t, double> verify_A0(const ChebyshevSums& sums, double N);

}  // namespace ebv
