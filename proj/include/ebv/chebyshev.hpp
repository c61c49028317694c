#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ebv/characters.hpp"
#include "ebv/sieve.hpp"

namespace ebv {

/// Running maximum of |psi(y, chi)| over y <= x for one character.
struct TwistedMaxReport {
  uint64_t modulus = 0;
  std::size_t character_index = 0;
  double x = 0;
  double max_abs = 0;    // max over y <= x of |psi(y, chi)|
  double argmax_y = 0;   // jump point attaining it
  double endpoint_abs = 0;  // |psi(x, chi)|
};

/// Per-modulus running maxima of |psi(y; q, a) - psi(y)/phi(q)| over
/// 2 <= y <= x, one entry per residue a coprime to q.
struct DeviationMaxReport {
  struct PerResidue {
    uint64_t a = 0;
    double max_abs = 0;
    double argmax_y = 0;
    double max_signed = 0;  // running max of the signed deviation
    double min_signed = 0;  // running min (at y just below a jump, or y = x)
  };
  uint64_t modulus = 0;
  double x = 0;
  std::vector<PerResidue> residues;  // coprime residues ascending
  double overall_max = 0;
  uint64_t argmax_a = 0;
  double argmax_y = 0;
};

/// Prefix sums of Lambda, log p, 1 and Lambda/log over the shared sieve
/// tables, plus the running-maximum scans the explicit inequalities need.
/// All prefix maxima are evaluated at prime-power jump points only: the
/// summatory functions are step functions, constant between jumps, so the
/// supremum over real y is attained there (checking both one-sided limits
/// where the sign can flip). Sums use compensated accumulation.
class ChebyshevSums {
 public:
  explicit ChebyshevSums(const SieveTables& tables);

  const SieveTables& tables() const { return *tables_; }
  uint64_t limit() const { return tables_->limit(); }

  double psi(double x) const;
  double theta(double x) const;
  uint64_t pi(double x) const;
  /// pi1(x) = sum over n <= x of Lambda(n)/log n = sum over p^k <= x of 1/k.
  double pi1(double x) const;

  double psi_progression(double x, uint64_t q, uint64_t a) const;
  uint64_t pi_progression(double x, uint64_t q, uint64_t a) const;
  double pi1_progression(double x, uint64_t q, uint64_t a) const;

  std::complex<double> psi_twisted(double x, const DirichletCharacter& chi) const;
  TwistedMaxReport psi_twisted_prefix_max(double x,
                                          const DirichletCharacter& chi) const;

  /// psi-based deviation maxima (Theorem-1.3 left-hand side per modulus).
  DeviationMaxReport deviation_max(double x, uint64_t q) const;
  /// pi-based variant: |pi(y; q, a) - pi(y)/phi(q)|.
  DeviationMaxReport deviation_max_pi(double x, uint64_t q) const;

  /// sum over q <= Q of (q/phi(q)) * sum over primitive chi mod q of
  /// max_{y<=x} |psi(y,chi)|. Throws capacity_error when the estimated
  /// work exceeds ops_budget (documented feasible: x <= 1e5, Q <= 50).
  double mvt_lhs(double x, double Q,
                 uint64_t ops_budget = kDefaultOpsBudget) const;

  /// sum over q <= Q with least-prime-factor(q) > Q1 of the overall
  /// deviation maximum (l(1) = +infinity, so q = 1 is always admitted and
  /// contributes 0).
  double bv_lhs_psi(double x, double Q, double Q1) const;
  double bv_lhs_pi(double x, double Q, double Q1) const;

  static constexpr uint64_t kDefaultOpsBudget = 4'000'000'000ull;

 private:
  const SieveTables* tables_;
  std::vector<uint32_t> jump_n_;      // prime powers ascending
  std::vector<double> jump_lambda_;   // Lambda at each jump
  std::vector<double> psi_prefix_;    // inclusive prefix of jump_lambda_
  std::vector<double> pi1_prefix_;    // inclusive prefix of 1/k
  std::vector<double> theta_prefix_;  // inclusive prefix of log p over primes

  std::size_t jumps_upto(double x) const;  // count of jumps with n <= x

  template <class Weight>
  DeviationMaxReport deviation_scan(double x, uint64_t q, Weight w) const;

  void check_range(double x) const;
};

}  // namespace ebv
