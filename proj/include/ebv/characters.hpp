#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace ebv {

class CharacterGroup;

/// One Dirichlet character mod q, identified by its exponent vector with
/// respect to the group's fixed CRT generators. Values are exact roots of
/// unity e^(2*pi*i*k/L) tracked by the integer index k (L = group exponent);
/// conversion to complex doubles happens only at accumulation time.
/// Characters borrow their group, which must outlive them.
class DirichletCharacter {
 public:
  std::complex<double> operator()(uint64_t n) const;
  /// Index k with chi(n) = e^(2*pi*i*k/L), or -1 when chi(n) = 0.
  int64_t root_index(uint64_t n) const;

  /// Least divisor d of q such that this character is induced by a
  /// character mod d. Computed by the direct induction test over divisors.
  uint64_t conductor() const;
  bool is_primitive() const;
  bool is_principal() const;

  /// chi(r) root indices for every residue r in [0, q); -1 marks zero.
  /// The bulk-evaluation workhorse: scanners index it by n mod q.
  std::vector<int32_t> value_table() const;

  const CharacterGroup& group() const { return *group_; }
  const std::vector<uint32_t>& exponents() const { return exps_; }
  std::size_t index() const { return index_; }

 private:
  friend class CharacterGroup;
  DirichletCharacter(const CharacterGroup* g, std::vector<uint32_t> exps,
                     std::size_t index)
      : group_(g), exps_(std::move(exps)), index_(index) {}

  const CharacterGroup* group_;
  std::vector<uint32_t> exps_;
  std::size_t index_;
  mutable std::optional<uint64_t> conductor_cache_;
};

/// The full character group mod q built from the CRT decomposition of
/// (Z/qZ)^x: one generator per odd prime power, two for 2^k with k >= 3.
/// Discrete logs are tabulated per component so evaluation is O(#generators).
/// Immutable after construction.
class CharacterGroup {
 public:
  struct Generator {
    uint64_t element;  // global element via CRT
    uint64_t order;
  };

  explicit CharacterGroup(uint64_t q, uint64_t modulus_cap = 10'000'000);

  uint64_t modulus() const { return q_; }
  uint64_t phi() const { return phi_; }
  std::size_t size() const { return phi_; }
  /// Exponent of the group: lcm of generator orders (1 for q <= 2).
  uint64_t root_order() const { return exponent_; }
  /// roots()[k] = e^(2*pi*i*k/root_order()).
  const std::vector<std::complex<double>>& roots() const { return roots_; }
  const std::vector<Generator>& generators() const { return generators_; }

  DirichletCharacter character(std::size_t index) const;
  DirichletCharacter principal() const { return character(0); }

  std::vector<DirichletCharacter> all_characters() const;
  std::vector<DirichletCharacter> primitive_characters() const;
  /// Independent count of primitive characters: sum over d | q of
  /// mu(d) phi(q/d).
  uint64_t primitive_count_formula() const;

  /// The primitive character mod conductor(chi) inducing chi. Searches the
  /// conductor group and matches values exactly (rational angle compare).
  static DirichletCharacter inducing_character(const DirichletCharacter& chi,
                                               const CharacterGroup& star_group);

 private:
  friend class DirichletCharacter;

  uint64_t q_;
  uint64_t phi_ = 1;
  uint64_t exponent_ = 1;
  std::vector<Generator> generators_;

  struct Component {
    uint64_t modulus;                  // p^e
    std::vector<std::size_t> gen_ids;  // indices into generators_
  };
  std::vector<Component> components_;
  // Per-generator discrete-log tables, indexed by r mod component modulus.
  std::vector<std::vector<uint32_t>> dlog_;
  std::vector<uint64_t> dlog_modulus_;  // component modulus per generator
  std::vector<uint64_t> angle_stride_;  // exponent_ / order per generator
  std::vector<std::complex<double>> roots_;

  int64_t root_index(const std::vector<uint32_t>& exps, uint64_t n) const;
  bool trivial_on_kernel(const std::vector<uint32_t>& exps, uint64_t d) const;
  uint64_t conductor_of(const std::vector<uint32_t>& exps) const;
  bool primitive_fast(const std::vector<uint32_t>& exps) const;
};

}  // namespace ebv
