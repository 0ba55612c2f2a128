#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "abelframe/group.hpp"

namespace abelframe {

using Complex = std::complex<double>;

/// exp(2 pi i k / n). Multiples of a quarter turn come out exact.
Complex unit_root(std::int64_t k, std::int64_t n);

/// chi_a(x) = prod_j exp(2 pi i a_j x_j / m_j).
Complex char_eval(const GroupSpec& spec, const GroupElement& a, const GroupElement& x);

/// Integer phase k with chi_a(x) = exp(2 pi i k / spec.exponent()), for labels
/// and elements given by canonical index.
class CharacterTable {
 public:
  explicit CharacterTable(const GroupSpec& spec);

  std::int64_t phase(std::size_t label, std::size_t x) const;
  Complex operator()(std::size_t label, std::size_t x) const { return roots_[phase(label, x)]; }

  const GroupSpec& group() const { return spec_; }

 private:
  GroupSpec spec_;
  std::vector<std::int64_t> coords_;  // |G| x r, row-major
  std::vector<std::int64_t> weights_;  // exponent / m_j
  std::vector<Complex> roots_;
};

/// A character of a subgroup H, stored as its value table over H.elements().
class SubgroupCharacter {
 public:
  SubgroupCharacter(Subgroup subgroup, std::vector<Complex> values);

  const Subgroup& subgroup() const { return subgroup_; }
  std::span<const Complex> values() const { return values_; }
  Complex value(std::size_t k) const { return values_[k]; }

  /// Largest |chi(h1+h2) - chi(h1) chi(h2)| over all pairs.
  double multiplicativity_defect() const;
  bool approx_equal(const SubgroupCharacter& other, double tol = 1e-9) const;

 private:
  Subgroup subgroup_;
  std::vector<Complex> values_;
};

/// Restriction chi_a|_H.
SubgroupCharacter restrict(const GroupSpec& spec, const GroupElement& a, const Subgroup& H);

/// All labels a with chi_a|_H == chi (pointwise within 1e-9), in canonical
/// order. Throws InputError when the fiber is empty, which means chi is not a
/// character of H.
std::vector<GroupElement> character_fiber(const GroupSpec& spec, const Subgroup& H,
                                          const SubgroupCharacter& chi);

/// Extends chi from H to the subgroup generated by H and x (x not in H).
/// Returns m_x characters alpha_j^k chi(h) on k x + h, with
/// alpha_j = omega^{1/m_x} exp(2 pi i j / m_x) taken from the principal root.
std::vector<SubgroupCharacter> extend_characters(const GroupSpec& spec, const Subgroup& H,
                                                 const GroupElement& x,
                                                 const SubgroupCharacter& chi);

/// Sum of psi(g) over the fiber of chi.
Complex fiber_sum(const GroupSpec& spec, const Subgroup& H, const SubgroupCharacter& chi,
                  const GroupElement& g);

/// Partition of the |G| character labels into the |H| fibers over the
/// characters of H. Fibers are ordered by their smallest label and labels are
/// ascending inside each fiber; this fixes the ell-enumeration of H's dual.
struct FiberPartition {
  std::vector<std::vector<std::size_t>> fibers;
  std::vector<std::size_t> fiber_of_label;

  std::size_t count() const { return fibers.size(); }
};

FiberPartition fiber_partition(const Subgroup& H);

/// The characters chi_ell of H in fiber order (restriction of each fiber's
/// first label).
std::vector<SubgroupCharacter> subgroup_characters(const Subgroup& H, const FiberPartition& fibers);

}  // namespace abelframe
