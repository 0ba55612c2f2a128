#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace abelframe {

/// Raised for malformed or inconsistent user input (dimension mismatches,
/// out-of-range indices, invalid norms, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point of G = Z/m_1 + ... + Z/m_r in coordinates, each reduced mod m_j.
struct GroupElement {
  std::vector<std::int64_t> coords;

  GroupElement() = default;
  explicit GroupElement(std::vector<std::int64_t> c) : coords(std::move(c)) {}
  GroupElement(std::initializer_list<std::int64_t> c) : coords(c) {}

  std::size_t rank() const { return coords.size(); }
  bool operator==(const GroupElement&) const = default;
};

std::string to_string(const GroupElement& x);

/// Finite abelian group given as a direct sum of cyclic groups. The moduli need
/// not form a divisibility chain.
///
/// Elements are ordered by their mixed-radix value
///   index(x) = sum_j x_j * prod_{k>j} m_k,
/// which is the canonical order used for every array indexed by G or by its
/// character labels.
class GroupSpec {
 public:
  explicit GroupSpec(std::vector<std::int64_t> moduli);

  std::span<const std::int64_t> moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }
  std::size_t order() const { return order_; }

  /// Least common multiple of the moduli; every character value is a power of
  /// exp(2 pi i / lcm).
  std::int64_t exponent() const { return exponent_; }

  GroupElement identity() const;
  GroupElement add(const GroupElement& x, const GroupElement& y) const;
  GroupElement negate(const GroupElement& x) const;
  GroupElement subtract(const GroupElement& x, const GroupElement& y) const;
  GroupElement multiple(std::int64_t k, const GroupElement& x) const;

  std::size_t element_index(const GroupElement& x) const;
  GroupElement element_at(std::size_t index) const;

  /// Index-level group law, used by the hot loops of the transform code.
  std::size_t add_index(std::size_t i, std::size_t j) const;
  std::size_t negate_index(std::size_t i) const;
  std::size_t subtract_index(std::size_t i, std::size_t j) const;

  /// Throws InputError unless x has the right rank and reduced coordinates.
  void check_element(const GroupElement& x) const;

  /// Reduces arbitrary integer coordinates into range.
  GroupElement reduce(std::vector<std::int64_t> coords) const;

  bool operator==(const GroupSpec& other) const { return moduli_ == other.moduli_; }

 private:
  std::vector<std::int64_t> moduli_;
  std::vector<std::size_t> strides_;
  std::size_t order_ = 1;
  std::int64_t exponent_ = 1;
};

/// A subgroup H <= G stored extensionally: all elements in canonical order
/// plus a membership table over G.
class Subgroup {
 public:
  /// Smallest subgroup containing the generators (breadth-first closure).
  static Subgroup closure(const GroupSpec& ambient, std::span<const GroupElement> generators);
  static Subgroup trivial(const GroupSpec& ambient);
  static Subgroup full(const GroupSpec& ambient);

  const GroupSpec& ambient() const { return ambient_; }
  std::span<const GroupElement> generators() const { return generators_; }
  std::span<const GroupElement> elements() const { return elements_; }
  /// Canonical ambient index of each element, same order as elements().
  std::span<const std::size_t> element_indices() const { return element_indices_; }

  std::size_t order() const { return element_indices_.size(); }
  std::size_t index() const { return ambient_.order() / order(); }

  bool contains(const GroupElement& x) const;
  bool contains_index(std::size_t ambient_index) const { return position_[ambient_index] >= 0; }

  /// Position of an ambient element inside elements(), if it is a member.
  std::optional<std::size_t> position_of(std::size_t ambient_index) const;

 private:
  Subgroup(GroupSpec ambient, std::vector<GroupElement> generators);

  GroupSpec ambient_;
  std::vector<GroupElement> generators_;
  std::vector<GroupElement> elements_;
  std::vector<std::size_t> element_indices_;
  std::vector<std::ptrdiff_t> position_;
};

}  // namespace abelframe
