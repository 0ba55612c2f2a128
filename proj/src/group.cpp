#include "abelframe/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace abelframe {

std::string to_string(const GroupElement& x) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < x.coords.size(); ++j) {
    if (j) os << ',';
    os << x.coords[j];
  }
  os << ')';
  return os.str();
}

GroupSpec::GroupSpec(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw InputError("group needs at least one cyclic factor");
  for (auto m : moduli_) {
    if (m < 1) throw InputError("group moduli must be >= 1");
  }
  strides_.assign(moduli_.size(), 1);
  for (std::size_t j = moduli_.size(); j-- > 0;) {
    strides_[j] = order_;
    order_ *= static_cast<std::size_t>(moduli_[j]);
    exponent_ = std::lcm(exponent_, moduli_[j]);
  }
}

void GroupSpec::check_element(const GroupElement& x) const {
  if (x.rank() != rank()) {
    throw InputError("element " + to_string(x) + " has rank " + std::to_string(x.rank()) +
                     ", group has rank " + std::to_string(rank()));
  }
  for (std::size_t j = 0; j < rank(); ++j) {
    if (x.coords[j] < 0 || x.coords[j] >= moduli_[j]) {
      throw InputError("element " + to_string(x) + " is not reduced modulo the group moduli");
    }
  }
}

GroupElement GroupSpec::reduce(std::vector<std::int64_t> coords) const {
  if (coords.size() != rank()) {
    throw InputError("element has rank " + std::to_string(coords.size()) + ", group has rank " +
                     std::to_string(rank()));
  }
  for (std::size_t j = 0; j < rank(); ++j) {
    coords[j] %= moduli_[j];
    if (coords[j] < 0) coords[j] += moduli_[j];
  }
  return GroupElement(std::move(coords));
}

GroupElement GroupSpec::identity() const {
  return GroupElement(std::vector<std::int64_t>(rank(), 0));
}

GroupElement GroupSpec::add(const GroupElement& x, const GroupElement& y) const {
  check_element(x);
  check_element(y);
  GroupElement out = x;
  for (std::size_t j = 0; j < rank(); ++j) {
    out.coords[j] = (x.coords[j] + y.coords[j]) % moduli_[j];
  }
  return out;
}

GroupElement GroupSpec::negate(const GroupElement& x) const {
  check_element(x);
  GroupElement out = x;
  for (std::size_t j = 0; j < rank(); ++j) {
    out.coords[j] = (moduli_[j] - x.coords[j]) % moduli_[j];
  }
  return out;
}

GroupElement GroupSpec::subtract(const GroupElement& x, const GroupElement& y) const {
  return add(x, negate(y));
}

GroupElement GroupSpec::multiple(std::int64_t k, const GroupElement& x) const {
  check_element(x);
  std::vector<std::int64_t> c = x.coords;
  for (std::size_t j = 0; j < rank(); ++j) c[j] = (k % moduli_[j]) * c[j];
  return reduce(std::move(c));
}

std::size_t GroupSpec::element_index(const GroupElement& x) const {
  check_element(x);
  std::size_t idx = 0;
  for (std::size_t j = 0; j < rank(); ++j) idx += static_cast<std::size_t>(x.coords[j]) * strides_[j];
  return idx;
}

GroupElement GroupSpec::element_at(std::size_t index) const {
  if (index >= order_) {
    throw InputError("element index " + std::to_string(index) + " out of range [0," +
                     std::to_string(order_) + ")");
  }
  std::vector<std::int64_t> c(rank());
  for (std::size_t j = 0; j < rank(); ++j) {
    c[j] = static_cast<std::int64_t>(index / strides_[j]);
    index %= strides_[j];
  }
  return GroupElement(std::move(c));
}

std::size_t GroupSpec::add_index(std::size_t i, std::size_t j) const {
  std::size_t out = 0;
  for (std::size_t k = 0; k < rank(); ++k) {
    const auto m = static_cast<std::size_t>(moduli_[k]);
    const std::size_t a = (i / strides_[k]) % m;
    const std::size_t b = (j / strides_[k]) % m;
    out += ((a + b) % m) * strides_[k];
  }
  return out;
}

std::size_t GroupSpec::negate_index(std::size_t i) const {
  std::size_t out = 0;
  for (std::size_t k = 0; k < rank(); ++k) {
    const auto m = static_cast<std::size_t>(moduli_[k]);
    const std::size_t a = (i / strides_[k]) % m;
    out += ((m - a) % m) * strides_[k];
  }
  return out;
}

std::size_t GroupSpec::subtract_index(std::size_t i, std::size_t j) const {
  return add_index(i, negate_index(j));
}

Subgroup::Subgroup(GroupSpec ambient, std::vector<GroupElement> generators)
    : ambient_(std::move(ambient)), generators_(std::move(generators)) {
  std::vector<std::size_t> gen_idx;
  gen_idx.reserve(generators_.size());
  for (const auto& g : generators_) gen_idx.push_back(ambient_.element_index(g));

  position_.assign(ambient_.order(), -1);
  std::vector<char> seen(ambient_.order(), 0);
  std::vector<std::size_t> queue{0};
  seen[0] = 1;
  // In a finite group, closure under adding generators already yields
  // negatives, so the frontier only needs forward steps.
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto g : gen_idx) {
      const std::size_t next = ambient_.add_index(queue[head], g);
      if (!seen[next]) {
        seen[next] = 1;
        queue.push_back(next);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  element_indices_ = std::move(queue);
  elements_.reserve(element_indices_.size());
  for (std::size_t k = 0; k < element_indices_.size(); ++k) {
    elements_.push_back(ambient_.element_at(element_indices_[k]));
    position_[element_indices_[k]] = static_cast<std::ptrdiff_t>(k);
  }
}

Subgroup Subgroup::closure(const GroupSpec& ambient, std::span<const GroupElement> generators) {
  for (const auto& g : generators) ambient.check_element(g);
  return Subgroup(ambient, std::vector<GroupElement>(generators.begin(), generators.end()));
}

Subgroup Subgroup::trivial(const GroupSpec& ambient) { return Subgroup(ambient, {}); }

Subgroup Subgroup::full(const GroupSpec& ambient) {
  std::vector<GroupElement> basis;
  for (std::size_t j = 0; j < ambient.rank(); ++j) {
    std::vector<std::int64_t> c(ambient.rank(), 0);
    c[j] = ambient.moduli()[j] > 1 ? 1 : 0;
    basis.emplace_back(std::move(c));
  }
  return Subgroup(ambient, std::move(basis));
}

bool Subgroup::contains(const GroupElement& x) const {
  return contains_index(ambient_.element_index(x));
}

std::optional<std::size_t> Subgroup::position_of(std::size_t ambient_index) const {
  if (ambient_index >= position_.size() || position_[ambient_index] < 0) return std::nullopt;
  return static_cast<std::size_t>(position_[ambient_index]);
}

}  // namespace abelframe
