#include "abelframe/characters.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace abelframe {

Complex unit_root(std::int64_t k, std::int64_t n) {
  k %= n;
  if (k < 0) k += n;
  if ((4 * k) % n == 0) {
    switch ((4 * k) / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

Complex char_eval(const GroupSpec& spec, const GroupElement& a, const GroupElement& x) {
  spec.check_element(a);
  spec.check_element(x);
  const std::int64_t L = spec.exponent();
  std::int64_t k = 0;
  for (std::size_t j = 0; j < spec.rank(); ++j) {
    const std::int64_t m = spec.moduli()[j];
    k = (k + (a.coords[j] * x.coords[j]) % m * (L / m)) % L;
  }
  return unit_root(k, L);
}

CharacterTable::CharacterTable(const GroupSpec& spec) : spec_(spec) {
  const std::size_t r = spec.rank();
  const std::int64_t L = spec.exponent();
  coords_.resize(spec.order() * r);
  for (std::size_t i = 0; i < spec.order(); ++i) {
    const auto e = spec.element_at(i);
    for (std::size_t j = 0; j < r; ++j) coords_[i * r + j] = e.coords[j];
  }
  for (auto m : spec.moduli()) weights_.push_back(L / m);
  roots_.reserve(static_cast<std::size_t>(L));
  for (std::int64_t k = 0; k < L; ++k) roots_.push_back(unit_root(k, L));
}

std::int64_t CharacterTable::phase(std::size_t label, std::size_t x) const {
  const std::size_t r = weights_.size();
  const std::int64_t* a = &coords_[label * r];
  const std::int64_t* y = &coords_[x * r];
  std::int64_t k = 0;
  for (std::size_t j = 0; j < r; ++j) k += a[j] * y[j] * weights_[j];
  return k % spec_.exponent();
}

SubgroupCharacter::SubgroupCharacter(Subgroup subgroup, std::vector<Complex> values)
    : subgroup_(std::move(subgroup)), values_(std::move(values)) {
  if (values_.size() != subgroup_.order()) {
    throw InputError("character table has " + std::to_string(values_.size()) +
                     " values, subgroup has order " + std::to_string(subgroup_.order()));
  }
}

double SubgroupCharacter::multiplicativity_defect() const {
  const auto& G = subgroup_.ambient();
  const auto idx = subgroup_.element_indices();
  double worst = 0.0;
  for (std::size_t p = 0; p < idx.size(); ++p) {
    for (std::size_t q = 0; q < idx.size(); ++q) {
      const auto sum = *subgroup_.position_of(G.add_index(idx[p], idx[q]));
      worst = std::max(worst, std::abs(values_[sum] - values_[p] * values_[q]));
    }
  }
  return worst;
}

bool SubgroupCharacter::approx_equal(const SubgroupCharacter& other, double tol) const {
  if (!(other.subgroup_.ambient() == subgroup_.ambient())) return false;
  if (!std::equal(subgroup_.element_indices().begin(), subgroup_.element_indices().end(),
                  other.subgroup_.element_indices().begin(),
                  other.subgroup_.element_indices().end())) {
    return false;
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (std::abs(values_[k] - other.values_[k]) > tol) return false;
  }
  return true;
}

SubgroupCharacter restrict(const GroupSpec& spec, const GroupElement& a, const Subgroup& H) {
  if (!(H.ambient() == spec)) throw InputError("subgroup does not live in this group");
  std::vector<Complex> values;
  values.reserve(H.order());
  for (const auto& h : H.elements()) values.push_back(char_eval(spec, a, h));
  return SubgroupCharacter(H, std::move(values));
}

std::vector<GroupElement> character_fiber(const GroupSpec& spec, const Subgroup& H,
                                          const SubgroupCharacter& chi) {
  if (!(H.ambient() == spec)) throw InputError("subgroup does not live in this group");
  if (chi.values().size() != H.order()) throw InputError("character table does not match subgroup");
  const CharacterTable table(spec);
  const auto idx = H.element_indices();
  std::vector<GroupElement> out;
  for (std::size_t a = 0; a < spec.order(); ++a) {
    bool match = true;
    for (std::size_t k = 0; k < idx.size() && match; ++k) {
      match = std::abs(table(a, idx[k]) - chi.value(k)) <= 1e-9;
    }
    if (match) out.push_back(spec.element_at(a));
  }
  if (out.empty()) throw InputError("empty fiber: the given values are not a character of H");
  return out;
}

std::vector<SubgroupCharacter> extend_characters(const GroupSpec& spec, const Subgroup& H,
                                                 const GroupElement& x,
                                                 const SubgroupCharacter& chi) {
  if (!(H.ambient() == spec)) throw InputError("subgroup does not live in this group");
  if (chi.values().size() != H.order()) throw InputError("character table does not match subgroup");
  if (H.contains(x)) throw InputError("extension element " + to_string(x) + " already lies in H");

  const std::size_t xi = spec.element_index(x);
  std::int64_t m = 1;
  std::size_t mx = xi;
  while (!H.contains_index(mx)) {
    mx = spec.add_index(mx, xi);
    ++m;
  }
  const Complex omega = chi.value(*H.position_of(mx));

  std::vector<GroupElement> gens(H.generators().begin(), H.generators().end());
  gens.push_back(x);
  const Subgroup Hx = Subgroup::closure(spec, gens);

  const Complex principal = std::pow(omega, 1.0 / static_cast<double>(m));
  std::vector<SubgroupCharacter> out;
  out.reserve(static_cast<std::size_t>(m));
  for (std::int64_t j = 0; j < m; ++j) {
    const Complex alpha = principal * unit_root(j, m);
    std::vector<Complex> values(Hx.order());
    Complex alpha_k{1.0, 0.0};
    std::size_t kx = 0;  // canonical index of k*x
    for (std::int64_t k = 0; k < m; ++k) {
      const auto hidx = H.element_indices();
      for (std::size_t p = 0; p < hidx.size(); ++p) {
        const std::size_t pos = *Hx.position_of(spec.add_index(kx, hidx[p]));
        values[pos] = alpha_k * chi.value(p);
      }
      alpha_k *= alpha;
      kx = spec.add_index(kx, xi);
    }
    out.emplace_back(Hx, std::move(values));
  }
  return out;
}

Complex fiber_sum(const GroupSpec& spec, const Subgroup& H, const SubgroupCharacter& chi,
                  const GroupElement& g) {
  Complex total{0.0, 0.0};
  for (const auto& psi : character_fiber(spec, H, chi)) total += char_eval(spec, psi, g);
  return total;
}

FiberPartition fiber_partition(const Subgroup& H) {
  const auto& G = H.ambient();
  const CharacterTable table(G);
  const auto idx = H.element_indices();
  FiberPartition part;
  part.fiber_of_label.resize(G.order());
  std::map<std::vector<std::int64_t>, std::size_t> by_restriction;
  std::vector<std::int64_t> key(idx.size());
  for (std::size_t a = 0; a < G.order(); ++a) {
    for (std::size_t k = 0; k < idx.size(); ++k) key[k] = table.phase(a, idx[k]);
    auto [it, inserted] = by_restriction.try_emplace(key, part.fibers.size());
    if (inserted) part.fibers.emplace_back();
    part.fibers[it->second].push_back(a);
    part.fiber_of_label[a] = it->second;
  }
  return part;
}

std::vector<SubgroupCharacter> subgroup_characters(const Subgroup& H, const FiberPartition& fibers) {
  std::vector<SubgroupCharacter> out;
  out.reserve(fibers.count());
  for (const auto& fiber : fibers.fibers) {
    out.push_back(restrict(H.ambient(), H.ambient().element_at(fiber.front()), H));
  }
  return out;
}

}  // namespace abelframe
