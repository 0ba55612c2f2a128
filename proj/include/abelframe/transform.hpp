#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "abelframe/characters.hpp"
#include "abelframe/group.hpp"

namespace abelframe {

/// A complex function on a finite abelian group, stored in canonical element
/// order. The tag separates signals on G from spectra on the dual group, which
/// share the same layout but not the same meaning.
template <class Tag>
class GroupFunction {
 public:
  explicit GroupFunction(GroupSpec group)
      : group_(std::move(group)), values_(group_.order(), Complex{0.0, 0.0}) {}

  GroupFunction(GroupSpec group, std::vector<Complex> values)
      : group_(std::move(group)), values_(std::move(values)) {
    if (values_.size() != group_.order()) {
      throw InputError("function has " + std::to_string(values_.size()) +
                       " values, group has order " + std::to_string(group_.order()));
    }
  }

  const GroupSpec& group() const { return group_; }
  std::size_t size() const { return values_.size(); }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }
  Complex operator[](std::size_t i) const { return values_[i]; }
  Complex& operator[](std::size_t i) { return values_[i]; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& v : values_) s += std::norm(v);
    return s;
  }
  double norm() const { return std::sqrt(norm_squared()); }

  GroupFunction& operator+=(const GroupFunction& o) {
    check_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  GroupFunction& operator-=(const GroupFunction& o) {
    check_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  GroupFunction& operator*=(Complex c) {
    for (auto& v : values_) v *= c;
    return *this;
  }
  friend GroupFunction operator+(GroupFunction a, const GroupFunction& b) { return a += b; }
  friend GroupFunction operator-(GroupFunction a, const GroupFunction& b) { return a -= b; }
  friend GroupFunction operator*(Complex c, GroupFunction a) { return a *= c; }

  void check_same(const GroupFunction& o) const {
    if (!(o.group_ == group_)) throw InputError("functions live on different groups");
  }

 private:
  GroupSpec group_;
  std::vector<Complex> values_;
};

struct SignalTag {};
struct SpectrumTag {};

/// f in l(G).
using Signal = GroupFunction<SignalTag>;
/// A function on the dual group, indexed by character label.
using Spectrum = GroupFunction<SpectrumTag>;
/// Values of a function on a subgroup H, in H.elements() order (or, for
/// spectra on H, in fiber order).
using SubgroupSignal = std::vector<Complex>;

Signal delta(const GroupSpec& group, const GroupElement& at);

/// <f1, f2> = sum f1(g) conj(f2(g)).
Complex inner(std::span<const Complex> f1, std::span<const Complex> f2);
template <class Tag>
Complex inner(const GroupFunction<Tag>& f1, const GroupFunction<Tag>& f2) {
  f1.check_same(f2);
  return inner(f1.values(), f2.values());
}

/// F f(a) = sum_x f(x) conj(chi_a(x)).
Spectrum dft(const Signal& f);
/// f(x) = |G|^{-1} sum_a F(a) chi_a(x).
Signal idft(const Spectrum& F);

/// (f1 * f2)(x) = sum_y f1(y) f2(x - y).
Signal convolve(const Signal& f1, const Signal& f2);
/// conj(f(-g)).
Signal involution(const Signal& f);
/// (T_g f)(x) = f(x - g).
Signal translate(const Signal& f, const GroupElement& g);
Signal translate_index(const Signal& f, std::size_t g);

}  // namespace abelframe
