#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "abelframe/sampling.hpp"
#include "abelframe/transform.hpp"

namespace abelframe {

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// n filters on G together with a sampling subgroup H. The filterbank's frame
/// operator is the frame operator of X_H = { T_h f_m : h in H, 0 <= m < n }.
class FilterBank {
 public:
  FilterBank(Subgroup subgroup, std::vector<Signal> filters);

  const GroupSpec& group() const { return subgroup_.ambient(); }
  const Subgroup& subgroup() const { return subgroup_; }
  std::span<const Signal> filters() const { return filters_; }
  const Signal& filter(std::size_t m) const { return filters_[m]; }
  std::size_t size() const { return filters_.size(); }

  std::vector<double> norms() const;

  /// Same subgroup, new filters.
  FilterBank with_filters(std::vector<Signal> filters) const;

 private:
  Subgroup subgroup_;
  std::vector<Signal> filters_;
};

/// One filter delta_0 with H = G; its X_H is the standard basis of l(G).
FilterBank standard_basis_bank(const GroupSpec& G);

/// T_h f_m ordered by m, then h in subgroup order.
std::vector<Signal> expand_system(const FilterBank& fb);

/// (Lf)_m(h) = <f, T_h f_m>.
std::vector<SubgroupSignal> analyze(const FilterBank& fb, const Signal& f);
/// The same operator through its defining form S_H(f * involution(f_m)).
std::vector<SubgroupSignal> analyze_convolution(const FilterBank& fb, const Signal& f);

/// L^* y = sum_m sum_h y_m(h) T_h f_m.
Signal synthesize(const FilterBank& fb, std::span<const SubgroupSignal> y);
/// The same operator as sum_m (S_H^* y_m) * f_m.
Signal synthesize_convolution(const FilterBank& fb, std::span<const SubgroupSignal> y);

/// F f = L^* L f.
Signal frame_operator_apply(const FilterBank& fb, const Signal& f);

/// Dense frame operator sum_x x x^* of an arbitrary finite collection.
Eigen::MatrixXcd frame_operator_matrix(std::span<const Signal> system);
std::vector<double> frame_operator_eigenvalues(std::span<const Signal> system);

/// Frame bounds from the modulated blocks; for |G| <= 64 they are also checked
/// against a dense eigensolve (std::logic_error on disagreement).
FrameBounds frame_bounds(const FilterBank& fb);
FrameBounds frame_bounds_dense(const FilterBank& fb);

/// sum_j sum_k |<x_j, x_k>|^2.
double frame_potential(std::span<const Signal> system);
/// FP(X_H) as the sum of the block potentials FP(Y_ell).
double frame_potential_fb(const FilterBank& fb);

struct TightVerdict {
  bool tight = false;
  double bound = 0.0;
};

/// Tight iff A > 0 and B / A <= 1 + eps; bound is (A + B) / 2.
TightVerdict is_tight(const FilterBank& fb, double eps);

}  // namespace abelframe
