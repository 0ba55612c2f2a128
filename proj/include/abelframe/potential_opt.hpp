#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abelframe/filterbank.hpp"

namespace abelframe {

/// Throws InputError unless norms are strictly positive and nonincreasing.
void validate_norms(std::span<const double> norms);

/// Smallest m in [0, N-1] with (N - m) a_m^2 <= sum_{j>=m} a_j^2, or nullopt
/// when no index qualifies (only possible for n < N, the underdetermined
/// regime). Comparisons allow 1e-12 relative slack so that norms equal up to
/// rounding are treated as equal.
std::optional<std::size_t> compute_m0(std::span<const double> norms, std::size_t N);

/// d a_0^2 <= sum_j a_j^2.
bool fundamental_frame_inequality(std::span<const double> norms, std::size_t d);

enum class Regime { tight, split, underdetermined };
std::string to_string(Regime r);

struct SplitIndex {
  Regime regime = Regime::tight;
  /// m0 for the tight/split regimes, n for the underdetermined one.
  std::size_t m0 = 0;
};

SplitIndex split_index(std::span<const double> norms, std::size_t N);

/// Minimal frame potential of X_H under ||f_m|| = a_m:
///   |H| (sum_{m<m0} a_m^4 + (sum_{m>=m0} a_m^2)^2 / (N - m0)),
/// and |H| sum_m a_m^4 when m0 == n (orthogonal system).
double fp_floor(std::span<const double> norms, std::size_t subgroup_order, std::size_t N,
                std::size_t m0);

/// Euclidean gradient of FP(X_H) with respect to each filter: 4 |H| F f_m,
/// so that dFP = Re <direction, gradient>.
std::vector<Signal> fp_gradient(const FilterBank& fb);

/// Gradient projected onto the tangent space of the spheres ||f_m|| = const.
std::vector<Signal> riemannian_gradient(const FilterBank& fb);

double stacked_norm(std::span<const Signal> v);

/// Structural defects of a bank measured against the minimizer structure for
/// split index m0: translates of f_0..f_{m0-1} mutually orthogonal, orthogonal
/// to the rest, and the rest a tight frame for a |H|(N - m0)-dimensional span.
struct PartitionReport {
  std::size_t m0 = 0;
  /// max |<T_h f_j, T_h' f_k>| over distinct pairs inside the first part.
  double orthogonality_defect = 0.0;
  /// max |<T_h f_j, T_h' f_k>| with j < m0 <= k.
  double cross_orthogonality_defect = 0.0;
  /// (lambda_max - lambda_min) / lambda_max over the nonzero eigenvalues of
  /// the second part's frame operator.
  double tightness_defect = 0.0;
  std::size_t tight_rank = 0;
  std::size_t expected_rank = 0;
  /// Block norms: | ||y_{m,l}|| - a_m | for m < m0 and
  /// | sum_{m>=m0} ||y_{m,l}||^2 - sum_{m>=m0} a_m^2 |.
  double block_norm_defect = 0.0;
  /// Relative deviation of the nonzero eigenvalues of each second-part block
  /// frame operator from sum_{m>=m0} a_m^2 / (N - m0), and of its null part
  /// from zero.
  double block_tightness_defect = 0.0;
  /// max_m ||F f_m - lambda_m f_m|| / a_m with lambda_m = a_m^2 (m < m0) or
  /// sum_{m>=m0} a_m^2 / (N - m0).
  double eigenvector_defect = 0.0;

  double max_defect() const;
  bool passed(double tol) const { return max_defect() <= tol && tight_rank == expected_rank; }
};

PartitionReport verify_theorem(const FilterBank& fb, std::size_t m0, double tol);

struct UnderdeterminedReport {
  /// max |<x, x'>| over distinct pairs of X_H.
  double orthogonality_defect = 0.0;
  /// max_m ||F f_m - a_m^2 f_m|| / a_m.
  double eigenvector_defect = 0.0;

  double max_defect() const { return std::max(orthogonality_defect, eigenvector_defect); }
  bool passed(double tol) const { return max_defect() <= tol; }
};

UnderdeterminedReport verify_underdetermined(const FilterBank& fb, double tol);

struct DesignProblem {
  Subgroup subgroup;
  std::vector<double> norms;
  std::uint64_t seed = 0;
  std::size_t max_iters = 50000;
  double grad_tol = 1e-8;
  double tight_eps = 1e-8;
  /// Threshold applied to the structural defects of the final bank.
  double verify_tol = 1e-5;

  const GroupSpec& group() const { return subgroup.ambient(); }
  void validate() const;
};

struct DesignReport {
  FilterBank filters;
  /// Frame potential after each accepted step. Increments are evaluated
  /// exactly from the step, so the sequence is nonincreasing between restarts.
  std::vector<double> fp_trajectory;
  double fp = 0.0;
  double grad_norm = 0.0;
  FrameBounds bounds;
  SplitIndex split;
  double fp_floor = 0.0;
  std::optional<PartitionReport> partition;
  std::optional<UnderdeterminedReport> underdetermined;
  bool tight = false;
  bool converged = false;
  std::size_t iterations = 0;
  /// Trajectory positions at which a restart perturbation was applied.
  std::vector<std::size_t> restarts;

  bool verified(double tol) const;
};

/// Riemannian gradient descent with Armijo backtracking on the product of
/// spheres ||f_m|| = a_m, from a seeded complex Gaussian start.
DesignReport minimize_fp(const DesignProblem& problem);

}  // namespace abelframe
