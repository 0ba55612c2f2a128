#pragma once

#include <vector>

#include <Eigen/Dense>

namespace abelframe {

/// Eigenvalues of a Hermitian matrix, ascending. Only the lower triangle is
/// read.
std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& m);

/// Numerical rank of a PSD matrix from its eigenvalues: count of eigenvalues
/// above rel_tol * max(largest, tiny).
std::size_t psd_rank(const std::vector<double>& eigenvalues, double rel_tol);

}  // namespace abelframe
