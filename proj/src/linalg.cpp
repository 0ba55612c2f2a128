#include "abelframe/linalg.hpp"

#include <algorithm>

namespace abelframe {

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t psd_rank(const std::vector<double>& eigenvalues, double rel_tol) {
  if (eigenvalues.empty()) return 0;
  const double top = std::max(eigenvalues.back(), 1e-300);
  return static_cast<std::size_t>(std::count_if(eigenvalues.begin(), eigenvalues.end(),
                                                [&](double v) { return v > rel_tol * top; }));
}

}  // namespace abelframe
