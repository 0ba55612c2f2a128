#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "abelframe/filterbank.hpp"

namespace abelframe {

/// Modulated filter representation of a filterbank.
///
/// For every character chi_ell of H (fiber order) there is a [G:H] x n block
/// whose entry (j, m) is [G:H]^{-1/2} * dft(f_m)(psi_{ell,j}), psi_{ell,j}
/// running over the fiber of chi_ell in ascending label order. Column m of
/// block ell is the vector y_{m,ell}; the columns of block ell form Y_ell.
/// With U1 = |G|^{-1/2} dft_G and U2 = |H|^{-1/2} dft_H,
///   L^* = U1^{-1} blockdiag(blocks) (U2 + ... + U2),
/// so F is unitarily equivalent to blockdiag(B_ell B_ell^*).
struct SpectralBlocks {
  std::size_t subgroup_order = 0;
  std::size_t index = 0;
  std::size_t filter_count = 0;
  FiberPartition fibers;
  std::vector<Eigen::MatrixXcd> blocks;

  std::size_t count() const { return blocks.size(); }
  /// psi_{ell,j} as canonical label indices.
  const std::vector<std::size_t>& fiber_labels(std::size_t ell) const { return fibers.fibers[ell]; }
};

SpectralBlocks build_modrep(const FilterBank& fb);

/// Max-entry difference between synthesize(fb, y) and the factorized route
/// U1^{-1} H_mod^* (U2 y_0, ..., U2 y_{n-1}).
double verify_factorization(const FilterBank& fb, const SpectralBlocks& blocks,
                            std::span<const SubgroupSignal> y);

/// (min over ell of the smallest eigenvalue of B_ell B_ell^*, max of largest).
FrameBounds block_frame_bounds(const SpectralBlocks& blocks);

/// Union over ell of the eigenvalues of B_ell B_ell^*, ascending.
std::vector<double> block_eigenvalues(const SpectralBlocks& blocks);

/// sum_ell FP(Y_ell).
double block_frame_potential(const SpectralBlocks& blocks);

}  // namespace abelframe
