#include "abelframe/modrep.hpp"

#include <algorithm>
#include <cmath>

#include "abelframe/linalg.hpp"

namespace abelframe {

SpectralBlocks build_modrep(const FilterBank& fb) {
  const auto& H = fb.subgroup();
  SpectralBlocks out;
  out.subgroup_order = H.order();
  out.index = H.index();
  out.filter_count = fb.size();
  out.fibers = fiber_partition(H);

  std::vector<Spectrum> spectra;
  spectra.reserve(fb.size());
  for (const auto& f : fb.filters()) spectra.push_back(dft(f));

  const double scale = 1.0 / std::sqrt(static_cast<double>(out.index));
  const auto rows = static_cast<Eigen::Index>(out.index);
  const auto cols = static_cast<Eigen::Index>(fb.size());
  out.blocks.reserve(out.fibers.count());
  for (const auto& fiber : out.fibers.fibers) {
    Eigen::MatrixXcd block(rows, cols);
    for (Eigen::Index j = 0; j < rows; ++j) {
      for (Eigen::Index m = 0; m < cols; ++m) {
        block(j, m) = scale * spectra[static_cast<std::size_t>(m)][fiber[static_cast<std::size_t>(j)]];
      }
    }
    out.blocks.push_back(std::move(block));
  }
  return out;
}

double verify_factorization(const FilterBank& fb, const SpectralBlocks& blocks,
                            std::span<const SubgroupSignal> y) {
  const Signal direct = synthesize(fb, y);

  const auto& H = fb.subgroup();
  const auto& G = fb.group();
  const double u2 = 1.0 / std::sqrt(static_cast<double>(H.order()));
  std::vector<SubgroupSignal> yhat;
  yhat.reserve(y.size());
  for (const auto& ym : y) {
    auto s = subgroup_dft(ym, H, blocks.fibers);
    for (auto& v : s) v *= u2;
    yhat.push_back(std::move(s));
  }

  // U1 L^* y, assembled fiber by fiber.
  Spectrum rotated(G);
  const auto n = static_cast<Eigen::Index>(y.size());
  for (std::size_t l = 0; l < blocks.count(); ++l) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index m = 0; m < n; ++m) v(m) = yhat[static_cast<std::size_t>(m)][l];
    const Eigen::VectorXcd z = blocks.blocks[l] * v;
    const auto& labels = blocks.fiber_labels(l);
    for (std::size_t j = 0; j < labels.size(); ++j) rotated[labels[j]] = z(static_cast<Eigen::Index>(j));
  }
  Signal factored = idft(rotated);
  factored *= std::sqrt(static_cast<double>(G.order()));

  double worst = 0.0;
  for (std::size_t x = 0; x < G.order(); ++x) worst = std::max(worst, std::abs(direct[x] - factored[x]));
  return worst;
}

FrameBounds block_frame_bounds(const SpectralBlocks& blocks) {
  FrameBounds b{std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& B : blocks.blocks) {
    const auto ev = hermitian_eigenvalues(B * B.adjoint());
    b.lower = std::min(b.lower, ev.front());
    b.upper = std::max(b.upper, ev.back());
  }
  b.lower = std::max(b.lower, 0.0);
  return b;
}

std::vector<double> block_eigenvalues(const SpectralBlocks& blocks) {
  std::vector<double> out;
  for (const auto& B : blocks.blocks) {
    const auto ev = hermitian_eigenvalues(B * B.adjoint());
    out.insert(out.end(), ev.begin(), ev.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

double block_frame_potential(const SpectralBlocks& blocks) {
  double fp = 0.0;
  for (const auto& B : blocks.blocks) fp += (B.adjoint() * B).squaredNorm();
  return fp;
}

}  // namespace abelframe
