#include "abelframe/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "abelframe/linalg.hpp"
#include "abelframe/modrep.hpp"

namespace abelframe {

FilterBank::FilterBank(Subgroup subgroup, std::vector<Signal> filters)
    : subgroup_(std::move(subgroup)), filters_(std::move(filters)) {
  if (filters_.empty()) throw InputError("a filterbank needs at least one filter");
  for (const auto& f : filters_) {
    if (!(f.group() == subgroup_.ambient())) {
      throw InputError("filter does not live on the subgroup's ambient group");
    }
  }
}

std::vector<double> FilterBank::norms() const {
  std::vector<double> out;
  out.reserve(filters_.size());
  for (const auto& f : filters_) out.push_back(f.norm());
  return out;
}

FilterBank FilterBank::with_filters(std::vector<Signal> filters) const {
  return FilterBank(subgroup_, std::move(filters));
}

FilterBank standard_basis_bank(const GroupSpec& G) {
  return FilterBank(Subgroup::full(G), {delta(G, G.identity())});
}

std::vector<Signal> expand_system(const FilterBank& fb) {
  std::vector<Signal> out;
  out.reserve(fb.size() * fb.subgroup().order());
  for (const auto& f : fb.filters()) {
    for (auto h : fb.subgroup().element_indices()) out.push_back(translate_index(f, h));
  }
  return out;
}

std::vector<SubgroupSignal> analyze(const FilterBank& fb, const Signal& f) {
  f.check_same(fb.filter(0));
  const auto& G = fb.group();
  const auto hidx = fb.subgroup().element_indices();
  std::vector<SubgroupSignal> out;
  out.reserve(fb.size());
  for (const auto& fm : fb.filters()) {
    SubgroupSignal y(hidx.size());
    for (std::size_t k = 0; k < hidx.size(); ++k) {
      Complex s{0.0, 0.0};
      for (std::size_t x = 0; x < G.order(); ++x) {
        s += f[x] * std::conj(fm[G.subtract_index(x, hidx[k])]);
      }
      y[k] = s;
    }
    out.push_back(std::move(y));
  }
  return out;
}

std::vector<SubgroupSignal> analyze_convolution(const FilterBank& fb, const Signal& f) {
  std::vector<SubgroupSignal> out;
  out.reserve(fb.size());
  for (const auto& fm : fb.filters()) {
    out.push_back(downsample(convolve(f, involution(fm)), fb.subgroup()));
  }
  return out;
}

namespace {

void check_coefficients(const FilterBank& fb, std::span<const SubgroupSignal> y) {
  if (y.size() != fb.size()) {
    throw InputError("expected " + std::to_string(fb.size()) + " coefficient channels, got " +
                     std::to_string(y.size()));
  }
  for (const auto& ym : y) {
    if (ym.size() != fb.subgroup().order()) {
      throw InputError("coefficient channel length does not match the subgroup order");
    }
  }
}

}  // namespace

Signal synthesize(const FilterBank& fb, std::span<const SubgroupSignal> y) {
  check_coefficients(fb, y);
  const auto& G = fb.group();
  const auto hidx = fb.subgroup().element_indices();
  Signal out(G);
  for (std::size_t m = 0; m < fb.size(); ++m) {
    const auto& fm = fb.filter(m);
    for (std::size_t k = 0; k < hidx.size(); ++k) {
      const Complex c = y[m][k];
      if (c == Complex{}) continue;
      for (std::size_t x = 0; x < G.order(); ++x) out[x] += c * fm[G.subtract_index(x, hidx[k])];
    }
  }
  return out;
}

Signal synthesize_convolution(const FilterBank& fb, std::span<const SubgroupSignal> y) {
  check_coefficients(fb, y);
  Signal out(fb.group());
  for (std::size_t m = 0; m < fb.size(); ++m) {
    out += convolve(upsample(y[m], fb.subgroup()), fb.filter(m));
  }
  return out;
}

Signal frame_operator_apply(const FilterBank& fb, const Signal& f) {
  return synthesize(fb, analyze(fb, f));
}

Eigen::MatrixXcd frame_operator_matrix(std::span<const Signal> system) {
  if (system.empty()) return {};
  const auto d = static_cast<Eigen::Index>(system.front().size());
  Eigen::MatrixXcd X(d, static_cast<Eigen::Index>(system.size()));
  for (std::size_t k = 0; k < system.size(); ++k) {
    if (static_cast<Eigen::Index>(system[k].size()) != d) {
      throw InputError("collection mixes vectors of different length");
    }
    for (Eigen::Index i = 0; i < d; ++i) X(i, static_cast<Eigen::Index>(k)) = system[k][i];
  }
  return X * X.adjoint();
}

std::vector<double> frame_operator_eigenvalues(std::span<const Signal> system) {
  return hermitian_eigenvalues(frame_operator_matrix(system));
}

FrameBounds frame_bounds_dense(const FilterBank& fb) {
  const auto ev = frame_operator_eigenvalues(expand_system(fb));
  return {std::max(ev.front(), 0.0), ev.back()};
}

FrameBounds frame_bounds(const FilterBank& fb) {
  const FrameBounds blocks = block_frame_bounds(build_modrep(fb));
  if (fb.group().order() <= 64) {
    const FrameBounds dense = frame_bounds_dense(fb);
    const double scale = 1e-8 * std::max(1.0, dense.upper);
    if (std::abs(dense.lower - blocks.lower) > scale || std::abs(dense.upper - blocks.upper) > scale) {
      throw std::logic_error("block and dense frame bounds disagree");
    }
  }
  return blocks;
}

double frame_potential(std::span<const Signal> system) {
  double fp = 0.0;
  for (std::size_t j = 0; j < system.size(); ++j) {
    fp += system[j].norm_squared() * system[j].norm_squared();
    for (std::size_t k = j + 1; k < system.size(); ++k) {
      fp += 2.0 * std::norm(inner(system[j].values(), system[k].values()));
    }
  }
  return fp;
}

double frame_potential_fb(const FilterBank& fb) { return block_frame_potential(build_modrep(fb)); }

TightVerdict is_tight(const FilterBank& fb, double eps) {
  if (!(eps > 0.0)) throw InputError("tightness tolerance must be positive");
  const FrameBounds b = frame_bounds(fb);
  return {b.lower > 0.0 && b.upper <= (1.0 + eps) * b.lower, 0.5 * (b.lower + b.upper)};
}

}  // namespace abelframe
