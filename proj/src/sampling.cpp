#include "abelframe/sampling.hpp"

namespace abelframe {

namespace {

void check_ambient(const GroupSpec& G, const Subgroup& H) {
  if (!(H.ambient() == G)) throw InputError("subgroup does not live in the signal's group");
}

void check_length(std::size_t n, const Subgroup& H) {
  if (n != H.order()) {
    throw InputError("subgroup signal has " + std::to_string(n) + " values, subgroup has order " +
                     std::to_string(H.order()));
  }
}

}  // namespace

SubgroupSignal downsample(const Signal& f, const Subgroup& H) {
  check_ambient(f.group(), H);
  SubgroupSignal out;
  out.reserve(H.order());
  for (auto idx : H.element_indices()) out.push_back(f[idx]);
  return out;
}

Signal upsample(std::span<const Complex> y, const Subgroup& H) {
  check_length(y.size(), H);
  Signal out(H.ambient());
  const auto idx = H.element_indices();
  for (std::size_t k = 0; k < idx.size(); ++k) out[idx[k]] = y[k];
  return out;
}

SubgroupSignal subgroup_dft(std::span<const Complex> y, const Subgroup& H,
                            const FiberPartition& fibers) {
  check_length(y.size(), H);
  const CharacterTable table(H.ambient());
  const auto idx = H.element_indices();
  SubgroupSignal out(fibers.count());
  for (std::size_t l = 0; l < fibers.count(); ++l) {
    const std::size_t label = fibers.fibers[l].front();
    Complex s{0.0, 0.0};
    for (std::size_t k = 0; k < idx.size(); ++k) s += y[k] * std::conj(table(label, idx[k]));
    out[l] = s;
  }
  return out;
}

SubgroupSignal subgroup_dft(std::span<const Complex> y, const Subgroup& H) {
  return subgroup_dft(y, H, fiber_partition(H));
}

SubgroupSignal subgroup_idft(std::span<const Complex> spectrum, const Subgroup& H,
                             const FiberPartition& fibers) {
  check_length(spectrum.size(), H);
  const CharacterTable table(H.ambient());
  const auto idx = H.element_indices();
  const double scale = 1.0 / static_cast<double>(H.order());
  SubgroupSignal out(H.order());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    Complex s{0.0, 0.0};
    for (std::size_t l = 0; l < fibers.count(); ++l) {
      s += spectrum[l] * table(fibers.fibers[l].front(), idx[k]);
    }
    out[k] = s * scale;
  }
  return out;
}

SubgroupSignal downsample_spectrum(const Spectrum& F, const Subgroup& H,
                                   const FiberPartition& fibers) {
  check_ambient(F.group(), H);
  const double scale = 1.0 / static_cast<double>(H.index());
  SubgroupSignal out(fibers.count());
  for (std::size_t l = 0; l < fibers.count(); ++l) {
    Complex s{0.0, 0.0};
    for (auto psi : fibers.fibers[l]) s += F[psi];
    out[l] = s * scale;
  }
  return out;
}

SubgroupSignal downsample_spectrum(const Spectrum& F, const Subgroup& H) {
  return downsample_spectrum(F, H, fiber_partition(H));
}

Spectrum upsample_spectrum(std::span<const Complex> spectrum, const Subgroup& H,
                           const FiberPartition& fibers) {
  check_length(spectrum.size(), H);
  Spectrum out(H.ambient());
  for (std::size_t a = 0; a < out.size(); ++a) out[a] = spectrum[fibers.fiber_of_label[a]];
  return out;
}

}  // namespace abelframe
