#pragma once

#include "abelframe/characters.hpp"
#include "abelframe/transform.hpp"

namespace abelframe {

/// S_H f: restriction of f to H, in H.elements() order.
SubgroupSignal downsample(const Signal& f, const Subgroup& H);

/// S_H^* y: extends y by zero off H.
Signal upsample(std::span<const Complex> y, const Subgroup& H);

// The DFT on l(H) is taken against the characters chi_ell of H in fiber
// order (see fiber_partition), so spectra on H are indexed by ell.

SubgroupSignal subgroup_dft(std::span<const Complex> y, const Subgroup& H,
                            const FiberPartition& fibers);
SubgroupSignal subgroup_dft(std::span<const Complex> y, const Subgroup& H);
SubgroupSignal subgroup_idft(std::span<const Complex> spectrum, const Subgroup& H,
                             const FiberPartition& fibers);

/// Fiber averages |[G:H]|^{-1} sum_{psi in fiber ell} F(psi); equals the
/// spectrum of downsample(f, H) when F = dft(f).
SubgroupSignal downsample_spectrum(const Spectrum& F, const Subgroup& H,
                                   const FiberPartition& fibers);
SubgroupSignal downsample_spectrum(const Spectrum& F, const Subgroup& H);

/// Spectrum of upsample(y, H) from the spectrum of y: the value at label a is
/// the value at the fiber containing a.
Spectrum upsample_spectrum(std::span<const Complex> spectrum, const Subgroup& H,
                           const FiberPartition& fibers);

}  // namespace abelframe
