"""Harmonic analysis and frame potential design on finite abelian groups."""

from ._core import (
    FilterBank,
    Group,
    InputError,
    Subgroup,
    compute_m0,
    convolve,
    dft,
    downsample,
    fp_floor,
    frame_potential,
    fundamental_frame_inequality,
    idft,
    involution,
    minimize_fp,
    standard_basis_bank,
    subgroup_dft,
    translate,
    upsample,
    verify_theorem,
    verify_underdetermined,
)

__all__ = [
    "FilterBank",
    "Group",
    "InputError",
    "Subgroup",
    "compute_m0",
    "convolve",
    "dft",
    "downsample",
    "fp_floor",
    "frame_potential",
    "fundamental_frame_inequality",
    "idft",
    "involution",
    "minimize_fp",
    "standard_basis_bank",
    "subgroup_dft",
    "translate",
    "upsample",
    "verify_theorem",
    "verify_underdetermined",
]
