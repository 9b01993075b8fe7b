"""Independent mode-matching solver for the same two-terminal device.

The semi-infinite chains are kept exactly by a plane-wave ansatz: on
the left chain the amplitude at site l <= -1 is
e^{i k'(l+1)} + r e^{-i k'(l+1)} (unit incident amplitude at the site
adjacent to the device), on the right chain t e^{i k'(l-1)} for
l >= 1.  Substituting into the stationary single-excitation
Schroedinger equation leaves a finite linear system over r, t and the
device amplitudes.  |t|^2 must agree with the Green-function
transmission to solver precision; it is the package's ground-truth
cross-check.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .bands import lead_momentum
from .model import Device, DeviceMatrix, LeadSpec, PoleError, ValidationError


@dataclass(frozen=True)
class ScatteringSolution:
    """Reflection/transmission amplitudes and the device wavefunction."""

    r: complex
    t: complex
    device_amplitudes: np.ndarray
    energy: float

    @property
    def T(self) -> float:
        return abs(self.t) ** 2

    @property
    def R(self) -> float:
        return abs(self.r) ** 2


def solve_scattering_matrix(mat: DeviceMatrix, left: LeadSpec, right: LeadSpec,
                            energy: float) -> ScatteringSolution:
    """Mode matching against an explicit device matrix.

    Requires `energy` strictly inside the lead band (the amplitudes are
    only defined for a propagating incident wave) and both leads to
    share omega and zeta, so a single momentum k' describes both
    chains.  The lead couplings kappa may differ.
    """
    if left.omega != right.omega or left.zeta != right.zeta:
        raise ValidationError(
            "mode matching requires both leads to share omega and zeta; got "
            f"left=({left.omega}, {left.zeta}), right=({right.omega}, {right.zeta})"
        )
    kp = lead_momentum(left, energy)
    if kp.imag != 0.0 or not 0.0 < kp.real < np.pi:
        raise ValidationError(
            f"energy {energy!r} is not strictly inside the lead band "
            f"[{left.omega - 2 * left.zeta}, {left.omega + 2 * left.zeta}]"
        )
    k = kp.real
    zeta = left.zeta
    dim = mat.dim
    li = mat.site_to_index(left.attach)
    ri = mat.site_to_index(right.attach)

    # unknowns x = [u_0 .. u_{dim-1}, r, t]
    m = np.zeros((dim + 2, dim + 2), dtype=complex)
    rhs = np.zeros(dim + 2, dtype=complex)
    m[:dim, :dim] = energy * np.eye(dim) - mat.matrix
    m[li, dim] = -left.kappa       # kappa_L * (1 + r) drives the device
    m[ri, dim + 1] = -right.kappa
    rhs[li] = left.kappa
    # matching at the last lead sites, using E - omega = -2 zeta cos k
    m[dim, li] = left.kappa
    m[dim, dim] = zeta * cmath.exp(-1j * k)
    rhs[dim] = -zeta * cmath.exp(1j * k)
    m[dim + 1, ri] = right.kappa
    m[dim + 1, dim + 1] = zeta * cmath.exp(-1j * k)

    try:
        x = np.linalg.solve(m, rhs)
    except np.linalg.LinAlgError as exc:
        raise PoleError(f"scattering system singular at E={energy!r}") from exc
    if np.max(np.abs(m @ x - rhs)) > 1e-6 * max(1.0, float(np.max(np.abs(rhs)))):
        raise PoleError(
            f"scattering system ill-conditioned at E={energy!r} (a device "
            f"state is decoupled from both leads)"
        )
    return ScatteringSolution(r=complex(x[dim]), t=complex(x[dim + 1]),
                              device_amplitudes=x[:dim], energy=energy)


def solve_scattering(device: Device, energy: float) -> ScatteringSolution:
    """Scattering amplitudes of a photon incident from the left lead."""
    return solve_scattering_matrix(device.transport_matrix(), device.left,
                                   device.right, energy)
