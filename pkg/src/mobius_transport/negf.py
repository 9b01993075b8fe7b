"""Green-function transport: lead self-energies, resolvent, transmission.

Each semi-infinite chain is eliminated exactly into a complex
self-energy on the diagonal entry of its attachment cavity.  The
retarded Green function G = [(E + i eta) I - H - Sigma_L - Sigma_R]^-1
then gives the transmission T = Gamma_L Gamma_R |G[L', R']|^2, which is
the single-channel reduction of the trace formula
T = Tr[Gamma_1 G Gamma_2 G^dagger].
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bands import lead_momentum
from .model import (
    Convention,
    Device,
    DeviceMatrix,
    LeadSpec,
    PoleError,
    SiteIndex,
)


@dataclass(frozen=True)
class SelfEnergy:
    """Retarded lead self-energy: occupies one diagonal entry.

    Im(value) <= 0 always; the value is purely real when the energy
    lies outside the lead band.
    """

    value: complex
    site: SiteIndex
    convention: Convention


@dataclass(frozen=True)
class Broadening:
    """Gamma = i (Sigma - Sigma*) = -2 Im(Sigma) >= 0."""

    value: float
    site: SiteIndex


def self_energy(lead: LeadSpec, energy: float) -> SelfEnergy:
    """Self-energy of one chain at the given incident energy.

    SURFACE (default): sigma = -(kappa^2/zeta) e^{i k'}, the exact
    surface term of the semi-infinite chain.  LITERAL: sigma =
    -|kappa| e^{i k'}, keeping magnitude kappa (|.| preserves the
    retarded branch for negative couplings; the two signs are gauge
    equivalent).
    """
    kp = lead_momentum(lead, energy)
    if kp.imag > 0.0 or kp.real == 0.0 or kp.real == np.pi:
        # evanescent energies and exact band edges: e^{i k'} is real
        # (+e^{-Im k'} at/below the lower edge, -e^{-Im k'} at/above the
        # upper one); evaluate it as such so the value is exactly real
        sign = 1.0 if kp.real == 0.0 else -1.0
        phase = complex(sign * np.exp(-kp.imag), 0.0)
    else:
        phase = cmath.exp(1j * kp)
    if lead.self_energy_convention is Convention.SURFACE:
        value = -(lead.kappa ** 2 / lead.zeta) * phase
    else:
        value = -abs(lead.kappa) * phase
    return SelfEnergy(value, lead.attach, lead.self_energy_convention)


def broadening(sigma: SelfEnergy) -> Broadening:
    return Broadening(-2.0 * sigma.value.imag, sigma.site)


def _auto_eta(matrix: np.ndarray, gammas_positive: bool) -> float:
    if gammas_positive:
        return 0.0
    scale = max(1.0, float(np.max(np.abs(matrix))))
    return 1e-9 * scale


def green_function(device: DeviceMatrix, energy: float,
                   sigma_left: SelfEnergy, sigma_right: SelfEnergy,
                   eta: Optional[float] = None) -> np.ndarray:
    """Full retarded Green function matrix (diagnostic mode).

    eta=None resolves to 0 when at least one broadening is positive
    (the self-energies already shift the poles off the real axis) and
    to a small positive regulariser otherwise.
    """
    li = device.site_to_index(sigma_left.site)
    ri = device.site_to_index(sigma_right.site)
    open_system = sigma_left.value.imag < 0.0 or sigma_right.value.imag < 0.0
    if eta is None:
        eta = _auto_eta(device.matrix, open_system)
    dim = device.dim
    a = (energy + 1j * eta) * np.eye(dim, dtype=complex) - device.matrix
    a[li, li] -= sigma_left.value
    a[ri, ri] -= sigma_right.value
    try:
        g = np.linalg.solve(a, np.eye(dim, dtype=complex))
    except np.linalg.LinAlgError as exc:
        raise PoleError(
            f"resolvent singular at E={energy!r} (device eigenvalue with both "
            f"leads evanescent); retry with eta > 0"
        ) from exc
    residual = np.max(np.abs(a @ g - np.eye(dim)))
    if residual > 1e-6:
        raise PoleError(
            f"resolvent ill-conditioned at E={energy!r} (residual {residual:.2e}); "
            f"retry with eta > 0"
        )
    return g


def _transmission_element(matrix: np.ndarray, li: int, ri: int,
                          s_left: complex, s_right: complex,
                          energy: float, eta: float) -> complex:
    """G[li, ri] via a single column solve."""
    dim = matrix.shape[0]
    a = (energy + 1j * eta) * np.eye(dim, dtype=complex) - matrix
    a[li, li] -= s_left
    a[ri, ri] -= s_right
    rhs = np.zeros(dim, dtype=complex)
    rhs[ri] = 1.0
    try:
        col = np.linalg.solve(a, rhs)
    except np.linalg.LinAlgError as exc:
        raise PoleError(
            f"resolvent singular at E={energy!r}; retry with eta > 0"
        ) from exc
    # a state decoupled from both leads can make the solve singular even
    # with complex self-energies; the residual blows up with it
    if np.max(np.abs(a @ col - rhs)) > 1e-6:
        raise PoleError(
            f"resolvent ill-conditioned at E={energy!r} (a device state is "
            f"decoupled from both leads); retry with eta > 0"
        )
    return col[li]


def transmission_matrix(matrix: DeviceMatrix, left: LeadSpec, right: LeadSpec,
                        energy: float, eta: float = 0.0) -> float:
    """Transmission through an explicit device matrix.

    Because each broadening acts on a single site, the trace formula
    collapses to Gamma_L Gamma_R |G[L', R']|^2 and one column solve
    suffices.  Returns 0 exactly whenever either broadening vanishes
    (energy outside a lead band, or kappa = 0).
    """
    s_l = self_energy(left, energy)
    s_r = self_energy(right, energy)
    g_l = broadening(s_l).value
    g_r = broadening(s_r).value
    if g_l <= 0.0 or g_r <= 0.0:
        return 0.0
    li = matrix.site_to_index(left.attach)
    ri = matrix.site_to_index(right.attach)
    g_lr = _transmission_element(matrix.matrix, li, ri, s_l.value, s_r.value,
                                 energy, eta)
    return g_l * g_r * abs(g_lr) ** 2


def transmission(device: Device, energy: float,
                 eta: Optional[float] = None,
                 matrix: Optional[DeviceMatrix] = None) -> float:
    """Transmission probability of a monochromatic photon at `energy`.

    The self-energies shift every pole off the real axis wherever the
    transmission can be nonzero, so the solve is well conditioned at
    eta = 0, the default.  Pass `matrix` to reuse a prebuilt device
    matrix across an energy sweep.
    """
    mat = matrix if matrix is not None else device.transport_matrix()
    return transmission_matrix(mat, device.left, device.right, energy,
                               eta if eta is not None else 0.0)
