"""Closed-form dispersions of the ring and of the chain leads.

After the local gauge transform that absorbs the twist, the ring
splits into two bands,

    E_up(k)  = epsilon + V - 2 xi cos(k - pi/N)
    E_low(k) = epsilon - V - 2 xi cos(k)

with k the gauged (periodic) momentum.  The twist survives as the
pi/N shift of the upper band's symmetry axis away from k = 0, which
is what makes the two propagation directions inequivalent.
"""

from __future__ import annotations

import cmath
from enum import Enum

import numpy as np

from .model import LeadSpec, RingSpec


class Band(Enum):
    UPPER = "upper"
    LOWER = "lower"


def ring_dispersion(spec: RingSpec, band: Band, k):
    """Band energy at momentum k (scalar or array, any real value)."""
    if band is Band.UPPER:
        return spec.epsilon + spec.V - 2.0 * spec.xi * np.cos(k - np.pi / spec.N)
    return spec.epsilon - spec.V - 2.0 * spec.xi * np.cos(k)


def band_edges(spec: RingSpec, band: Band) -> tuple[float, float]:
    """(min, max) energy of the band over the Brillouin zone."""
    center = spec.epsilon + (spec.V if band is Band.UPPER else -spec.V)
    half = 2.0 * abs(spec.xi)
    return (center - half, center + half)


def band_center(spec: RingSpec, band: Band) -> float:
    return spec.epsilon + (spec.V if band is Band.UPPER else -spec.V)


def discrete_momenta(spec: RingSpec) -> np.ndarray:
    """Momenta 2 pi m / N quantised by the periodic gauged fields.

    Substituted into ring_dispersion these reproduce the eigenvalues of
    the real-space ring matrix for both bands: the upper band's
    antiperiodicity is already carried by the pi/N shift inside its
    dispersion, so the same periodic grid applies to both.
    """
    return 2.0 * np.pi * np.arange(spec.N) / spec.N


def ring_spectrum(spec: RingSpec) -> np.ndarray:
    """Sorted analytic eigenvalues of the 2N-site ring."""
    ks = discrete_momenta(spec)
    return np.sort(np.concatenate([
        ring_dispersion(spec, Band.UPPER, ks),
        ring_dispersion(spec, Band.LOWER, ks),
    ]))


def lead_momentum(lead: LeadSpec, energy: float) -> complex:
    """Solve energy = omega - 2 zeta cos(k') for the retarded branch.

    In-band energies (|energy - omega| <= 2 zeta) give real k' in
    [0, pi].  Outside the band the momentum acquires a positive
    imaginary part so the lead wave decays away from the device:
    k' = i arccosh(.) below the band, pi + i arccosh(.) above it.
    """
    x = (energy - lead.omega) / (2.0 * lead.zeta)
    if abs(x) <= 1.0:
        return complex(np.arccos(-x))
    if x > 1.0:
        return complex(np.pi, np.arccosh(x))
    return complex(0.0, np.arccosh(-x))


def is_propagating(lead: LeadSpec, energy: float) -> bool:
    """True when the energy lies strictly inside the lead band."""
    return abs(energy - lead.omega) < 2.0 * lead.zeta


def chain_energy(lead: LeadSpec, k: complex) -> complex:
    """Lead dispersion omega - 2 zeta cos(k), for complex momenta too."""
    return lead.omega - 2.0 * lead.zeta * cmath.cos(k)
