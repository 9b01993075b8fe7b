"""Single-photon transport through a Mobius ring of coupled cavities.

The ring is a two-leg cavity ladder closed with a half twist, opened by
two semi-infinite chain leads and optionally loaded with a two-level
atom acting as a switch for non-reciprocal transmission.  Transport is
computed with an exact lead-eliminating Green-function solver, cross
checked by an independent mode-matching solver.
"""

from .bands import (
    Band,
    band_center,
    band_edges,
    discrete_momenta,
    is_propagating,
    lead_momentum,
    ring_dispersion,
    ring_spectrum,
)
from .experiments import (
    DetuningReference,
    DetuningSweep,
    MomentumSweep,
    NonreciprocitySummary,
    Scenario,
    TransmissionCurve,
    default_leads,
    nonreciprocity,
    preset,
    preset_names,
    run_sweep,
    sweep_detuning,
    sweep_momentum,
)
from .model import (
    AtomSpec,
    Convention,
    Device,
    DeviceMatrix,
    Layer,
    LeadSpec,
    PoleError,
    RingSpec,
    SiteIndex,
    ValidationError,
    build_ring,
    embed_atom,
    validate_attachments,
)
from .negf import (
    Broadening,
    SelfEnergy,
    broadening,
    green_function,
    self_energy,
    transmission,
    transmission_matrix,
)
from .scattering import (
    ScatteringSolution,
    solve_scattering,
    solve_scattering_matrix,
)

__all__ = [
    "AtomSpec",
    "Band",
    "Broadening",
    "Convention",
    "DetuningReference",
    "DetuningSweep",
    "Device",
    "DeviceMatrix",
    "Layer",
    "LeadSpec",
    "MomentumSweep",
    "NonreciprocitySummary",
    "PoleError",
    "RingSpec",
    "ScatteringSolution",
    "Scenario",
    "SelfEnergy",
    "SiteIndex",
    "TransmissionCurve",
    "ValidationError",
    "band_center",
    "band_edges",
    "broadening",
    "build_ring",
    "default_leads",
    "discrete_momenta",
    "embed_atom",
    "green_function",
    "is_propagating",
    "lead_momentum",
    "nonreciprocity",
    "preset",
    "preset_names",
    "ring_dispersion",
    "ring_spectrum",
    "run_sweep",
    "self_energy",
    "solve_scattering",
    "solve_scattering_matrix",
    "sweep_detuning",
    "sweep_momentum",
    "transmission",
    "transmission_matrix",
    "validate_attachments",
]

__version__ = "0.1.0"
