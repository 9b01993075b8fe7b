"""Real-space device construction for the Mobius cavity ring.

The device is a two-leg ladder of 2N cavities closed with a half twist:
the upper chain a_0..a_{N-1} and lower chain b_0..b_{N-1} are glued as
a_N = b_0 and b_N = a_0, so the bond graph is a single non-orientable
loop of length 2N.  Cavities on the same rung are coupled with strength
V, neighbouring cavities along either leg with strength xi, and an
optional two-level atom couples to one upper-leg cavity with strength
gamma.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np


class ValidationError(ValueError):
    """A spec value violates one of its invariants."""


class PoleError(RuntimeError):
    """The resolvent is singular at the requested energy (try eta > 0)."""


class Convention(Enum):
    """Lead self-energy convention.

    SURFACE is the exact elimination of a semi-infinite chain,
    sigma = -(kappa**2 / zeta) * exp(i k'); LITERAL keeps the magnitude
    kappa instead of kappa**2/zeta, sigma = -kappa * exp(i k').
    """

    SURFACE = "surface"
    LITERAL = "literal"


class Layer(Enum):
    UPPER_A = "a"
    LOWER_B = "b"
    ATOM = "atom"


@dataclass(frozen=True)
class SiteIndex:
    """Position of one device site: layer + rung index j.

    The matrix ordering is fixed across the package: upper-leg block
    first (a_j -> j), lower-leg block second (b_j -> N + j), atom last
    (-> 2N).
    """

    layer: Layer
    j: int = 0

    @classmethod
    def upper(cls, j: int) -> "SiteIndex":
        return cls(Layer.UPPER_A, j)

    @classmethod
    def lower(cls, j: int) -> "SiteIndex":
        return cls(Layer.LOWER_B, j)

    @classmethod
    def atom(cls) -> "SiteIndex":
        return cls(Layer.ATOM, 0)

    def label(self) -> str:
        if self.layer is Layer.ATOM:
            return "atom"
        return f"{self.layer.value}_{self.j}"


@dataclass(frozen=True)
class RingSpec:
    """Mobius ring parameters: N rungs, cavity frequency epsilon,
    rung coupling V, intra-leg hopping xi."""

    N: int
    V: float
    xi: float
    epsilon: float = 0.0

    def __post_init__(self) -> None:
        if self.N < 2:
            raise ValidationError(f"ring.N must be >= 2, got {self.N}")
        if self.xi == 0.0:
            raise ValidationError(
                "ring.xi must be nonzero (xi = 0 disconnects the ring along "
                "the transport direction)"
            )


@dataclass(frozen=True)
class LeadSpec:
    """One semi-infinite chain lead.

    omega is the chain cavity frequency, zeta > 0 the chain hopping and
    kappa the device-chain coupling.  Leads attach to upper-leg cavities
    only; `attach` must therefore be an UPPER_A site.
    """

    omega: float
    zeta: float
    kappa: float
    attach: SiteIndex
    self_energy_convention: Convention = Convention.SURFACE

    def __post_init__(self) -> None:
        if self.zeta <= 0.0:
            raise ValidationError(f"lead.zeta must be > 0, got {self.zeta}")
        if self.attach.layer is not Layer.UPPER_A:
            raise ValidationError(
                f"lead.attach must be an upper-leg (a_j) site, got "
                f"{self.attach.label()}"
            )
        if self.attach.j < 0:
            raise ValidationError(f"lead.attach index must be >= 0, got {self.attach.j}")


@dataclass(frozen=True)
class AtomSpec:
    """Two-level atom of frequency omega_a coupled with strength gamma
    to the upper-leg cavity a_n."""

    omega_a: float
    gamma: float
    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValidationError(f"atom.n must be >= 0, got {self.n}")


@dataclass(frozen=True)
class DeviceMatrix:
    """Dense real-symmetric Hamiltonian of the closed device.

    dim = 2N for the bare ring, 2N + 1 once the atom row is appended.
    The entries array is frozen (read-only) so instances are safe to
    share between workers.
    """

    matrix: np.ndarray
    n_rungs: Optional[int] = None
    has_atom: bool = False

    def __post_init__(self) -> None:
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
            raise ValidationError(f"device matrix must be square, got {self.matrix.shape}")
        self.matrix.flags.writeable = False

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, n_rungs: Optional[int] = None,
                    has_atom: bool = False) -> "DeviceMatrix":
        """Wrap a raw square array (diagnostics and toy devices)."""
        return cls(np.array(matrix, dtype=float), n_rungs, has_atom)

    def site_to_index(self, site: SiteIndex) -> int:
        """Resolve a SiteIndex to a matrix row/column."""
        if site.layer is Layer.ATOM:
            if not self.has_atom:
                raise ValidationError("device has no atom row")
            return self.dim - 1
        if site.layer is Layer.LOWER_B:
            if self.n_rungs is None:
                raise ValidationError("lower-leg site on a device without rung layout")
            idx = self.n_rungs + site.j
        else:
            idx = site.j
        if self.n_rungs is not None and not 0 <= site.j < self.n_rungs:
            raise ValidationError(
                f"site {site.label()} out of range for N={self.n_rungs}"
            )
        if not 0 <= idx < self.dim:
            raise ValidationError(f"site {site.label()} out of range for dim={self.dim}")
        return idx


def build_ring(spec: RingSpec) -> DeviceMatrix:
    """Assemble the 2N x 2N Mobius ring Hamiltonian.

    Diagonal epsilon on every cavity, -V on each rung, -xi between
    neighbours along each leg, and the twist bonds -xi between
    a_{N-1} -- b_0 and b_{N-1} -- a_0.
    """
    N = spec.N
    h = np.zeros((2 * N, 2 * N))
    np.fill_diagonal(h, spec.epsilon)
    for j in range(N):
        h[j, N + j] = h[N + j, j] = -spec.V
    for j in range(N - 1):
        h[j, j + 1] = h[j + 1, j] = -spec.xi
        h[N + j, N + j + 1] = h[N + j + 1, N + j] = -spec.xi
    h[N - 1, N] = h[N, N - 1] = -spec.xi        # a_{N-1} -- b_0
    h[2 * N - 1, 0] = h[0, 2 * N - 1] = -spec.xi  # b_{N-1} -- a_0
    return DeviceMatrix(h, n_rungs=N, has_atom=False)


def embed_atom(device: DeviceMatrix, atom: AtomSpec) -> DeviceMatrix:
    """Append the atom row: diagonal omega_a, off-diagonal +gamma to a_n."""
    if device.has_atom:
        raise ValidationError("device already contains an atom row")
    if device.n_rungs is None or not 0 <= atom.n < device.n_rungs:
        raise ValidationError(
            f"atom.n out of range: n={atom.n} for N={device.n_rungs}"
        )
    dim = device.dim
    h = np.zeros((dim + 1, dim + 1))
    h[:dim, :dim] = device.matrix
    h[dim, dim] = atom.omega_a
    h[dim, atom.n] = h[atom.n, dim] = atom.gamma
    return DeviceMatrix(h, n_rungs=device.n_rungs, has_atom=True)


@dataclass(frozen=True)
class Device:
    """Checked two-terminal device: ring + two leads + optional atom."""

    ring: RingSpec
    left: LeadSpec
    right: LeadSpec
    atom: Optional[AtomSpec] = None

    def device_matrix(self) -> DeviceMatrix:
        h = build_ring(self.ring)
        if self.atom is not None:
            h = embed_atom(h, self.atom)
        return h

    def transport_matrix(self) -> DeviceMatrix:
        """Matrix used by the solvers.

        A zero-coupled atom is dropped: the decoupling is exact (block
        diagonal) and keeping the row would make the solve singular
        whenever the energy hits omega_a.
        """
        if self.atom is not None and self.atom.gamma == 0.0:
            return build_ring(self.ring)
        return self.device_matrix()

    def with_atom(self, atom: Optional[AtomSpec]) -> "Device":
        return Device(self.ring, self.left, self.right, atom)

    @property
    def left_index(self) -> int:
        return self.left.attach.j

    @property
    def right_index(self) -> int:
        return self.right.attach.j


def validate_attachments(ring: RingSpec, left: LeadSpec, right: LeadSpec,
                         atom: Optional[AtomSpec] = None) -> Device:
    """Check both attachments and the optional atom against the ring."""
    for name, lead in (("left", left), ("right", right)):
        if not 0 <= lead.attach.j < ring.N:
            raise ValidationError(
                f"{name} lead attaches at {lead.attach.label()} but N={ring.N}"
            )
    if left.attach == right.attach:
        raise ValidationError(
            f"leads must attach at distinct sites, both at {left.attach.label()}"
        )
    if atom is not None and not 0 <= atom.n < ring.N:
        raise ValidationError(f"atom.n out of range: n={atom.n} for N={ring.N}")
    return Device(ring, left, right, atom)
