"""Spin-chain model: bond-rotated exchange tensors, Zeeman terms, chain assembly.

The chain couples a sender (site 1) and a receiver (site L) through an
interior channel.  The two end bonds are weak (``j0``) and the interior
bonds strong (``J0``); every bond carries the same exchange tensor
``coupling * R(axis, theta_so)``, so all anisotropy enters through one
axis-angle rotation.  The bond energy is ``(1/4) sigma_i . J . sigma_j``
and the Zeeman energy ``(1/2) (g B) . sigma_i``, both in MHz.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .linalg import MAX_SITES, kron, kron_all, pauli

IDENTITY_G: tuple[tuple[float, float, float], ...] = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))

INIT_GROUND = "channel-ground-state"
INIT_SINGLET = "pairwise-singlet"

_AXIS_NORM_TOL = 1e-9


def normalize_axis(v) -> np.ndarray:
    """Return v / |v| as a float 3-vector; rejects zero vectors."""
    v = np.asarray(v, dtype=float).ravel()
    if v.shape != (3,):
        raise ValueError(f"axis must be a 3-vector, got shape {v.shape}")
    norm = float(np.linalg.norm(v))
    if norm < 1e-12:
        raise ValueError("axis vector has zero length")
    return v / norm


def rotation_matrix(axis, theta: float) -> np.ndarray:
    """Proper rotation by ``theta`` (radians) about a unit 3-vector ``axis``.

    Rodrigues form R = cos(t) I + (1 - cos(t)) n n^T + sin(t) K with
    K v = n x v, so R(z, t) rotates x toward y for positive t:
    R(z, t) = [[cos, -sin, 0], [sin, cos, 0], [0, 0, 1]].
    """
    n = np.asarray(axis, dtype=float).ravel()
    if abs(float(np.linalg.norm(n)) - 1.0) > _AXIS_NORM_TOL:
        raise ValueError(f"axis must be normalized (|n| = {np.linalg.norm(n):.12f})")
    nx, ny, nz = n
    cross = np.array([[0.0, -nz, ny], [nz, 0.0, -nx], [-ny, nx, 0.0]])
    return math.cos(theta) * np.eye(3) + (1.0 - math.cos(theta)) * np.outer(n, n) + math.sin(theta) * cross


def rotation_exchange(j0: float, axis, theta: float) -> np.ndarray:
    """Exchange tensor ``j0 * R(axis, theta)`` in MHz; isotropic at theta = 0."""
    if j0 <= 0:
        raise ValueError(f"coupling must be positive, got {j0}")
    return j0 * rotation_matrix(axis, theta)


def bond_hamiltonian(jt: np.ndarray, site_a: int, site_b: int, L: int) -> np.ndarray:
    """Two-site exchange term (1/4) sum_ab J_ab sigma_a^(site_a) sigma_b^(site_b).

    Embedded in the full 2^L space.  Adjacent sites use a single two-site
    block to avoid nine full-size tensor products.
    """
    jt = np.asarray(jt, dtype=float)
    if jt.shape != (3, 3):
        raise ValueError(f"exchange tensor must be 3x3, got {jt.shape}")
    if site_a == site_b:
        raise ValueError("bond requires two distinct sites")
    if not (1 <= site_a <= L and 1 <= site_b <= L):
        raise ValueError(f"bond sites ({site_a}, {site_b}) out of range 1..{L}")
    lo, hi = min(site_a, site_b), max(site_a, site_b)
    if site_a > site_b:
        jt = jt.T  # sigma_a . J . sigma_b = sigma_b . J^T . sigma_a
    axes = ("x", "y", "z")
    if hi == lo + 1:
        block = np.zeros((4, 4), dtype=np.complex128)
        for a, pa in enumerate(axes):
            for b, pb in enumerate(axes):
                if jt[a, b] != 0.0:
                    block += (jt[a, b] / 4.0) * np.kron(pauli(pa), pauli(pb))
        ops = [np.eye(2 ** (lo - 1), dtype=np.complex128), block, np.eye(2 ** (L - hi), dtype=np.complex128)]
        return kron_all(ops)
    h = np.zeros((2**L, 2**L), dtype=np.complex128)
    for a, pa in enumerate(axes):
        for b, pb in enumerate(axes):
            if jt[a, b] == 0.0:
                continue
            factors = [np.eye(2, dtype=np.complex128)] * L
            factors[lo - 1] = pauli(pa)
            factors[hi - 1] = pauli(pb)
            h += (jt[a, b] / 4.0) * kron_all(factors)
    return h


def zeeman_term(B, g, site: int, L: int) -> np.ndarray:
    """Single-site Zeeman term (1/2) (g B) . sigma embedded in the 2^L space."""
    if not 1 <= site <= L:
        raise ValueError(f"site {site} out of range 1..{L}")
    h_eff = np.asarray(g, dtype=float) @ np.asarray(B, dtype=float)
    local = 0.5 * (h_eff[0] * pauli("x") + h_eff[1] * pauli("y") + h_eff[2] * pauli("z"))
    ops = [np.eye(2 ** (site - 1), dtype=np.complex128), local, np.eye(2 ** (L - site), dtype=np.complex128)]
    return kron_all(ops)


def _as_g_tuple(g) -> tuple[tuple[float, float, float], ...]:
    arr = np.asarray(g, dtype=float)
    if arr.shape != (3, 3):
        raise ValueError(f"g-tensor must be 3x3, got {arr.shape}")
    return tuple(tuple(float(x) for x in row) for row in arr)


@dataclass(frozen=True)
class ChainSpec:
    """Full physical description of one simulation instance.

    Fields use MHz for couplings/fields and radians for the bond rotation
    angle.  ``axis`` is normalized on construction.  ``bond_scale`` holds an
    optional per-bond multiplier (length L-1, bond i joins sites i, i+1),
    used by the charge-noise models; ``None`` means all bonds at 1.
    """

    L: int
    J0: float = 160.0
    j0: float = 20.0
    theta_so: float = 0.0
    axis: tuple[float, float, float] = (0.0, 0.0, 1.0)
    B: tuple[float, float, float] = (0.0, 0.0, 0.0)
    g_boundary: tuple[tuple[float, float, float], ...] = IDENTITY_G
    g_channel: tuple[tuple[float, float, float], ...] = IDENTITY_G
    init: str = INIT_GROUND
    bond_scale: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.L < 3:
            raise ValueError(f"chain needs at least 3 spins, got L = {self.L}")
        if self.L > MAX_SITES:
            raise ValueError(f"L = {self.L} exceeds the dense-solver cap of {MAX_SITES} spins")
        if self.J0 <= 0 or self.j0 <= 0:
            raise ValueError("couplings J0 and j0 must be positive")
        if self.init not in (INIT_GROUND, INIT_SINGLET):
            raise ValueError(f"unknown init {self.init!r}")
        if self.init == INIT_SINGLET and (self.L - 2) % 2 != 0:
            raise ValueError("pairwise-singlet initialization needs an even channel length L - 2")
        object.__setattr__(self, "axis", tuple(float(x) for x in normalize_axis(self.axis)))
        b = np.asarray(self.B, dtype=float).ravel()
        if b.shape != (3,):
            raise ValueError("B must be a 3-vector")
        object.__setattr__(self, "B", tuple(float(x) for x in b))
        object.__setattr__(self, "g_boundary", _as_g_tuple(self.g_boundary))
        object.__setattr__(self, "g_channel", _as_g_tuple(self.g_channel))
        if self.bond_scale is not None:
            scale = tuple(float(s) for s in self.bond_scale)
            if len(scale) != self.L - 1:
                raise ValueError(f"bond_scale needs {self.L - 1} entries, got {len(scale)}")
            if any(s <= 0 for s in scale):
                raise ValueError("bond_scale entries must stay positive")
            object.__setattr__(self, "bond_scale", scale)

    @property
    def dim(self) -> int:
        return 2**self.L

    def axis_vec(self) -> np.ndarray:
        return np.asarray(self.axis, dtype=float)

    def b_vec(self) -> np.ndarray:
        return np.asarray(self.B, dtype=float)

    def g_boundary_mat(self) -> np.ndarray:
        return np.asarray(self.g_boundary, dtype=float)

    def g_channel_mat(self) -> np.ndarray:
        return np.asarray(self.g_channel, dtype=float)

    def bond_couplings(self) -> np.ndarray:
        """Coupling strength per bond (bond i joins sites i, i+1), end bonds weak."""
        base = np.full(self.L - 1, self.J0, dtype=float)
        base[0] = self.j0
        base[-1] = self.j0
        if self.bond_scale is not None:
            base *= np.asarray(self.bond_scale, dtype=float)
        return base

    def with_theta_axis(self, theta_so: float, axis) -> "ChainSpec":
        return replace(self, theta_so=float(theta_so), axis=tuple(normalize_axis(axis)))


def assemble_open_chain(n: int, bond_tensors: list[np.ndarray], site_fields: list[np.ndarray]) -> np.ndarray:
    """Sum of nearest-neighbour bond terms and per-site Zeeman fields.

    ``bond_tensors`` has n-1 exchange tensors (3x3); ``site_fields`` has n
    effective fields h = g B (3-vectors).
    """
    if len(bond_tensors) != max(n - 1, 0) or len(site_fields) != n:
        raise ValueError("bond or field count does not match the chain length")
    dim = 2**n
    h = np.zeros((dim, dim), dtype=np.complex128)
    for i, jt in enumerate(bond_tensors, start=1):
        h += bond_hamiltonian(jt, i, i + 1, n)
    for i, h_eff in enumerate(site_fields, start=1):
        if np.any(h_eff != 0.0):
            h += zeeman_term(h_eff, np.eye(3), i, n)
    return h


def build_chain_hamiltonian(spec: ChainSpec) -> np.ndarray:
    """Full-chain Hamiltonian for a ChainSpec: weak end bonds, strong interior,
    one shared bond rotation, boundary vs channel g-tensors."""
    rot = rotation_matrix(spec.axis_vec(), spec.theta_so)
    tensors = [c * rot for c in spec.bond_couplings()]
    fields = []
    for site in range(1, spec.L + 1):
        g = spec.g_boundary_mat() if site in (1, spec.L) else spec.g_channel_mat()
        fields.append(g @ spec.b_vec())
    return assemble_open_chain(spec.L, tensors, fields)


@dataclass(frozen=True)
class FieldGeometry:
    """Electrostatic control geometry mapping a field to (theta_so, axis).

    ``lambda_so_per_inverse_E`` calibrates the inverse-field spin-orbit
    length: lambda_so = calibration / |E|.  The defaults (d = 100 nm,
    calibration such that |E| = 1 gives lambda_so = 100 nm) are
    illustrative; real devices need a measured calibration.
    """

    E: tuple[float, float, float]
    k: tuple[float, float, float] = (1.0, 0.0, 0.0)
    d: float = 100.0
    lambda_so_per_inverse_E: float = 100.0

    def __post_init__(self):
        object.__setattr__(self, "E", tuple(float(x) for x in np.asarray(self.E, dtype=float).ravel()))
        object.__setattr__(self, "k", tuple(float(x) for x in normalize_axis(self.k)))
        if self.d <= 0:
            raise ValueError("inter-dot distance must be positive")
        if self.lambda_so_per_inverse_E <= 0:
            raise ValueError("calibration constant must be positive")


def soc_from_field(geom: FieldGeometry) -> tuple[float, np.ndarray]:
    """Map an electric field to the bond rotation: theta = 2 d / lambda_so,
    axis along k x E.  Fails when E vanishes or is parallel to k."""
    e = np.asarray(geom.E, dtype=float)
    e_norm = float(np.linalg.norm(e))
    if e_norm < 1e-12:
        raise ValueError("electric field is zero; rotation angle undefined")
    axis_raw = np.cross(np.asarray(geom.k, dtype=float), e)
    if float(np.linalg.norm(axis_raw)) < 1e-12 * e_norm:
        raise ValueError("electric field is parallel to the array direction; axis undefined")
    lambda_so = geom.lambda_so_per_inverse_E / e_norm
    theta = 2.0 * geom.d / lambda_so
    return theta, normalize_axis(axis_raw)


def commensurate_angles(L: int, max_n: int) -> list[float]:
    """Rotation angles 2 pi n / (L - 1) for n = 0..max_n, clipped to [0, 2 pi].

    At these angles the accumulated per-bond rotation across the chain is a
    multiple of 2 pi and transfer is restored regardless of the axis.
    """
    if L < 2:
        raise ValueError("need at least one bond (L >= 2)")
    if max_n < 0:
        raise ValueError("max_n must be non-negative")
    step = 2.0 * math.pi / (L - 1)
    out = []
    for n in range(max_n + 1):
        theta = n * step
        if theta <= 2.0 * math.pi + 1e-12:
            out.append(min(theta, 2.0 * math.pi))
    return out
