"""Dense complex linear algebra on tensor-product spin spaces.

Conventions used throughout the package:

* Site 1 is the leftmost (most significant) tensor factor: in a chain of
  ``L`` spins the computational-basis index of site ``k`` lives in bit
  ``L - k`` of the state index.  Spin up maps to bit value 0, so
  ``|up> = (1, 0)``.
* Couplings and fields carry linear-frequency units (MHz), times are in
  microseconds.  The propagator applies a phase ``2*pi*f*t`` per eigenvalue
  ``f``; pass ``two_pi=False`` to drop the 2*pi factor for sensitivity
  checks.

Everything here is a pure function of its arguments; arrays are never
mutated, so values can be shared freely between concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Dense storage only: 2^14 x 2^14 complex is ~4 GB transiently during
# assembly, anything above is rejected rather than left to thrash.
MAX_SITES = 14
MAX_DIM = 2**MAX_SITES

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
    "identity": np.eye(2, dtype=np.complex128),
}

UP = np.array([1.0, 0.0], dtype=np.complex128)
DOWN = np.array([0.0, 1.0], dtype=np.complex128)


def pauli(axis: str) -> np.ndarray:
    """Return a copy of the Pauli matrix for ``axis`` in {x, y, z, identity}."""
    try:
        return _PAULI[axis].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli axis {axis!r}; expected x, y, z or identity") from None


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with a guard against runaway dimensions."""
    dim = a.shape[0] * b.shape[0]
    if dim > MAX_DIM:
        raise ValueError(f"tensor-product dimension {dim} exceeds the dense cap {MAX_DIM}")
    return np.kron(a, b)


def kron_all(ops: list[np.ndarray]) -> np.ndarray:
    """Left-to-right Kronecker product of a list of operators or vectors."""
    out = ops[0]
    for op in ops[1:]:
        out = kron(out, op)
    return out


def embed_site_operator(op: np.ndarray, site: int, L: int) -> np.ndarray:
    """Embed a single-site 2x2 operator at ``site`` (1-based) in an L-spin chain.

    Site 1 is the most significant tensor factor.
    """
    if not 1 <= site <= L:
        raise ValueError(f"site {site} out of range 1..{L}")
    if 2**L > MAX_DIM:
        raise ValueError(f"chain of {L} sites exceeds the dense cap of {MAX_SITES}")
    left = np.eye(2 ** (site - 1), dtype=np.complex128)
    right = np.eye(2 ** (L - site), dtype=np.complex128)
    return kron(kron(left, op.astype(np.complex128)), right)


@dataclass(frozen=True)
class EigenSystem:
    """Spectral decomposition H = V diag(eigenvalues) V^dagger.

    Eigenvalues ascend; each eigenvector column has its largest-magnitude
    amplitude rotated to be real positive so repeated runs (and CSV dumps)
    are reproducible.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]


def _fix_column_phases(vecs: np.ndarray) -> np.ndarray:
    idx = np.argmax(np.abs(vecs), axis=0)
    anchors = vecs[idx, np.arange(vecs.shape[1])]
    phases = anchors / np.abs(anchors)
    return vecs / phases[np.newaxis, :]


def hermitian_eig(h: np.ndarray, atol: float = 1e-10) -> EigenSystem:
    """Eigendecompose a Hermitian matrix.

    The input must be Hermitian within ``atol`` (relative to its largest
    entry); it is then symmetrized to absorb floating-point assembly noise
    before calling the dense solver.
    """
    h = np.asarray(h, dtype=np.complex128)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    scale = max(1.0, float(np.max(np.abs(h))) if h.size else 1.0)
    dev = float(np.max(np.abs(h - h.conj().T)))
    if dev > atol * scale:
        raise ValueError(f"matrix is not Hermitian: max |h - h^dag| = {dev:.3e}")
    h = (h + h.conj().T) / 2.0
    vals, vecs = np.linalg.eigh(h)
    return EigenSystem(eigenvalues=vals, eigenvectors=_fix_column_phases(vecs))


def check_normalized(psi: np.ndarray, atol: float = 1e-9) -> np.ndarray:
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > atol:
        raise ValueError(f"state is not normalized: |psi| = {norm:.12f}")
    return psi


def evolve(eig: EigenSystem, psi0: np.ndarray, t: float, two_pi: bool = True) -> np.ndarray:
    """Propagate ``psi0`` for time ``t`` (us) under the decomposed Hamiltonian.

    Returns V exp(-i * 2*pi * lambda * t) V^dagger psi0 with eigenvalues in
    MHz; ``two_pi=False`` uses plain exp(-i * lambda * t).
    """
    psi0 = check_normalized(psi0)
    if psi0.shape[0] != eig.dim:
        raise ValueError(f"state dim {psi0.shape[0]} does not match operator dim {eig.dim}")
    omega = eig.eigenvalues * (2.0 * np.pi if two_pi else 1.0)
    coeffs = eig.eigenvectors.conj().T @ psi0
    return eig.eigenvectors @ (np.exp(-1j * omega * t) * coeffs)


def evolve_grid(eig: EigenSystem, psi0: np.ndarray, times: np.ndarray, two_pi: bool = True) -> np.ndarray:
    """Propagate ``psi0`` over every time in ``times``; returns (dim, nt) states."""
    psi0 = check_normalized(psi0)
    if psi0.shape[0] != eig.dim:
        raise ValueError(f"state dim {psi0.shape[0]} does not match operator dim {eig.dim}")
    omega = eig.eigenvalues * (2.0 * np.pi if two_pi else 1.0)
    coeffs = eig.eigenvectors.conj().T @ psi0
    phases = np.exp(-1j * np.outer(omega, np.asarray(times, dtype=float)))
    return eig.eigenvectors @ (phases * coeffs[:, np.newaxis])
