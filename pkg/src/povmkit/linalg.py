"""Dense complex matrix kernel: Hermitian eigensystems, tensor products, partial trace.

Everything here is a pure function over immutable numpy arrays. Matrices are
complex128, row-major. Composite (system x probe) indices always use the
system-major convention: composite index = i_system * probe_dim + j_probe,
which is what ``numpy.kron(system_op, probe_op)`` produces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionLimit,
    DimensionMismatch,
    NonFinite,
    NotHermitian,
)

# Dense algorithms only; reject composite spaces beyond desk scale.
DIM_LIMIT = 4096


@dataclass(frozen=True)
class Tolerance:
    """Absolute / relative tolerance pair used by every validation check."""

    atol: float = 1e-9
    rtol: float = 1e-8

    def __post_init__(self):
        if self.atol < 0 or self.rtol < 0:
            raise ValueError("tolerances must be nonnegative")


DEFAULT_TOL = Tolerance()


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite complex128 2-D array (read-only)."""
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got ndim={a.ndim}")
    require_finite(a)
    a.setflags(write=False)
    return a


def as_vector(v) -> np.ndarray:
    """Coerce to a finite complex128 1-D array (read-only)."""
    a = np.array(v, dtype=np.complex128)
    if a.ndim != 1:
        raise DimensionMismatch(f"expected a 1-D vector, got ndim={a.ndim}")
    require_finite(a)
    a.setflags(write=False)
    return a


def require_finite(a: np.ndarray) -> None:
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise NonFinite("array contains NaN or Inf entries")


def require_square(m: np.ndarray) -> int:
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return m.shape[0]


def max_abs(m: np.ndarray) -> float:
    """Max-entry norm; the residual scale used by most invariant checks."""
    return float(np.max(np.abs(m))) if m.size else 0.0


def opnorm(m: np.ndarray) -> float:
    """Spectral (operator 2-) norm."""
    return float(np.linalg.norm(m, 2)) if m.size else 0.0


def hermitize(m: np.ndarray) -> np.ndarray:
    """Return (m + m^dagger)/2; removes round-off drift deterministically."""
    return (m + m.conj().T) / 2


def hermiticity_residual(m: np.ndarray) -> float:
    return max_abs(m - m.conj().T)


def is_hermitian(m: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    return hermiticity_residual(m) <= tol.atol


def eig_hermitian(m, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and
    eigenvector k in column k, so ``m = V @ diag(w) @ V.conj().T``.

    Raises NotHermitian if ``max |m - m^dagger|`` exceeds ``tol.atol``; the
    matrix is symmetrized after passing the check.
    """
    a = as_matrix(m)
    require_square(a)
    res = hermiticity_residual(a)
    if res > tol.atol:
        raise NotHermitian(f"symmetry residual {res:.3e} exceeds atol {tol.atol:.3e}")
    w, v = np.linalg.eigh(hermitize(a))
    return w, v


def group_eigensystem(
    w: np.ndarray, v: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> tuple[np.ndarray, list[np.ndarray]]:
    """Merge near-degenerate eigenvalues into spectral outcomes.

    Eigenvalues within ``atol * max(1, max|w|)`` of their neighbour fall into
    one outcome; the outcome value is the group mean and the effect is the
    orthogonal projection onto the merged eigenspace.
    """
    if w.size == 0:
        return np.array([]), []
    gap = tol.atol * max(1.0, float(np.max(np.abs(w))))
    outcomes: list[float] = []
    projections: list[np.ndarray] = []
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[i - 1] > gap:
            block = v[:, start:i]
            outcomes.append(float(np.mean(w[start:i])))
            projections.append(block @ block.conj().T)
            start = i
    return np.array(outcomes), projections


def kron(a, b) -> np.ndarray:
    """Tensor product with the system-major index convention.

    ``kron(a, b)[(i, j), (k, l)] = a[i, k] * b[j, l]`` where the composite
    row index is ``i * b.shape[0] + j``.
    """
    am = as_matrix(a)
    bm = as_matrix(b)
    if am.shape[0] * bm.shape[0] > DIM_LIMIT or am.shape[1] * bm.shape[1] > DIM_LIMIT:
        raise DimensionLimit(
            f"composite dimension {am.shape[0] * bm.shape[0]} exceeds {DIM_LIMIT}"
        )
    return np.kron(am, bm)


def partial_trace_probe(m, system_dim: int, probe_dim: int) -> np.ndarray:
    """Trace out the probe factor of a system-major composite matrix.

    ``result[i, k] = sum_j m[(i, j), (k, j)]``; preserves the trace.
    """
    a = as_matrix(m)
    d = require_square(a)
    if system_dim <= 0 or probe_dim <= 0 or d != system_dim * probe_dim:
        raise DimensionMismatch(
            f"matrix of dim {d} is not system_dim*probe_dim = {system_dim}*{probe_dim}"
        )
    return np.einsum("ijkj->ik", a.reshape(system_dim, probe_dim, system_dim, probe_dim))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def projector(psi: np.ndarray) -> np.ndarray:
    """Rank-one projector |psi><psi| for a unit vector."""
    return np.outer(psi, psi.conj())


def min_eigenvalue(m: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(hermitize(m))[0])


def max_eigenvalue(m: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(hermitize(m))[-1])


def random_hermitian(dim: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return hermitize(g) * scale


def random_psd(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return g @ g.conj().T


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR with the standard phase fix."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))
