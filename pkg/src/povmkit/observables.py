"""Observables: POVMs, spectral measures, moment operators, and builders.

A discrete observable is a finite list of real outcome values together with
positive effects summing to the identity. Sharp observables are the special
case of projection-valued measures, carried here as :class:`SpectralMeasure`
with a link back to the selfadjoint operator they decompose.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import gammaln

from . import linalg
from .errors import (
    DimensionMismatch,
    InvariantViolation,
    KernelOverflow,
    NotHermitian,
    NotUnitVector,
)
from .linalg import DEFAULT_TOL, Tolerance


class PureState:
    """A unit vector; the input state of every statistical formula."""

    def __init__(self, amplitudes, tol: Tolerance = DEFAULT_TOL):
        v = linalg.as_vector(amplitudes)
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > tol.atol:
            raise NotUnitVector(f"state norm {norm!r} differs from 1 beyond atol")
        self.amplitudes = v

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def projector(self) -> np.ndarray:
        return linalg.projector(self.amplitudes)

    @staticmethod
    def normalized(amplitudes) -> "PureState":
        """Build a state from an unnormalized amplitude vector."""
        v = linalg.as_vector(amplitudes)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise NotUnitVector("cannot normalize the zero vector")
        return PureState(v / norm)

    def __repr__(self):
        return f"PureState(dim={self.dim})"


class HermitianObservable:
    """A validated Hermitian matrix with its spectral decomposition cached."""

    def __init__(self, matrix, tol: Tolerance = DEFAULT_TOL):
        m = linalg.as_matrix(matrix)
        linalg.require_square(m)
        res = linalg.hermiticity_residual(m)
        if res > tol.atol:
            raise NotHermitian(
                f"symmetry residual {res:.3e} exceeds atol {tol.atol:.3e}"
            )
        m = linalg.hermitize(m)
        m.setflags(write=False)
        self.matrix = m
        self._tol = tol
        self._eig: tuple[np.ndarray, np.ndarray] | None = None
        self._grouped: tuple[np.ndarray, list[np.ndarray]] | None = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eig(self) -> tuple[np.ndarray, np.ndarray]:
        if self._eig is None:
            self._eig = linalg.eig_hermitian(self.matrix, self._tol)
        return self._eig

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.eig()[0]

    def grouped_spectrum(self) -> tuple[np.ndarray, list[np.ndarray]]:
        """Distinct outcomes and eigenprojections, degenerate levels merged."""
        if self._grouped is None:
            w, v = self.eig()
            self._grouped = linalg.group_eigensystem(w, v, self._tol)
        return self._grouped

    def expectation(self, psi: PureState) -> float:
        v = psi.amplitudes
        if v.shape[0] != self.dim:
            raise DimensionMismatch("state dimension does not match observable")
        return float(np.real(v.conj() @ self.matrix @ v))

    def squared(self) -> "HermitianObservable":
        return HermitianObservable(self.matrix @ self.matrix, self._tol)

    def __repr__(self):
        return f"HermitianObservable(dim={self.dim})"


class DiscretePOVM:
    """Finite outcome values with positive effects summing to identity."""

    def __init__(self, outcomes: Sequence[float], effects: Sequence, tol: Tolerance = DEFAULT_TOL):
        self.outcomes = np.array([float(x) for x in outcomes], dtype=float)
        self.effects = tuple(linalg.as_matrix(e) for e in effects)
        self._tol = tol
        self._validate(tol)

    def _validate(self, tol: Tolerance) -> None:
        if len(self.outcomes) != len(self.effects):
            raise InvariantViolation(
                f"{len(self.outcomes)} outcomes but {len(self.effects)} effects"
            )
        if len(self.effects) == 0:
            raise InvariantViolation("a POVM needs at least one outcome")
        if np.any(np.diff(self.outcomes) <= 0):
            raise InvariantViolation("outcomes must be strictly increasing")
        d = linalg.require_square(self.effects[0])
        for i, e in enumerate(self.effects):
            if e.shape != (d, d):
                raise DimensionMismatch(f"effect {i} has shape {e.shape}, expected {(d, d)}")
            res = linalg.hermiticity_residual(e)
            if res > tol.atol:
                raise InvariantViolation(f"effect {i} not Hermitian (residual {res:.3e})")
            scale = max(1.0, linalg.max_abs(e))
            lo = linalg.min_eigenvalue(e)
            if lo < -tol.atol * scale:
                raise InvariantViolation(
                    f"effect {i} not positive semidefinite (min eigenvalue {lo:.3e})"
                )
        total = sum(self.effects)
        res = linalg.max_abs(total - np.eye(d))
        if res > tol.atol:
            raise InvariantViolation(f"effects sum to identity only within {res:.3e}")
        self._dim = d

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def n_outcomes(self) -> int:
        return len(self.outcomes)

    def completeness_residual(self) -> float:
        return linalg.max_abs(sum(self.effects) - np.eye(self.dim))

    def __len__(self):
        return len(self.outcomes)

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, n_outcomes={self.n_outcomes})"


class SpectralMeasure(DiscretePOVM):
    """A POVM whose effects are mutually orthogonal projections.

    Carries the selfadjoint ``source`` operator it decomposes; the outcomes
    reconstruct it as ``sum_k x_k P_k``.
    """

    def __init__(self, outcomes, effects, source: HermitianObservable, tol: Tolerance = DEFAULT_TOL):
        super().__init__(outcomes, effects, tol)
        if source.dim != self.dim:
            raise DimensionMismatch("source operator dimension does not match effects")
        for i, p in enumerate(self.effects):
            res = linalg.max_abs(p @ p - p)
            if res > tol.atol:
                raise InvariantViolation(f"effect {i} is not idempotent (residual {res:.3e})")
            for j in range(i):
                res = linalg.max_abs(self.effects[i] @ self.effects[j])
                if res > tol.atol:
                    raise InvariantViolation(
                        f"effects {i},{j} are not orthogonal (residual {res:.3e})"
                    )
        recon = sum(x * p for x, p in zip(self.outcomes, self.effects))
        scale = max(1.0, linalg.max_abs(source.matrix))
        res = linalg.max_abs(recon - source.matrix)
        if res > tol.rtol * scale:
            raise InvariantViolation(
                f"sum x_k P_k reconstructs the source only within {res:.3e}"
            )
        self.source = source

    def projection(self, k: int) -> np.ndarray:
        return self.effects[k]


@dataclass(frozen=True)
class SmearingKernel:
    """A discrete probability kernel; the confidence measure of grid smearing."""

    offsets: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.offsets) != len(self.weights) or not self.offsets:
            raise InvariantViolation("offsets and weights must be nonempty and equal length")
        w = np.array(self.weights, dtype=float)
        if np.any(w < 0):
            raise InvariantViolation("kernel weights must be nonnegative")
        if abs(float(w.sum()) - 1.0) > DEFAULT_TOL.atol:
            raise InvariantViolation(f"kernel weights sum to {w.sum()!r}, expected 1")

    @property
    def mean(self) -> float:
        return float(np.dot(self.offsets, self.weights))

    @property
    def variance(self) -> float:
        m = self.mean
        return float(np.dot((np.array(self.offsets) - m) ** 2, self.weights))

    @staticmethod
    def delta() -> "SmearingKernel":
        return SmearingKernel((0.0,), (1.0,))


def spectral_measure(a: HermitianObservable, tol: Tolerance = DEFAULT_TOL) -> SpectralMeasure:
    """The projection-valued measure of a selfadjoint operator.

    Outcomes are the grouped eigenvalues; effects the eigenprojections.
    """
    outcomes, projections = a.grouped_spectrum()
    return SpectralMeasure(outcomes, projections, source=a, tol=tol)


def moment_operator(e: DiscretePOVM, k: int, tol: Tolerance = DEFAULT_TOL) -> HermitianObservable:
    """The k-th moment operator sum_j x_j^k E(x_j); Hermitian by construction."""
    if k < 1:
        raise ValueError(f"moment order must be >= 1, got {k}")
    m = sum((x ** k) * eff for x, eff in zip(e.outcomes, e.effects))
    return HermitianObservable(linalg.hermitize(m), tol)


def noise_operator(e: DiscretePOVM, a: HermitianObservable, tol: Tolerance = DEFAULT_TOL) -> HermitianObservable:
    """E[2] - A^2. Positive for unbiased schemes; indefinite in general."""
    if e.dim != a.dim:
        raise DimensionMismatch(f"POVM dim {e.dim} != observable dim {a.dim}")
    e2 = moment_operator(e, 2, tol)
    return HermitianObservable(e2.matrix - a.matrix @ a.matrix, tol)


def minimal_noise_square(e: DiscretePOVM, a: HermitianObservable, tol: Tolerance = DEFAULT_TOL) -> tuple[float, PureState]:
    """Minimize <psi|(E[2] - A^2)|psi> over unit states.

    The minimum of a quadratic form on the sphere is the bottom eigenpair,
    so this is exact, not an iterative search. Exposed for exploring how
    small the variance-based noise can get (e.g. for the binned phase
    observable against its own first moment); nothing is asserted about
    the infimum being attained at zero.
    """
    n = noise_operator(e, a, tol)
    w, v = n.eig()
    return float(w[0]), PureState.normalized(v[:, 0])


_PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def spin_observable(axis, tol: Tolerance = DEFAULT_TOL) -> HermitianObservable:
    """Spin-1/2 component along a unit axis: (a_x sx + a_y sy + a_z sz)/2."""
    a = np.asarray(axis, dtype=float)
    if a.shape != (3,):
        raise DimensionMismatch("axis must be a real 3-vector")
    norm = float(np.linalg.norm(a))
    if abs(norm - 1.0) > tol.atol:
        raise NotUnitVector(f"axis norm {norm!r} differs from 1 beyond atol")
    m = (a[0] * _PAULI_X + a[1] * _PAULI_Y + a[2] * _PAULI_Z) / 2
    return HermitianObservable(m, tol)


def spin_up_state(axis, tol: Tolerance = DEFAULT_TOL) -> PureState:
    """The +1/2 eigenstate of the spin component along ``axis``."""
    s = spin_observable(axis, tol)
    _, v = s.eig()
    return PureState.normalized(v[:, -1])


def smeared_grid_position(grid_values, kernel: SmearingKernel, tol: Tolerance = DEFAULT_TOL) -> DiscretePOVM:
    """Approximate position on a finite grid, smeared by a probability kernel.

    The effect at outcome y collects weight(y - q_j) |j><j| over the grid
    basis; the result is diagonal and commutes with Q = diag(grid_values).
    Outcome values are the sums grid point + kernel offset; sums closer than
    atol merge into one atom, and the construction refuses to proceed if a
    merged cluster is wider than atol (the outcome labels could then no
    longer represent the shifted grid faithfully).
    """
    q = np.asarray(grid_values, dtype=float)
    if q.ndim != 1 or q.size == 0:
        raise DimensionMismatch("grid_values must be a nonempty 1-D real list")
    d = q.size
    sums = sorted(
        (float(q[j] + o), j, w)
        for j in range(d)
        for o, w in zip(kernel.offsets, kernel.weights)
    )
    outcomes: list[float] = []
    effects: list[np.ndarray] = []
    i = 0
    while i < len(sums):
        k = i + 1
        while k < len(sums) and sums[k][0] - sums[k - 1][0] <= tol.atol:
            k += 1
        cluster = sums[i:k]
        if cluster[-1][0] - cluster[0][0] > tol.atol:
            raise KernelOverflow(
                "outcome clusters chain beyond atol; grid and kernel offsets "
                "do not produce a well-separated outcome set"
            )
        eff = np.zeros((d, d), dtype=np.complex128)
        for _, j, w in cluster:
            eff[j, j] += w
        outcomes.append(float(np.mean([c[0] for c in cluster])))
        effects.append(eff)
        i = k
    return DiscretePOVM(outcomes, effects, tol)


def truncated_canonical_phase(n_max: int, n_bins: int, tol: Tolerance = DEFAULT_TOL) -> DiscretePOVM:
    """Canonical phase POVM on the truncated number basis, binned over [0, 2pi).

    Effects use the closed-form bin integrals, so the POVM structure is exact:
    for the bin [alpha, beta) the (n, m) entry is (beta-alpha)/2pi on the
    diagonal and (e^{i(n-m)beta} - e^{i(n-m)alpha}) / (2pi i (n-m)) off it.
    Outcome values are the bin midpoints.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if n_bins < 2:
        raise ValueError("n_bins must be >= 2")
    d = n_max + 1
    edges = np.linspace(0.0, 2 * np.pi, n_bins + 1)
    n = np.arange(d)
    diff = n[:, None] - n[None, :]
    outcomes = []
    effects = []
    for b in range(n_bins):
        alpha, beta = edges[b], edges[b + 1]
        with np.errstate(divide="ignore", invalid="ignore"):
            eff = (np.exp(1j * diff * beta) - np.exp(1j * diff * alpha)) / (
                2j * np.pi * diff
            )
        np.fill_diagonal(eff, (beta - alpha) / (2 * np.pi))
        outcomes.append((alpha + beta) / 2)
        effects.append(eff)
    return DiscretePOVM(outcomes, effects, tol)


def phase_space_theta_moment(n_max: int, tol: Tolerance = DEFAULT_TOL) -> HermitianObservable:
    """First-moment operator of the angle marginal of the ground-state
    phase-space observable, truncated to number levels 0..n_max.

    Off-diagonal (n, m) entries are i Gamma((n+m)/2 + 1) / (sqrt(n! m!) (m-n)),
    evaluated through log-Gamma; the diagonal is pi. Hermitian because the
    prefactor is antisymmetric in (n, m).
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if n_max > 60:
        raise OverflowError("n_max > 60 is outside the supported truncation range")
    d = n_max + 1
    m = np.full((d, d), np.pi, dtype=np.complex128)
    for n in range(d):
        for k in range(d):
            if n == k:
                continue
            log_mag = gammaln((n + k) / 2 + 1) - 0.5 * (gammaln(n + 1) + gammaln(k + 1))
            m[n, k] = 1j * np.exp(log_mag) / (k - n)
    return HermitianObservable(m, tol)


def number_observable(dim: int, tol: Tolerance = DEFAULT_TOL) -> HermitianObservable:
    """The truncated number operator diag(0, 1, ..., dim-1)."""
    return HermitianObservable(np.diag(np.arange(dim, dtype=float)), tol)


def random_povm(dim: int, n_outcomes: int, rng: np.random.Generator, tol: Tolerance = DEFAULT_TOL) -> DiscretePOVM:
    """Random POVM: random PSD pieces normalized by the inverse square root
    of their sum, which guarantees completeness exactly."""
    pieces = [linalg.random_psd(dim, rng) for _ in range(n_outcomes)]
    total = sum(pieces)
    w, v = np.linalg.eigh(total)
    inv_sqrt = (v / np.sqrt(w)) @ v.conj().T
    effects = [linalg.hermitize(inv_sqrt @ p @ inv_sqrt) for p in pieces]
    outcomes = np.sort(rng.normal(size=n_outcomes))
    while np.any(np.diff(outcomes) <= tol.atol):
        outcomes = np.sort(rng.normal(size=n_outcomes))
    return DiscretePOVM(outcomes, effects, tol)


def random_state(dim: int, rng: np.random.Generator) -> PureState:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return PureState.normalized(v)


def povm_equal(a: DiscretePOVM, b: DiscretePOVM, tol_effect: float, atol_outcome: float = DEFAULT_TOL.atol) -> tuple[bool, float]:
    """Effectwise comparison of two POVMs.

    Outcomes are matched within ``atol_outcome``; matched effects compare
    entrywise, unmatched outcomes count with their full effect norm. Returns
    (equal within tol_effect, worst residual).
    """
    if a.dim != b.dim:
        raise DimensionMismatch("POVM dimensions differ")
    used = [False] * b.n_outcomes
    worst = 0.0
    for x, ea in zip(a.outcomes, a.effects):
        j = None
        for k, y in enumerate(b.outcomes):
            if not used[k] and abs(x - y) <= atol_outcome:
                j = k
                break
        if j is None:
            worst = max(worst, linalg.max_abs(ea))
        else:
            used[j] = True
            worst = max(worst, linalg.max_abs(ea - b.effects[j]))
    for k, flag in enumerate(used):
        if not flag:
            worst = max(worst, linalg.max_abs(b.effects[k]))
    return worst <= tol_effect, worst
