"""Measurement schemes and the channels they induce.

A scheme couples the system to a probe prepared in a unit vector state,
then reads a pointer observable on the probe. The statistics of the pointer
define the actually measured system observable (probability reproducibility);
tracing out the probe defines the total state-change channel in Kraus form.

Composite indices are system-major everywhere: composite = i_system * probe_dim
+ j_probe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import linalg
from .errors import DimensionLimit, DimensionMismatch, InvariantViolation, NotUnitary
from .linalg import DEFAULT_TOL, Tolerance
from .observables import (
    DiscretePOVM,
    HermitianObservable,
    PureState,
    SpectralMeasure,
    random_state,
)


class MeasurementScheme:
    """Probe space, probe state, coupling unitary, pointer observable."""

    def __init__(
        self,
        system_dim: int,
        probe_dim: int,
        probe_state: PureState,
        coupling,
        pointer: HermitianObservable,
        tol: Tolerance = DEFAULT_TOL,
    ):
        if system_dim < 1 or probe_dim < 1:
            raise DimensionMismatch("system_dim and probe_dim must be positive")
        if system_dim * probe_dim > linalg.DIM_LIMIT:
            raise DimensionLimit(
                f"composite dimension {system_dim * probe_dim} exceeds {linalg.DIM_LIMIT}"
            )
        if probe_state.dim != probe_dim:
            raise DimensionMismatch("probe state does not live on the probe space")
        if pointer.dim != probe_dim:
            raise DimensionMismatch("pointer does not live on the probe space")
        u = linalg.as_matrix(coupling)
        d = system_dim * probe_dim
        if u.shape != (d, d):
            raise DimensionMismatch(f"coupling has shape {u.shape}, expected {(d, d)}")
        res = linalg.max_abs(u.conj().T @ u - np.eye(d))
        if res > tol.atol:
            raise NotUnitary(f"coupling unitarity residual {res:.3e} exceeds atol")
        self.system_dim = system_dim
        self.probe_dim = probe_dim
        self.probe_state = probe_state
        self.coupling = u
        self.pointer = pointer
        self._tol = tol

    @property
    def composite_dim(self) -> int:
        return self.system_dim * self.probe_dim

    def embed_isometry(self) -> np.ndarray:
        """The isometry psi -> U (psi (x) xi), shape (ds*dp, ds)."""
        xi = self.probe_state.amplitudes.reshape(self.probe_dim, 1)
        return self.coupling @ np.kron(np.eye(self.system_dim), xi)

    def __repr__(self):
        return (
            f"MeasurementScheme(system_dim={self.system_dim}, "
            f"probe_dim={self.probe_dim})"
        )


class QuantumChannel:
    """A completely positive unital-dual map in Kraus form: sum_i D_i rho D_i^dagger."""

    def __init__(self, kraus, tol: Tolerance = DEFAULT_TOL):
        ops = tuple(linalg.as_matrix(k) for k in kraus)
        if not ops:
            raise InvariantViolation("a channel needs at least one Kraus operator")
        d = linalg.require_square(ops[0])
        for i, k in enumerate(ops):
            if k.shape != (d, d):
                raise DimensionMismatch(f"Kraus operator {i} has shape {k.shape}")
        total = sum(k.conj().T @ k for k in ops)
        res = linalg.max_abs(total - np.eye(d))
        if res > tol.atol:
            raise InvariantViolation(
                f"sum D_i^dagger D_i = I fails with residual {res:.3e}"
            )
        self.kraus = ops
        self._dim = d

    @property
    def dim(self) -> int:
        return self._dim

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Schroedinger picture: sum_i D_i rho D_i^dagger."""
        return sum(k @ rho @ k.conj().T for k in self.kraus)

    def __repr__(self):
        return f"QuantumChannel(dim={self.dim}, n_kraus={len(self.kraus)})"


@dataclass(frozen=True)
class InvarianceReport:
    """Residuals and verdicts for the equivalent invariance conditions.

    (b) the dual channel fixes B and B^2, (c) it fixes every spectral
    projection of B, (d) every Kraus operator commutes with B. Condition (d)
    is evaluated in the extracted Kraus basis; it holds in one basis exactly
    when (b)/(c) hold, which is what the verdicts are compared against.
    """

    residual_first_moment: float
    residual_second_moment: float
    residual_projections: float
    residual_commutators: float
    threshold: float

    @property
    def fixes_first_moment(self) -> bool:
        return self.residual_first_moment <= self.threshold

    @property
    def fixes_second_moment(self) -> bool:
        return self.residual_second_moment <= self.threshold

    @property
    def condition_b(self) -> bool:
        return self.fixes_first_moment and self.fixes_second_moment

    @property
    def condition_c(self) -> bool:
        return self.residual_projections <= self.threshold

    @property
    def condition_d(self) -> bool:
        return self.residual_commutators <= self.threshold

    def as_dict(self) -> dict:
        return {
            "residual_first_moment": self.residual_first_moment,
            "residual_second_moment": self.residual_second_moment,
            "residual_projections": self.residual_projections,
            "residual_commutators": self.residual_commutators,
            "threshold": self.threshold,
            "condition_b": self.condition_b,
            "condition_c": self.condition_c,
            "condition_d": self.condition_d,
        }


def _pointer_projections(s: MeasurementScheme) -> tuple[np.ndarray, list[np.ndarray]]:
    return s.pointer.grouped_spectrum()


def induced_observable(
    s: MeasurementScheme, tol: Tolerance | None = None, drop_null: bool = True
) -> DiscretePOVM:
    """The actually measured observable of a scheme.

    For each pointer outcome x with spectral projection P_x the effect is
    V^dagger (I (x) P_x) V with V the isometry psi -> U(psi (x) xi), so the
    system statistics reproduce the pointer statistics exactly. Outcomes
    whose effect norm falls below atol are dropped (zero-probability
    outcomes would only trip the validation).
    """
    tol = tol or s._tol
    v = s.embed_isometry()
    outcomes, projections = _pointer_projections(s)
    xs: list[float] = []
    effects: list[np.ndarray] = []
    eye_s = np.eye(s.system_dim)
    for x, p in zip(outcomes, projections):
        eff = linalg.hermitize(v.conj().T @ np.kron(eye_s, p) @ v)
        if drop_null and linalg.opnorm(eff) < tol.atol:
            continue
        xs.append(float(x))
        effects.append(eff)
    return DiscretePOVM(xs, effects, tol)


def total_channel(s: MeasurementScheme, tol: Tolerance | None = None) -> QuantumChannel:
    """Kraus form of the unconditioned state change.

    D_j = (I (x) <b_j|) U (I (x) xi) over the probe computational basis; the
    Kraus list depends on that basis choice but every derived quantity
    (dual values, post states) does not.
    """
    tol = tol or s._tol
    v = s.embed_isometry()
    blocks = v.reshape(s.system_dim, s.probe_dim, s.system_dim)
    kraus = [blocks[:, j, :] for j in range(s.probe_dim)]
    return QuantumChannel(kraus, tol)


def dual_apply(c: QuantumChannel, b: HermitianObservable, tol: Tolerance = DEFAULT_TOL) -> HermitianObservable:
    """Heisenberg picture: sum_i D_i^dagger B D_i. Unital by construction."""
    if b.dim != c.dim:
        raise DimensionMismatch(f"channel dim {c.dim} != observable dim {b.dim}")
    out = sum(k.conj().T @ b.matrix @ k for k in c.kraus)
    return HermitianObservable(linalg.hermitize(out), tol)


def _dual_apply_raw(c: QuantumChannel, m: np.ndarray) -> np.ndarray:
    return sum(k.conj().T @ m @ k for k in c.kraus)


def post_state(s: MeasurementScheme, psi: PureState, tol: Tolerance | None = None) -> np.ndarray:
    """Unconditioned post-measurement density matrix sum_i D_i |psi><psi| D_i^dagger.

    Equals the partial trace of U (psi (x) xi)(psi (x) xi)^dagger U^dagger over
    the probe; the two routes are independent code paths and are compared in
    the test suite.
    """
    tol = tol or s._tol
    if psi.dim != s.system_dim:
        raise DimensionMismatch("state does not live on the system space")
    c = total_channel(s, tol)
    return linalg.hermitize(c.apply(psi.projector()))


def distorted_observable(c: QuantumChannel, b_spec: SpectralMeasure, tol: Tolerance = DEFAULT_TOL) -> DiscretePOVM:
    """Image of a spectral measure under the dual channel.

    The result is a positive operator measure with the source outcomes; it is
    generally no longer projection valued.
    """
    if b_spec.dim != c.dim:
        raise DimensionMismatch(f"channel dim {c.dim} != measure dim {b_spec.dim}")
    effects = [linalg.hermitize(_dual_apply_raw(c, p)) for p in b_spec.effects]
    return DiscretePOVM(b_spec.outcomes, effects, tol)


def invariance_conditions(
    c: QuantumChannel,
    b: HermitianObservable,
    threshold: float = 1e-7,
    tol: Tolerance = DEFAULT_TOL,
) -> InvarianceReport:
    """Evaluate the equivalent invariance conditions for (channel, B).

    Residuals are max-entry norms of I*(B) - B, I*(B^2) - B^2, the worst
    I*(P_x) - P_x over spectral projections, and the worst [B, D_i] over
    Kraus operators.
    """
    if b.dim != c.dim:
        raise DimensionMismatch(f"channel dim {c.dim} != observable dim {b.dim}")
    bm = b.matrix
    res_b = linalg.max_abs(_dual_apply_raw(c, bm) - bm)
    b2 = bm @ bm
    res_b2 = linalg.max_abs(_dual_apply_raw(c, b2) - b2)
    _, projections = b.grouped_spectrum()
    res_proj = max(linalg.max_abs(_dual_apply_raw(c, p) - p) for p in projections)
    res_comm = max(linalg.max_abs(linalg.commutator(bm, k)) for k in c.kraus)
    return InvarianceReport(
        residual_first_moment=res_b,
        residual_second_moment=res_b2,
        residual_projections=res_proj,
        residual_commutators=res_comm,
        threshold=threshold,
    )


def heisenberg_out(
    s: MeasurementScheme,
    which: Literal["system", "pointer"],
    op: HermitianObservable,
) -> HermitianObservable:
    """Evolved observable on the composite space.

    ``pointer``: U^dagger (I (x) M) U; ``system``: U^dagger (B (x) I) U.
    The corresponding in-observables are plain tensor embeddings.
    """
    if which == "pointer":
        if op.dim != s.probe_dim:
            raise DimensionMismatch("pointer operand must live on the probe")
        embedded = linalg.kron(np.eye(s.system_dim), op.matrix)
    elif which == "system":
        if op.dim != s.system_dim:
            raise DimensionMismatch("system operand must live on the system")
        embedded = linalg.kron(op.matrix, np.eye(s.probe_dim))
    else:
        raise ValueError(f"which must be 'system' or 'pointer', got {which!r}")
    out = s.coupling.conj().T @ embedded @ s.coupling
    return HermitianObservable(linalg.hermitize(out), s._tol)


def projection_valued_lemma_check(
    s: MeasurementScheme, tol: Tolerance | None = None
) -> tuple[bool, bool, dict[str, float]]:
    """Two sides of the sharpness lemma for the induced observable.

    (i) every induced effect is idempotent; (ii) I (x) P[xi] commutes with
    U^dagger (I (x) P_x) U for every pointer outcome. The lemma says the two
    verdicts agree; both are evaluated here over the full (undropped)
    pointer outcome set, since a zero effect is itself a projection.
    """
    tol = tol or s._tol
    e = induced_observable(s, tol, drop_null=False)
    res_idem = max(linalg.max_abs(eff @ eff - eff) for eff in e.effects)

    xi_proj = linalg.kron(np.eye(s.system_dim), s.probe_state.projector())
    _, projections = _pointer_projections(s)
    u = s.coupling
    res_comm = 0.0
    for p in projections:
        evolved = u.conj().T @ linalg.kron(np.eye(s.system_dim), p) @ u
        res_comm = max(res_comm, linalg.max_abs(linalg.commutator(xi_proj, evolved)))
    return (
        res_idem <= tol.atol,
        res_comm <= tol.atol,
        {"idempotency": res_idem, "commutator": res_comm},
    )


def random_scheme(
    system_dim: int, probe_dim: int, rng: np.random.Generator, tol: Tolerance = DEFAULT_TOL
) -> MeasurementScheme:
    """Random scheme: Haar coupling, random probe state, random pointer."""
    u = linalg.random_unitary(system_dim * probe_dim, rng)
    xi = random_state(probe_dim, rng)
    pointer = HermitianObservable(linalg.random_hermitian(probe_dim, rng), tol)
    return MeasurementScheme(system_dim, probe_dim, xi, u, pointer, tol)


def random_channel(
    dim: int, n_kraus: int, rng: np.random.Generator, tol: Tolerance = DEFAULT_TOL
) -> QuantumChannel:
    """Random channel from a Haar isometry: a dilation cut into Kraus blocks."""
    u = linalg.random_unitary(dim * n_kraus, rng)
    v = u[:, :dim]
    blocks = v.reshape(dim, n_kraus, dim)
    return QuantumChannel([blocks[:, j, :] for j in range(n_kraus)], tol)


def commuting_kraus_channel(
    b: HermitianObservable, rng: np.random.Generator, n_kraus: int = 3, tol: Tolerance = DEFAULT_TOL
) -> QuantumChannel:
    """A channel whose Kraus operators are random functions of B.

    All invariance conditions hold for it by construction.
    """
    _, projections = b.grouped_spectrum()
    m = len(projections)
    weights = rng.dirichlet(np.ones(n_kraus), size=m)  # row i: distribution over kraus
    phases = np.exp(2j * np.pi * rng.random((m, n_kraus)))
    kraus = []
    for j in range(n_kraus):
        k = sum(
            np.sqrt(weights[i, j]) * phases[i, j] * projections[i] for i in range(m)
        )
        kraus.append(k)
    return QuantumChannel(kraus, tol)


def first_moment_only_invariant_channel() -> tuple[QuantumChannel, HermitianObservable]:
    """A qutrit channel fixing B but not B^2.

    B = diag(1, 0, -1); the middle level is re-prepared as the equal
    superposition of the outer levels, which keeps <B> but raises <B^2>.
    Demonstrates that invariance of the operator B alone does not make the
    measurement disturbance-free: the Kraus commutator condition fails.
    """
    b = HermitianObservable(np.diag([1.0, 0.0, -1.0]))
    v = np.zeros((3, 1), dtype=np.complex128)
    v[0, 0] = v[2, 0] = 1 / np.sqrt(2)
    d1 = np.zeros((3, 3), dtype=np.complex128)
    d1[:, 1] = v[:, 0]
    d2 = np.zeros((3, 3), dtype=np.complex128)
    d2[0, 0] = 1.0
    d3 = np.zeros((3, 3), dtype=np.complex128)
    d3[2, 2] = 1.0
    return QuantumChannel([d1, d2, d3]), b
