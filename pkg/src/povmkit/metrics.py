"""Noise, disturbance, distance, and covariance quantities.

Every quantity the theory defines through more than one formula is computed
here by every route, and the identity tests in the suite pin the routes
against each other. Nothing in this module mutates its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatch,
    InvariantViolation,
    NegativeNoiseSquare,
    NegativeProbability,
    NotCommuting,
)
from .linalg import DEFAULT_TOL, Tolerance
from .observables import (
    DiscretePOVM,
    HermitianObservable,
    PureState,
    SpectralMeasure,
    moment_operator,
    noise_operator,
    spectral_measure,
)
from .schemes import MeasurementScheme, dual_apply, heisenberg_out, total_channel


@dataclass(frozen=True)
class OutcomeDistribution:
    """Outcome values with their probabilities."""

    outcomes: tuple[float, ...]
    probabilities: tuple[float, ...]

    def __post_init__(self):
        if len(self.outcomes) != len(self.probabilities):
            raise InvariantViolation("outcomes and probabilities differ in length")
        total = float(sum(self.probabilities))
        if any(p < 0 for p in self.probabilities):
            raise NegativeProbability("probabilities must be clipped before construction")
        if abs(total - 1.0) > 100 * DEFAULT_TOL.atol:
            raise InvariantViolation(f"probabilities sum to {total!r}, expected 1")


@dataclass(frozen=True)
class JointDistribution:
    """Joint outcome table for a commuting (sharp, POVM) pair."""

    row_outcomes: tuple[float, ...]
    col_outcomes: tuple[float, ...]
    table: np.ndarray  # shape (rows, cols), entries >= 0, sums to 1

    def row_marginal(self) -> OutcomeDistribution:
        return OutcomeDistribution(self.row_outcomes, tuple(self.table.sum(axis=1)))

    def col_marginal(self) -> OutcomeDistribution:
        return OutcomeDistribution(self.col_outcomes, tuple(self.table.sum(axis=0)))


@dataclass
class NoiseReport:
    """Per-state summary of the noise measures; optional fields stay None
    when the corresponding measure was not requested or not defined."""

    eps_n: float | None = None
    eps_ozawa_reduced: float | None = None
    eps_ozawa_composite: float | None = None
    tv_distance: float | None = None
    covariance_term: float | None = None
    route_residuals: dict[str, float] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)


def _clip_probability(p: float, tol: Tolerance) -> float:
    if p < -tol.atol:
        raise NegativeProbability(f"outcome probability {p!r} below -atol")
    return max(p, 0.0)


def distribution(e: DiscretePOVM, psi: PureState, tol: Tolerance = DEFAULT_TOL) -> OutcomeDistribution:
    """Outcome distribution p_k = <psi| E(x_k) |psi>."""
    if e.dim != psi.dim:
        raise DimensionMismatch(f"POVM dim {e.dim} != state dim {psi.dim}")
    v = psi.amplitudes
    probs = [_clip_probability(float(np.real(v.conj() @ eff @ v)), tol) for eff in e.effects]
    return OutcomeDistribution(tuple(float(x) for x in e.outcomes), tuple(probs))


def expectation(d: OutcomeDistribution) -> float:
    return float(np.dot(d.outcomes, d.probabilities))


def variance(d: OutcomeDistribution) -> float:
    m = expectation(d)
    return float(np.dot((np.array(d.outcomes) - m) ** 2, d.probabilities))


def eps_n(
    e: DiscretePOVM, a: HermitianObservable, psi: PureState, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Variance-based noise: sqrt<psi|(E[2] - A^2)|psi>.

    Only meaningful for unbiased measurements, where E[2] - A^2 is positive;
    a squared noise below -atol raises NegativeNoiseSquare instead of
    returning a complex or NaN value.
    """
    n = noise_operator(e, a, tol)
    val = n.expectation(psi)
    if val < -tol.atol:
        raise NegativeNoiseSquare(
            f"<psi|(E[2]-A^2)|psi> = {val!r}; the scheme is biased beyond the "
            "formula's domain"
        )
    return float(np.sqrt(max(val, 0.0)))


def ozawa_noise_terms(
    e: DiscretePOVM, a: HermitianObservable, psi: PureState, tol: Tolerance = DEFAULT_TOL
) -> tuple[float, float]:
    """The two nonnegative pieces of the squared operator-difference noise.

    First: <psi|(E[2] - E[1]^2)|psi>, the deviation of E from being
    projection valued. Second: ||(E[1] - A) psi||^2, the first-moment bias.
    """
    if e.dim != a.dim or a.dim != psi.dim:
        raise DimensionMismatch("POVM, observable, and state dimensions must match")
    v = psi.amplitudes
    e1 = moment_operator(e, 1, tol).matrix
    e2 = moment_operator(e, 2, tol).matrix
    unsharp = float(np.real(v.conj() @ e2 @ v)) - float(np.linalg.norm(e1 @ v) ** 2)
    if unsharp < -tol.atol:
        raise InvariantViolation(f"E[2] - E[1]^2 expectation came out {unsharp!r}")
    bias = float(np.linalg.norm((e1 - a.matrix) @ v) ** 2)
    return max(unsharp, 0.0), bias


def ozawa_noise(
    e: DiscretePOVM, a: HermitianObservable, psi: PureState, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Operator-difference noise from the measured observable alone."""
    unsharp, bias = ozawa_noise_terms(e, a, psi, tol)
    return float(np.sqrt(unsharp + bias))


def ozawa_noise_composite(
    s: MeasurementScheme, a: HermitianObservable, psi: PureState, tol: Tolerance | None = None
) -> float:
    """Operator-difference noise on the composite space.

    sqrt<psi (x) xi| (M_out - A_in)^2 |psi (x) xi> with M_out the evolved
    pointer and A_in the embedded target. Agrees with the reduced route
    through the induced observable; the identity is pinned in the tests.
    """
    tol = tol or s._tol
    if a.dim != s.system_dim or psi.dim != s.system_dim:
        raise DimensionMismatch("target and state must live on the system space")
    m_out = heisenberg_out(s, "pointer", s.pointer).matrix
    a_in = linalg.kron(a.matrix, np.eye(s.probe_dim))
    big = np.kron(psi.amplitudes, s.probe_state.amplitudes)
    delta = (m_out - a_in) @ big
    return float(np.linalg.norm(delta))


def tv_distance(
    p: OutcomeDistribution, q: OutcomeDistribution, merge_atol: float = DEFAULT_TOL.atol
) -> float:
    """Total variation norm sum |p_i - q_i| over the union of outcome atoms.

    Outcome values closer than ``merge_atol`` count as the same atom (merged
    by chaining). Ranges over [0, 2]; 0 exactly when the distributions agree
    atomwise, 2 when their supports are disjoint.
    """
    atoms = sorted(
        [(x, w, 0.0) for x, w in zip(p.outcomes, p.probabilities)]
        + [(x, 0.0, w) for x, w in zip(q.outcomes, q.probabilities)]
    )
    total = 0.0
    i = 0
    while i < len(atoms):
        k = i + 1
        while k < len(atoms) and atoms[k][0] - atoms[k - 1][0] <= merge_atol:
            k += 1
        total += abs(sum(a[1] for a in atoms[i:k]) - sum(a[2] for a in atoms[i:k]))
        i = k
    return total


@dataclass(frozen=True)
class CovarianceResult:
    """Symmetrized covariance with its interpretability flag.

    ``commutes`` is True when the POVM commutes with the sharp observable's
    spectral projections; only then does the value read as the covariance of
    a genuine joint outcome distribution.
    """

    value: float
    commutes: bool
    commutator_residual: float


def symmetrized_covariance(
    e: DiscretePOVM, a: HermitianObservable, psi: PureState, tol: Tolerance = DEFAULT_TOL
) -> CovarianceResult:
    """(1/2)<psi|(A E[1] + E[1] A)|psi> - <A><E[1]>."""
    if e.dim != a.dim or a.dim != psi.dim:
        raise DimensionMismatch("POVM, observable, and state dimensions must match")
    v = psi.amplitudes
    e1 = moment_operator(e, 1, tol).matrix
    sym = float(np.real(v.conj() @ (a.matrix @ e1 + e1 @ a.matrix) @ v)) / 2
    mean_a = a.expectation(psi)
    mean_e = float(np.real(v.conj() @ e1 @ v))
    res = _commutation_residual(spectral_measure(a, tol), e)
    return CovarianceResult(
        value=sym - mean_a * mean_e,
        commutes=res <= tol.atol,
        commutator_residual=res,
    )


def _commutation_residual(a_spec: SpectralMeasure, e: DiscretePOVM) -> float:
    return max(
        linalg.max_abs(linalg.commutator(p, eff))
        for p in a_spec.effects
        for eff in e.effects
    )


def joint_distribution(
    a_spec: SpectralMeasure, e: DiscretePOVM, psi: PureState, tol: Tolerance = DEFAULT_TOL
) -> JointDistribution:
    """Joint outcome table mu(x, y) = <psi| P_x E(y) |psi> for a commuting pair.

    Raises NotCommuting when the pair fails the commutation precondition;
    the joint probabilistic reading is then unavailable.
    """
    if a_spec.dim != e.dim or e.dim != psi.dim:
        raise DimensionMismatch("measure, POVM, and state dimensions must match")
    res = _commutation_residual(a_spec, e)
    if res > tol.atol:
        raise NotCommuting(
            f"spectral measure and POVM do not commute (residual {res:.3e})"
        )
    v = psi.amplitudes
    table = np.empty((a_spec.n_outcomes, e.n_outcomes))
    for i, p in enumerate(a_spec.effects):
        pv = p @ v
        for j, eff in enumerate(e.effects):
            table[i, j] = _clip_probability(float(np.real(pv.conj() @ eff @ v)), tol)
    total = float(table.sum())
    if abs(total - 1.0) > 100 * tol.atol:
        raise InvariantViolation(f"joint table sums to {total!r}")
    joint = JointDistribution(
        tuple(float(x) for x in a_spec.outcomes),
        tuple(float(y) for y in e.outcomes),
        table,
    )
    _check_marginals(joint, a_spec, e, psi, tol)
    return joint


def _check_marginals(
    joint: JointDistribution,
    a_spec: SpectralMeasure,
    e: DiscretePOVM,
    psi: PureState,
    tol: Tolerance,
) -> None:
    pa = np.array(distribution(a_spec, psi, tol).probabilities)
    pe = np.array(distribution(e, psi, tol).probabilities)
    res = max(
        float(np.max(np.abs(joint.table.sum(axis=1) - pa))),
        float(np.max(np.abs(joint.table.sum(axis=0) - pe))),
    )
    if res > 100 * tol.atol:
        raise InvariantViolation(f"joint marginals deviate by {res:.3e}")


def covariance(joint: JointDistribution) -> float:
    """Classical covariance of the joint outcome table."""
    x = np.array(joint.row_outcomes)
    y = np.array(joint.col_outcomes)
    mean_x = float(x @ joint.table.sum(axis=1))
    mean_y = float(joint.table.sum(axis=0) @ y)
    return float(x @ joint.table @ y) - mean_x * mean_y


def verify_cov4(
    a_spec: SpectralMeasure, e: DiscretePOVM, psi: PureState, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Cross-check the covariance decomposition of the squared noise.

    Evaluates three independent routes and returns the worst pairwise
    residual: (i) the operator formula for epsilon^2, (ii) the decomposition
    into expectation gap, spread gap, and covariance deficit, (iii) the
    direct integral sum (x - y)^2 mu(x, y) over the joint table.
    """
    joint = joint_distribution(a_spec, e, psi, tol)
    eps_sq = ozawa_noise(e, a_spec.source, psi, tol) ** 2

    pm = distribution(e, psi, tol)
    pa = distribution(a_spec, psi, tol)
    gap = expectation(pm) - expectation(pa)
    sm, sa = np.sqrt(variance(pm)), np.sqrt(variance(pa))
    decomposition = gap**2 + (sm - sa) ** 2 + 2 * (sm * sa - covariance(joint))

    x = np.array(joint.row_outcomes)
    y = np.array(joint.col_outcomes)
    direct = float(((x[:, None] - y[None, :]) ** 2 * joint.table).sum())

    return max(
        abs(eps_sq - decomposition), abs(eps_sq - direct), abs(decomposition - direct)
    )


def disturbance_composite(
    s: MeasurementScheme, b: HermitianObservable, psi: PureState
) -> float:
    """Root mean square of B_out - B_in in the composite initial state."""
    if b.dim != s.system_dim or psi.dim != s.system_dim:
        raise DimensionMismatch("observable and state must live on the system space")
    b_out = heisenberg_out(s, "system", b).matrix
    b_in = linalg.kron(b.matrix, np.eye(s.probe_dim))
    big = np.kron(psi.amplitudes, s.probe_state.amplitudes)
    return float(np.linalg.norm((b_out - b_in) @ big))


def disturbance_reduced(
    s: MeasurementScheme, b: HermitianObservable, psi: PureState, tol: Tolerance | None = None
) -> float:
    """Disturbance through the dual channel.

    eta^2 = <psi|(E[2] - E[1]^2)|psi> + ||(E[1] - B) psi||^2 with
    E[1] = I*(B) and E[2] = I*(B^2).
    """
    tol = tol or s._tol
    c = total_channel(s, tol)
    e1 = dual_apply(c, b, tol).matrix
    e2 = dual_apply(c, b.squared(), tol).matrix
    v = psi.amplitudes
    unsharp = float(np.real(v.conj() @ e2 @ v)) - float(np.linalg.norm(e1 @ v) ** 2)
    bias = float(np.linalg.norm((e1 - b.matrix) @ v) ** 2)
    return float(np.sqrt(max(unsharp, 0.0) + bias))


def disturbance(
    s: MeasurementScheme, b: HermitianObservable, psi: PureState, tol: Tolerance | None = None
) -> float:
    """Disturbance of the scheme on observable B, composite route.

    The reduced route is an independent code path; their agreement is an
    identity of the theory and is enforced by the test suite, not here.
    """
    return disturbance_composite(s, b, psi)


def spanning_states(dim: int) -> list[PureState]:
    """Basis vectors plus pairwise equal-weight superpositions with phases 1, i.

    Expectations over this family determine a Hermitian form completely
    (polarization), so "zero for all states" claims reduce to this finite
    protocol in finite dimension.
    """
    states = [PureState.normalized(np.eye(dim)[:, j]) for j in range(dim)]
    for j in range(dim):
        for k in range(j + 1, dim):
            for phase in (1.0, 1j):
                v = np.zeros(dim, dtype=np.complex128)
                v[j] = 1.0
                v[k] = phase
                states.append(PureState.normalized(v))
    return states


def search_eps_n_zero_counterexamples(
    dim: int,
    n_outcomes: int,
    trials: int,
    rng: np.random.Generator,
    tv_threshold: float = 1e-2,
    kernel_tol: float = 1e-10,
    tol: Tolerance = DEFAULT_TOL,
) -> list[dict]:
    """Search for states with vanishing variance-based noise but unequal
    distributions.

    Whether such states exist for unbiased measurements is open; this
    utility only reports candidates (possibly none) and asserts nothing.
    For each random POVM it takes A = E[1]'s sharp version, finds the
    bottom eigenstate of E[2] - A^2, and keeps it when the squared noise
    is ~0 while the two outcome distributions differ in total variation.
    """
    from .observables import minimal_noise_square, random_povm

    candidates = []
    for t in range(trials):
        e = random_povm(dim, n_outcomes, rng, tol)
        a = moment_operator(e, 1, tol)
        low, state = minimal_noise_square(e, a, tol)
        if abs(low) > kernel_tol:
            continue
        tv = tv_distance(
            distribution(e, state, tol), distribution(spectral_measure(a, tol), state, tol)
        )
        if tv > tv_threshold:
            candidates.append(
                {"trial": t, "noise_square": low, "tv_distance": tv, "state": state}
            )
    return candidates
