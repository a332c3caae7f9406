"""Executable fixtures reproducing the worked measurement-theory examples.

Each case builds its own observables, scheme, and states, evaluates the
claimed identities, and returns structured pass/fail evidence. Checks carry
a provenance tag; checks tagged ``erratum-evidence`` report what the oracle
found without affecting the verdict (printed source values that fail the
oracle are quarantined, never silently corrected).

Continuous-variable examples appear as their exact finite analogs: position
smearing on a finite grid, the position/momentum pair as a discrete-Fourier
pair, the canonical phase truncated in number and binned in angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.special import gammaln

from . import linalg
from .errors import DegenerateAxes, TooManyOutcomes, UnknownCase
from .linalg import DEFAULT_TOL, Tolerance
from .metrics import (
    distribution,
    expectation,
    joint_distribution,
    ozawa_noise,
    ozawa_noise_composite,
    spanning_states,
    tv_distance,
    variance,
    verify_cov4,
)
from .observables import (
    DiscretePOVM,
    HermitianObservable,
    PureState,
    SmearingKernel,
    minimal_noise_square,
    moment_operator,
    number_observable,
    phase_space_theta_moment,
    povm_equal,
    smeared_grid_position,
    spectral_measure,
    spin_observable,
    spin_up_state,
    truncated_canonical_phase,
)
from .schemes import MeasurementScheme, induced_observable


@dataclass(frozen=True)
class Check:
    """One verified claim: a residual against a tolerance, with provenance."""

    label: str
    residual: float
    tol: float
    provenance: str  # "paper" | "derived" | "trivial" | "erratum-evidence"
    passed: bool
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "residual": self.residual,
            "tol": self.tol,
            "provenance": self.provenance,
            "passed": self.passed,
            "note": self.note,
        }


@dataclass
class CaseReport:
    """Structured evidence for one gallery case."""

    name: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def check(self, label: str, residual: float, tol: float, provenance: str, note: str = "") -> None:
        self.checks.append(
            Check(label, float(residual), float(tol), provenance, float(residual) <= float(tol), note)
        )

    def evidence(self, label: str, residual: float, tol: float, note: str = "") -> None:
        """Quarantined record: reported, never failing."""
        self.checks.append(
            Check(label, float(residual), float(tol), "erratum-evidence",
                  passed=True, note=note or "quarantined evidence, does not gate the verdict")
        )

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": [c.as_dict() for c in self.checks],
            "notes": self.notes,
        }


@dataclass(frozen=True)
class GalleryCase:
    name: str
    description: str
    run: Callable[..., CaseReport]


def luders_scheme(a: HermitianObservable, tol: Tolerance = DEFAULT_TOL) -> MeasurementScheme:
    """The canonical noiseless measurement of a sharp observable.

    Probe dimension = number of distinct outcomes m; the coupling is the
    controlled shift sum_a P_a (x) S^a of the pointer register, the probe
    starts in the first basis vector, and the pointer carries the outcome
    values on the diagonal. The induced observable is the spectral measure
    of the input.
    """
    outcomes, projections = a.grouped_spectrum()
    m = len(outcomes)
    if m > 16:
        raise TooManyOutcomes(f"{m} distinct outcomes; the pointer register supports 16")
    shift = np.roll(np.eye(m), 1, axis=0)
    u = np.zeros((a.dim * m, a.dim * m), dtype=np.complex128)
    power = np.eye(m)
    for k in range(m):
        u += np.kron(projections[k], power)
        power = shift @ power
    xi = np.zeros(m)
    xi[0] = 1.0
    pointer = HermitianObservable(np.diag(outcomes), tol)
    return MeasurementScheme(a.dim, m, PureState(xi), u, pointer, tol)


def ndqnd_scheme(
    d1: int,
    d2: int,
    chi: float,
    probe: PureState,
    pointer: HermitianObservable,
    tol: Tolerance = DEFAULT_TOL,
) -> MeasurementScheme:
    """Nondemolition photon-number scheme with cross-number coupling.

    The coupling is diagonal with phases e^{i chi n1 n2} over the truncated
    signal and probe number bases, so the signal number operator commutes
    with everything the scheme induces.
    """
    if probe.dim != d2 or pointer.dim != d2:
        raise linalg.DimensionMismatch("probe state and pointer must live on the probe")
    n1 = np.arange(d1)
    n2 = np.arange(d2)
    phases = np.exp(1j * chi * np.outer(n1, n2)).reshape(-1)
    u = np.diag(phases)
    return MeasurementScheme(d1, d2, probe, u, pointer, tol)


def ndqnd_closed_form_observable(
    d1: int,
    d2: int,
    chi: float,
    probe: PureState,
    pointer: HermitianObservable,
    tol: Tolerance = DEFAULT_TOL,
) -> DiscretePOVM:
    """Smeared-number form of the induced observable, built directly.

    Effect at pointer outcome x: sum_n <phi| e^{-i chi n N2} P_x e^{i chi n N2}
    |phi> |n><n| — an independent construction to pin the generic path against.
    """
    phi = probe.amplitudes
    n2 = np.arange(d2)
    outcomes, projections = pointer.grouped_spectrum()
    xs: list[float] = []
    effects: list[np.ndarray] = []
    for x, p in zip(outcomes, projections):
        diag = np.empty(d1)
        for n in range(d1):
            rotated = np.exp(1j * chi * n * n2) * phi
            diag[n] = float(np.real(rotated.conj() @ p @ rotated))
        eff = np.diag(diag).astype(np.complex128)
        if linalg.opnorm(eff) < tol.atol:
            continue
        xs.append(float(x))
        effects.append(eff)
    return DiscretePOVM(xs, effects, tol)


def _random_axis(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def spin_misalignment_case(
    a_axis, c_axis, n_states: int = 20, seed: int = 42, tol: Tolerance = DEFAULT_TOL
) -> CaseReport:
    """Measuring the spin component along a while the device actually points
    along c: the squared noise is (1 - c.a)/2 in every state, yet none of the
    operators involved commute for misaligned axes."""
    from .observables import random_state

    report = CaseReport("spin1")
    rng = np.random.default_rng(seed)
    s_a = spin_observable(a_axis, tol)
    s_c = spin_observable(c_axis, tol)
    e_c = spectral_measure(s_c, tol)
    dot = float(np.dot(a_axis, c_axis))
    predicted = 0.5 * (1.0 - dot)
    worst = 0.0
    for _ in range(n_states):
        psi = random_state(2, rng)
        worst = max(worst, abs(ozawa_noise(e_c, s_a, psi, tol) ** 2 - predicted))
    report.check("eps_sq_equals_half_one_minus_ca", worst, 1e-10, "paper")

    diff = HermitianObservable(s_c.matrix - s_a.matrix, tol)
    if abs(dot) < 1.0 - tol.atol:
        smallest = min(
            float(np.linalg.svd(linalg.commutator(x.matrix, y.matrix), compute_uv=False)[-1])
            for x, y in [(diff, s_c), (diff, s_a), (s_c, s_a)]
        )
        report.check(
            "pairwise_total_noncommutativity",
            0.0 if smallest > tol.atol else 1.0,
            0.5,
            "derived",
            note=f"smallest commutator singular value {smallest:.3e}",
        )
    return report


def equal_distribution_nonzero_noise_case(
    a_axis, c_axis, tol: Tolerance = DEFAULT_TOL
) -> CaseReport:
    """Two spin components with the same statistics in a bisector eigenstate
    but nonzero operator-difference noise."""
    a = np.asarray(a_axis, dtype=float)
    c = np.asarray(c_axis, dtype=float)
    if np.linalg.norm(a - c) <= tol.atol:
        raise DegenerateAxes("axes coincide; no bisector construction possible")
    report = CaseReport("spin2")
    mid = a + c
    if np.linalg.norm(mid) > tol.atol:
        n_axis = mid / np.linalg.norm(mid)
    else:
        # antipodal axes: any direction orthogonal to a works
        seed = np.eye(3)[int(np.argmin(np.abs(a)))]
        n_axis = np.cross(a, seed)
        n_axis /= np.linalg.norm(n_axis)
    psi = spin_up_state(n_axis, tol)
    s_a = spin_observable(a, tol)
    s_c = spin_observable(c, tol)
    p_a = distribution(spectral_measure(s_a, tol), psi, tol)
    p_c = distribution(spectral_measure(s_c, tol), psi, tol)
    report.check("tv_distance_zero", tv_distance(p_a, p_c, 1e-6), 1e-9, "derived",
                 note="outcome atoms +-1/2 aligned across the two components")
    eps_sq = ozawa_noise(spectral_measure(s_c, tol), s_a, psi, tol) ** 2
    predicted = 0.5 * (1.0 - float(np.dot(a, c)))
    report.check("eps_sq_formula", abs(eps_sq - predicted), 1e-10, "paper")
    report.check("eps_nonzero", 1.0 if eps_sq > 1e-6 else 0.0, 0.5, "derived",
                 note=f"eps^2 = {eps_sq:.6f}")
    return report


def zero_noise_different_distributions_case(tol: Tolerance = DEFAULT_TOL) -> CaseReport:
    """Zero operator-difference noise in one state with visibly different
    outcome distributions.

    Instance (i) uses the printed source matrices and runs the oracle on the
    claim that they share the state's image; the outcome is archived as
    evidence either way. Instance (ii) is a constructed pair solving
    C psi = A psi exactly, for which the noise vanishes and the spectra are
    disjoint, so the total variation distance is maximal.
    """
    report = CaseReport("spin3")

    # instance (i): printed values, oracle first
    a1 = HermitianObservable(np.diag([0.5, -0.5]), tol)
    c1 = HermitianObservable(np.array([[3.0, 5.0], [5.0, 3.0]]) / 8, tol)
    psi1 = PureState.normalized(np.array([-3.0, 1.0]))
    residual = float(np.linalg.norm((a1.matrix - c1.matrix) @ psi1.amplitudes))
    report.evidence(
        "printed_instance_A_psi_equals_C_psi",
        residual,
        tol.atol,
        note=(
            "source text claims A psi = C psi for the printed matrices; the "
            f"oracle finds ||(A - C) psi|| = {residual:.6f}, so the printed "
            "instance does not satisfy its own premise. Kept as evidence."
        ),
    )
    ev_c1 = np.sort(np.linalg.eigvalsh(c1.matrix))
    report.check(
        "printed_instance_C_eigenvalues",
        float(np.max(np.abs(ev_c1 - np.array([-0.25, 1.0])))),
        1e-12,
        "paper",
    )

    # instance (ii): constructed to satisfy C psi = A psi exactly
    a2 = HermitianObservable(np.diag([0.5, -0.5]), tol)
    c2 = HermitianObservable(np.array([[-0.5, 1.0], [1.0, -1.5]]), tol)
    psi2 = PureState.normalized(np.array([1.0, 1.0]))
    eps = ozawa_noise(spectral_measure(c2, tol), a2, psi2, tol)
    report.check("constructed_instance_eps_zero", eps, 1e-10, "derived")
    p_a = distribution(spectral_measure(a2, tol), psi2, tol)
    p_c = distribution(spectral_measure(c2, tol), psi2, tol)
    tv = tv_distance(p_a, p_c)
    report.check("constructed_instance_tv_maximal", abs(tv - 2.0), 1e-9, "derived",
                 note="spectra {-1 +- sqrt(5)/2} and {+-1/2} are disjoint")
    return report


def fourier_matrix(d: int) -> np.ndarray:
    """Unitary discrete Fourier matrix F[j, k] = e^{-2 pi i jk / d} / sqrt(d)."""
    j = np.arange(d)
    return np.exp(-2j * np.pi * np.outer(j, j) / d) / np.sqrt(d)


def fourier_eigenvector(d: int, seed_index: int = 0) -> PureState:
    """A unit eigenvector of the discrete Fourier matrix with eigenvalue 1.

    Symmetrizes a basis seed over the four powers of F (F^4 = I); falls back
    to the next seed if the projection annihilates the current one.
    """
    f = fourier_matrix(d)
    for idx in range(seed_index, seed_index + d):
        v = np.zeros(d, dtype=np.complex128)
        v[idx % d] = 1.0
        acc = v.copy()
        w = v
        for _ in range(3):
            w = f @ w
            acc += w
        if np.linalg.norm(acc) > 1e-8:
            return PureState.normalized(acc)
    raise RuntimeError("no Fourier eigenvector found from basis seeds")


def discrete_fourier_case(d: int, tol: Tolerance = DEFAULT_TOL) -> CaseReport:
    """Finite analog of the conjugate pair: A = diag(0..d-1) and its Fourier
    conjugate have identical statistics in any Fourier eigenvector, while the
    operator-difference noise stays strictly positive."""
    if d < 3:
        raise ValueError("d must be >= 3")
    report = CaseReport(f"fourier-{d}")
    f = fourier_matrix(d)
    a = HermitianObservable(np.diag(np.arange(d, dtype=float)), tol)
    c = HermitianObservable(f @ a.matrix @ f.conj().T, tol)
    psi = fourier_eigenvector(d)
    p_a = distribution(spectral_measure(a, tol), psi, tol)
    p_c = distribution(spectral_measure(c, tol), psi, tol)
    report.check("tv_distance_zero", tv_distance(p_a, p_c, 1e-6), 1e-9, "derived",
                 note="|<k|psi>| = |<k|F psi>| for Fourier eigenvectors")
    eps = ozawa_noise(spectral_measure(c, tol), a, psi, tol)
    report.check("eps_positive", 1.0 if eps > 1e-3 else 0.0, 0.5, "derived",
                 note=f"eps = {eps:.6f}")
    direct = float(np.linalg.norm((c.matrix - a.matrix) @ psi.amplitudes))
    report.check("eps_matches_direct_formula", abs(eps - direct), 1e-9, "derived")
    return report


def phase_moment_identity_case(n_max: int, tol: Tolerance = DEFAULT_TOL) -> CaseReport:
    """Symmetrized product identity of the phase-space marginal moments:
    (1/2)<n|(At Ar + Ar At)|n> = (n+1) pi with Ar = N + I."""
    report = CaseReport("phase-moment")
    a_theta = phase_space_theta_moment(n_max, tol).matrix
    a_r = number_observable(n_max + 1, tol).matrix + np.eye(n_max + 1)
    sym = (a_theta @ a_r + a_r @ a_theta) / 2
    worst = max(
        abs(float(np.real(sym[n, n])) - (n + 1) * np.pi) for n in range(n_max + 1)
    )
    report.check("symmetrized_diagonal_identity", worst, 1e-9, "paper")

    bigger = phase_space_theta_moment(n_max + 5, tol).matrix
    a_r_big = number_observable(n_max + 6, tol).matrix + np.eye(n_max + 6)
    sym_big = (bigger @ a_r_big + a_r_big @ bigger) / 2
    drift = max(
        abs(float(np.real(sym_big[n, n])) - float(np.real(sym[n, n])))
        for n in range(n_max + 1)
    )
    report.check("truncation_stability", drift, 1e-12, "derived",
                 note="diagonal entries do not move when the truncation grows")
    return report


def husimi_radius_angle_moment(n: int) -> float:
    """Quadrature oracle for the mixed first moment of the ground-state
    phase-space distribution of the number state |n>.

    Density over (r, theta): e^{-r^2} r^{2n+1} / (pi n!), theta uniform.
    Evaluated with an adaptive radial quadrature; the angular integral is
    analytic. Recorded once as documentation alongside the printed value
    n! pi (see the case notes); not part of any acceptance gate.
    """
    radial, _ = quad(
        lambda r: r ** (2 * n + 2) * math.exp(-r * r + gammaln(n + 1) * 0.0), 0, np.inf
    )
    # angular part: int_0^{2pi} theta dtheta = 2 pi^2; normalization 1/(pi n!)
    return 2 * np.pi**2 * radial / (np.pi * math.gamma(n + 1))


def husimi_note(n_values=(0, 1, 2, 3)) -> list[str]:
    notes = []
    for n in n_values:
        q = husimi_radius_angle_moment(n)
        closed = np.pi * math.gamma(n + 1.5) / math.gamma(n + 1)
        printed = math.factorial(n) * np.pi
        notes.append(
            f"n={n}: quadrature {q:.6f}, closed form pi*Gamma(n+3/2)/n! = "
            f"{closed:.6f}, printed value n!*pi = {printed:.6f}"
        )
    return notes


def smeared_position_case(tol: Tolerance = DEFAULT_TOL) -> CaseReport:
    """Grid position smeared by a symmetric three-point kernel: unbiased,
    with state-independent squared noise equal to the kernel variance."""
    from .metrics import eps_n as eps_n_fn
    from .observables import random_state

    report = CaseReport("smeared-position")
    grid = [-2.0, -1.0, 0.0, 1.0, 2.0]
    h = 0.5
    kernel = SmearingKernel((-h, 0.0, h), (0.25, 0.5, 0.25))
    e = smeared_grid_position(grid, kernel, tol)
    q = HermitianObservable(np.diag(grid), tol)

    e1 = moment_operator(e, 1, tol)
    report.check("unbiased_first_moment", linalg.max_abs(e1.matrix - q.matrix), tol.atol,
                 "derived", note="zero-mean kernel leaves the grid operator fixed")
    n_op = moment_operator(e, 2, tol).matrix - q.matrix @ q.matrix
    report.check(
        "noise_operator_is_kernel_variance_times_identity",
        linalg.max_abs(n_op - kernel.variance * np.eye(len(grid))),
        1e-12,
        "derived",
    )
    rng = np.random.default_rng(7)
    worst = max(
        abs(eps_n_fn(e, q, random_state(len(grid), rng), tol) - np.sqrt(kernel.variance))
        for _ in range(10)
    )
    report.check("eps_n_equals_sqrt_kernel_variance", worst, 1e-10, "derived")
    report.notes.append(
        "The source text states eps_n(Q_f, Q, psi) = Var(f); the defining "
        "square root gives eps_n = sqrt(Var(f)) = sqrt(0.125) here. The "
        "squared convention is used throughout this toolkit."
    )
    return report


def canonical_phase_case(n_max: int = 12, n_bins: int = 16, tol: Tolerance = DEFAULT_TOL) -> CaseReport:
    """Binned canonical phase: validity, the pi diagonal of its first moment,
    the norm-1 trend, and how small the variance-based noise can get."""
    report = CaseReport("canonical-phase")
    e = truncated_canonical_phase(n_max, n_bins, tol)
    report.check("povm_valid_completeness", e.completeness_residual(), tol.atol, "trivial")
    phi = moment_operator(e, 1, tol)
    report.check(
        "first_moment_diagonal_pi",
        float(np.max(np.abs(np.diag(phi.matrix).real - np.pi))),
        1e-10,
        "derived",
    )
    peaks = [
        linalg.max_eigenvalue(truncated_canonical_phase(n, n_bins, tol).effects[0])
        for n in (1, 3, 6, 10, n_max)
    ]
    monotone = all(b >= a - 1e-12 for a, b in zip(peaks, peaks[1:]))
    report.check("effect_norm_trend_monotone", 0.0 if monotone else 1.0, 0.5, "derived",
                 note=f"max effect eigenvalues {np.round(peaks, 6).tolist()}")
    report.check("effect_norm_below_one", max(peaks) - 1.0, tol.atol, "derived")
    low, _ = minimal_noise_square(e, phi, tol)
    report.notes.append(
        f"smallest attainable squared noise against the first moment at "
        f"n_max={n_max}, n_bins={n_bins}: {low:.6e} (reported, not asserted; "
        "whether it reaches zero in the untruncated limit is open)"
    )
    return report


def luders_case(tol: Tolerance = DEFAULT_TOL) -> CaseReport:
    """The noiseless reference scheme: induced observable reproduces the
    spectral measure and the noise vanishes on the spanning protocol."""
    report = CaseReport("luders")
    a = HermitianObservable(np.diag([0.5, -0.5]), tol)
    s = luders_scheme(a, tol)
    induced = induced_observable(s, tol)
    equal, res = povm_equal(induced, spectral_measure(a, tol), tol.atol)
    report.check("induced_equals_spectral_measure", res, tol.atol, "derived")
    worst = max(
        ozawa_noise_composite(s, a, psi) for psi in spanning_states(a.dim)
    )
    report.check("noiseless_on_spanning_protocol", worst, 1e-9, "trivial")

    three = HermitianObservable(np.diag([-1.0, 0.25, 2.0]), tol)
    s3 = luders_scheme(three, tol)
    equal3, res3 = povm_equal(induced_observable(s3, tol), spectral_measure(three, tol), tol.atol)
    report.check("induced_equals_spectral_measure_d3", res3, tol.atol, "derived")
    return report


def ndqnd_case(
    d1: int = 4,
    d2: int = 3,
    chi: float = 0.7,
    seed: int = 3,
    tol: Tolerance = DEFAULT_TOL,
) -> CaseReport:
    """Nondemolition number measurement: generic vs closed-form induced
    observable, number invariance, moment formula, and the covariance
    decomposition on the commuting pair."""
    from .observables import random_state

    report = CaseReport("ndqnd")
    rng = np.random.default_rng(seed)
    probe = random_state(d2, rng)
    pointer = HermitianObservable(linalg.random_hermitian(d2, rng), tol)
    s = ndqnd_scheme(d1, d2, chi, probe, pointer, tol)
    generic = induced_observable(s, tol)
    closed = ndqnd_closed_form_observable(d1, d2, chi, probe, pointer, tol)
    _, res = povm_equal(generic, closed, 1e-10)
    report.check("generic_vs_closed_form", res, 1e-10, "derived")

    n1 = number_observable(d1, tol)
    worst_comm = max(
        linalg.opnorm(linalg.commutator(n1.matrix, eff)) for eff in generic.effects
    )
    report.check("number_commutes_with_induced", worst_comm, 1e-10, "paper")

    # moment operators are the same smearing applied to pointer powers
    phi = probe.amplitudes
    n2 = np.arange(d2)
    worst_moment = 0.0
    for k in (1, 2):
        mk = np.linalg.matrix_power(pointer.matrix, k)
        diag = np.empty(d1)
        for n in range(d1):
            rotated = np.exp(1j * chi * n * n2) * phi
            diag[n] = float(np.real(rotated.conj() @ mk @ rotated))
        worst_moment = max(
            worst_moment,
            linalg.max_abs(moment_operator(generic, k, tol).matrix - np.diag(diag)),
        )
    report.check("moment_formula", worst_moment, 1e-10, "paper")

    psi = random_state(d1, rng)
    eps = ozawa_noise(generic, n1, psi, tol)
    e1 = moment_operator(generic, 1, tol).matrix
    e2 = moment_operator(generic, 2, tol).matrix
    v = psi.amplitudes
    nm = n1.matrix
    direct = float(np.real(v.conj() @ (e2 - 2 * e1 @ nm + nm @ nm) @ v))
    report.check("eps_sq_commuting_form", abs(eps**2 - direct), 1e-10, "paper")

    joint = joint_distribution(spectral_measure(n1, tol), generic, psi, tol)
    x = np.array(joint.row_outcomes)
    y = np.array(joint.col_outcomes)
    mixed = float(x @ joint.table @ y)
    operator_mixed = float(np.real(v.conj() @ (e1 @ nm) @ v))
    report.check("joint_mixed_moment", abs(mixed - operator_mixed), 1e-10, "paper")
    report.check("cov4_decomposition", verify_cov4(spectral_measure(n1, tol), generic, psi, tol),
                 1e-8, "derived")
    return report


def spin1_default(tol: Tolerance = DEFAULT_TOL) -> CaseReport:
    angle = 0.1
    a_axis = np.array([0.0, 0.0, 1.0])
    c_axis = np.array([np.sin(angle), 0.0, np.cos(angle)])
    report = spin_misalignment_case(a_axis, c_axis, tol=tol)
    # orthogonal instance: eps^2 = 1/2 on the nose
    ortho = spin_misalignment_case(a_axis, np.array([1.0, 0.0, 0.0]), tol=tol)
    for c in ortho.checks:
        report.checks.append(c)
    return report


def spin2_default(tol: Tolerance = DEFAULT_TOL) -> CaseReport:
    theta = 0.4
    a_axis = np.array([np.sin(theta), 0.0, np.cos(theta)])
    c_axis = np.array([-np.sin(theta), 0.0, np.cos(theta)])
    return equal_distribution_nonzero_noise_case(a_axis, c_axis, tol)


def fourier_default(tol: Tolerance = DEFAULT_TOL) -> CaseReport:
    report = discrete_fourier_case(4, tol)
    other = discrete_fourier_case(8, tol)
    report.checks.extend(other.checks)
    report.name = "fourier"
    return report


def phase_space_default(tol: Tolerance = DEFAULT_TOL) -> CaseReport:
    report = phase_moment_identity_case(8, tol)
    report.notes.extend(husimi_note())
    report.notes.append(
        "The mixed radius-angle moment of the ground-state phase-space "
        "distribution disagrees with both the printed n!*pi and the "
        "symmetrized operator value (n+1)*pi under the standard "
        "normalization; recorded for documentation only."
    )
    return report


CASES: dict[str, GalleryCase] = {
    "luders": GalleryCase("luders", "canonical noiseless scheme", luders_case),
    "spin1": GalleryCase("spin1", "misaligned spin measurement noise", spin1_default),
    "spin2": GalleryCase("spin2", "equal statistics, nonzero noise", spin2_default),
    "spin3": GalleryCase("spin3", "zero noise, different statistics", zero_noise_different_distributions_case),
    "fourier": GalleryCase("fourier", "discrete Fourier pair: equal statistics, positive noise", fourier_default),
    "smeared-position": GalleryCase("smeared-position", "kernel-smeared grid position", smeared_position_case),
    "canonical-phase": GalleryCase("canonical-phase", "binned canonical phase observable", canonical_phase_case),
    "phase-moment": GalleryCase("phase-moment", "phase-space marginal moment identity", phase_space_default),
    "ndqnd": GalleryCase("ndqnd", "nondemolition photon-number scheme", ndqnd_case),
}


def run_case(name: str, tol: Tolerance = DEFAULT_TOL) -> CaseReport:
    if name not in CASES:
        raise UnknownCase(f"unknown gallery case {name!r}; known: {sorted(CASES)}")
    return CASES[name].run(tol=tol)


def run_all(tol: Tolerance = DEFAULT_TOL) -> list[CaseReport]:
    return [run_case(name, tol) for name in CASES]
