"""Discrimination of two entangled, symmetric two-qubit pure states.

Each hypothesis is ``alpha|00> + beta|01> + beta|10> + gamma|11>``; the equal
``|01>``/``|10>`` amplitudes make both replicas carry the same reduced state.
The sequential protocol measures replica A with the Helstrom test for the
reduced states, collapses the pair (von Neumann), and lets replica B run an
unequal-prior Helstrom test on its conditional state.

Closed forms hold in the local basis diagonalizing the difference of the
reduced states, i.e. when ``alpha1 beta1* + beta1 gamma1*`` equals
``alpha2 beta2* + beta2 gamma2*``. :func:`validate_or_canonicalize` brings any
pair into that basis with a shared local unitary.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import qlin
from ._rng import stream
from .discrimination import (
    Hypotheses,
    QubitState,
    TwoOutcomeMeasurement,
    helstrom_error,
    helstrom_measurement,
    outcome_probabilities,
)
from .errors import NumericConsistencyError, ValidationError
from .replicas import SequentialStageReport, assemble_sequential

CANONICAL_TOL = 1e-10
NORM_TOL = 1e-12
ROOT_CLAMP = 1e-12
PHASE_TOL = 1e-8
# A hypothesis whose projected amplitude has squared norm below this cannot
# produce the outcome.
IMPOSSIBLE_PROB = 1e-24


@dataclass(frozen=True)
class PairPureState:
    alpha: complex
    beta: complex
    gamma: complex

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            v = complex(getattr(self, name))
            if not cmath.isfinite(v):
                raise ValidationError("non-finite amplitude", name)
            object.__setattr__(self, name, v)
        if abs(self.norm_squared() - 1.0) > NORM_TOL:
            raise ValidationError(
                f"|alpha|^2 + 2|beta|^2 + |gamma|^2 = {self.norm_squared()!r}, expected 1", "alpha/beta/gamma"
            )

    def norm_squared(self) -> float:
        return abs(self.alpha) ** 2 + 2.0 * abs(self.beta) ** 2 + abs(self.gamma) ** 2

    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta, self.beta, self.gamma], dtype=complex)

    @classmethod
    def from_vector(cls, v, tol: float = 1e-12) -> PairPureState:
        v = np.asarray(v, dtype=complex)
        if v.shape != (4,) or abs(v[1] - v[2]) > tol:
            raise ValidationError("vector is not of the symmetric form (a, b, b, c)", "psi")
        return cls(v[0], 0.5 * (v[1] + v[2]), v[3])

    @classmethod
    def normalized(cls, alpha, beta, gamma) -> PairPureState:
        n = math.sqrt(abs(alpha) ** 2 + 2.0 * abs(beta) ** 2 + abs(gamma) ** 2)
        return cls(alpha / n, beta / n, gamma / n)

    @classmethod
    def product(cls, a, b) -> PairPureState:
        """``(a|0> + b|1>) ⊗ (a|0> + b|1>)`` for a normalized single-qubit state."""
        return cls(a * a, a * b, b * b)

    def is_product(self, tol: float = 1e-9) -> bool:
        # Rank-one coefficient matrix [[alpha, beta], [beta, gamma]].
        return abs(self.alpha * self.gamma - self.beta * self.beta) <= tol

    def as_lists(self) -> dict[str, list[float]]:
        return {k: [getattr(self, k).real, getattr(self, k).imag] for k in ("alpha", "beta", "gamma")}


def reduced_state(psi: PairPureState) -> QubitState:
    """Single-replica state; identical for either subsystem."""
    x = abs(psi.alpha) ** 2 + abs(psi.beta) ** 2
    z = psi.alpha * psi.beta.conjugate() + psi.beta * psi.gamma.conjugate()
    return QubitState(min(max(x, 0.0), 1.0), z)


def overlap(psi1: PairPureState, psi2: PairPureState) -> complex:
    """``<psi2|psi1>``."""
    return (
        psi2.alpha.conjugate() * psi1.alpha
        + 2.0 * psi2.beta.conjugate() * psi1.beta
        + psi2.gamma.conjugate() * psi1.gamma
    )


def canonical_mismatch(psi1: PairPureState, psi2: PairPureState) -> float:
    """Distance from the canonical-basis condition (equal reduced coherences)."""
    return abs(reduced_state(psi1).z - reduced_state(psi2).z)


@dataclass(frozen=True)
class EntangledProblem:
    """Two symmetric pair states, equal priors, in the canonical local basis.

    ``basis`` is the single-qubit unitary mapping canonical coordinates back
    to the caller's coordinates. ``degenerate_stage1`` marks pairs whose
    reduced states coincide, where the first-stage Helstrom test is trivial.
    """

    psi1: PairPureState
    psi2: PairPureState
    basis: np.ndarray = field(default_factory=lambda: np.eye(2, dtype=complex), compare=False)
    degenerate_stage1: bool = field(default=False, compare=False)

    def __post_init__(self):
        if canonical_mismatch(self.psi1, self.psi2) > CANONICAL_TOL:
            raise ValidationError(
                "reduced states do not share a coherence; canonicalize the pair first", "psi1/psi2"
            )
        r1, r2 = self.reduced()
        degenerate = abs(r1.x - r2.x) < qlin.DEGENERACY_GAP
        object.__setattr__(self, "degenerate_stage1", degenerate)

    def reduced(self) -> tuple[QubitState, QubitState]:
        return reduced_state(self.psi1), reduced_state(self.psi2)

    def reduced_hypotheses(self) -> Hypotheses:
        r1, r2 = self.reduced()
        return Hypotheses(r1.operator(), r2.operator())

    def stage1_measurement(self) -> TwoOutcomeMeasurement:
        """Helstrom test on replica A's reduced states.

        When those states coincide every measurement on A is equally good;
        the canonical-basis measurement ``(|0><0|, |1><1|)`` is used so that B
        still sees the collapse.
        """
        if self.degenerate_stage1:
            return TwoOutcomeMeasurement(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
        return helstrom_measurement(self.reduced_hypotheses())

    @property
    def tau(self) -> complex:
        return overlap(self.psi1, self.psi2)


def validate_or_canonicalize(
    psi1: PairPureState, psi2: PairPureState, mode: str = "canonicalize"
) -> tuple[EntangledProblem, np.ndarray]:
    """Check or enforce the canonical-basis condition.

    In ``"validate"`` mode the amplitudes are used as given and a
    :class:`ValidationError` is raised if the reduced coherences differ by more
    than ``1e-10``. In ``"canonicalize"`` mode a shared unitary ``U``
    diagonalizing the difference of reduced states is found and
    ``(U^dagger ⊗ U^dagger)`` is applied to both states. ``U`` is returned.
    """
    if mode == "validate":
        u = np.eye(2, dtype=complex)
        return EntangledProblem(psi1, psi2, u), u
    if mode != "canonicalize":
        raise ValidationError(f"mode must be 'validate' or 'canonicalize', got {mode!r}", "mode")
    r1, r2 = reduced_state(psi1).operator(), reduced_state(psi2).operator()
    u = np.array(qlin.eig_hermitian(r1 - r2).vectors)
    ud = u.conj().T
    new = []
    for psi in (psi1, psi2):
        v = qlin.apply_local_basis_change(ud, psi.vector())
        new.append(PairPureState.from_vector(v, tol=1e-10))
    return EntangledProblem(new[0], new[1], u), u


def global_error_entangled(e: EntangledProblem) -> float:
    """Combined-measurement error for two pure states: ``(1 - sqrt(1 - |tau|^2)) / 2``."""
    t2 = min(abs(e.tau) ** 2, 1.0)
    return 0.5 * (1.0 - math.sqrt(1.0 - t2))


def global_error_entangled_pipeline(e: EntangledProblem) -> float:
    """Combined-measurement error from the 4x4 Helstrom test on the projectors."""
    return helstrom_error(Hypotheses(qlin.projector(e.psi1.vector()), qlin.projector(e.psi2.vector())))


@dataclass(frozen=True)
class ConditionalStates:
    """State of replica B after replica A reported ``outcome``.

    ``rho1``/``rho2`` are ``None`` for a hypothesis that cannot produce the
    outcome.
    """

    outcome: int
    p_given_1: float
    p_given_2: float
    rho1: np.ndarray | None
    rho2: np.ndarray | None

    @property
    def state1_impossible(self) -> bool:
        return self.rho1 is None

    @property
    def state2_impossible(self) -> bool:
        return self.rho2 is None


def _collapse(psi: np.ndarray, effect_a: np.ndarray) -> tuple[float, np.ndarray | None]:
    projected = np.kron(effect_a, np.eye(2)) @ psi
    prob = float(np.vdot(projected, projected).real)
    if prob < IMPOSSIBLE_PROB:
        return prob, None
    projected = projected / math.sqrt(prob)
    return prob, qlin.partial_trace(qlin.projector(projected), "A")


def post_measurement_states(
    e: EntangledProblem, outcome: int, measurement: TwoOutcomeMeasurement | None = None
) -> ConditionalStates:
    """Collapse both hypotheses on replica A's outcome and trace A out."""
    m = measurement if measurement is not None else e.stage1_measurement()
    effect = m.effect(outcome)
    p1, rho1 = _collapse(e.psi1.vector(), effect)
    p2, rho2 = _collapse(e.psi2.vector(), effect)
    return ConditionalStates(outcome, p1, p2, rho1, rho2)


def sequential_error_entangled_closed(e: EntangledProblem) -> float:
    """Closed-form error of the measure-A, collapse, measure-B protocol."""
    a1, b1, g1 = e.psi1.alpha, e.psi1.beta, e.psi1.gamma
    a2, b2, g2 = e.psi2.alpha, e.psi2.beta, e.psi2.gamma
    x1 = abs(a1) ** 2 + abs(b1) ** 2
    x2 = abs(a2) ** 2 + abs(b2) ** 2
    dx2 = (x1 - x2) ** 2
    return 0.5 - 0.25 * (
        math.sqrt(dx2 + 4.0 * abs(a1 * b2 - a2 * b1) ** 2) + math.sqrt(dx2 + 4.0 * abs(g1 * b2 - g2 * b1) ** 2)
    )


def sequential_error_entangled_protocol(e: EntangledProblem) -> SequentialStageReport:
    h = e.reduced_hypotheses()
    m1 = e.stage1_measurement()
    dist = outcome_probabilities(h, m1)
    conditionals = {}
    for s in (1, 2):
        c = post_measurement_states(e, s, m1)
        conditionals[s] = (c.rho1, c.rho2)
    return assemble_sequential(m1, dist, conditionals, e.degenerate_stage1)


@dataclass(frozen=True)
class GapDiagnostics:
    u1: float
    u2: float
    tau_bar: float
    tau_abs: float
    gap_expression: float


def gap_diagnostics(e: EntangledProblem) -> GapDiagnostics:
    """Evaluate ``(1 - 2 P_seq)^2 - (1 - 2 P_glob)^2`` through the ``u1, u2, tau_bar`` variables.

    Raises:
        NumericConsistencyError: if the square-root argument is below ``-1e-12``.
    """
    a1, b1, g1 = e.psi1.alpha, e.psi1.beta, e.psi1.gamma
    a2, b2, g2 = e.psi2.alpha, e.psi2.beta, e.psi2.gamma
    x1 = abs(a1) ** 2 + abs(b1) ** 2
    x2 = abs(a2) ** 2 + abs(b2) ** 2
    upper = abs(a1 * a2.conjugate() + b1 * b2.conjugate())
    lower = abs(g1 * g2.conjugate() + b1 * b2.conjugate())
    u1 = 0.5 * (x1 + x2) - upper
    u2 = 0.5 * (x1 + x2) + upper
    tb = upper + lower
    ta = abs(e.tau)
    arg = u1 * u2 * (1.0 - tb - u1) * (1.0 + tb - u2)
    if arg < -ROOT_CLAMP:
        raise NumericConsistencyError(f"negative square-root argument {arg!r} in gap expression")
    value = u1 * (u2 - 1.0 - tb) + u2 * (u1 - 1.0 + tb) + ta * ta - tb * tb + 2.0 * math.sqrt(max(arg, 0.0))
    return GapDiagnostics(u1, u2, tb, ta, value)


@dataclass(frozen=True)
class EqualityDiagnosis:
    """Which equality conditions between the two strategies hold.

    ``phase_condition`` is ``None`` when a matrix element is too small for its
    argument to mean anything. ``consistent`` records whether the
    ``tau_bar``/``u`` conditions agree with the numerical error gap.
    """

    tau_condition: bool
    u_condition: bool
    phase_condition: bool | None
    magnitude_condition_s1: bool
    magnitude_condition_s2: bool
    special_case_1: bool
    special_case_2: bool
    special_case_3: bool
    product_states: bool
    methods_equal: bool
    p_global: float
    p_sequential: float

    @property
    def n21(self) -> bool:
        return self.tau_condition and self.u_condition

    @property
    def special_case(self) -> int | None:
        for i, flag in enumerate((self.special_case_1, self.special_case_2, self.special_case_3), 1):
            if flag:
                return i
        return None

    @property
    def consistent(self) -> bool:
        return self.n21 == self.methods_equal


def _angle_distance(a: float, b: float) -> float:
    d = (a - b) % (2.0 * math.pi)
    return min(d, 2.0 * math.pi - d)


def _is_real(e: EntangledProblem, tol: float) -> bool:
    return all(abs(getattr(p, k).imag) <= tol for p in (e.psi1, e.psi2) for k in ("alpha", "beta", "gamma"))


def equality_conditions(e: EntangledProblem, tol: float = 1e-9, tol_gap: float = 1e-9) -> EqualityDiagnosis:
    """Check every stated equality condition for the combined and sequential strategies."""
    g = gap_diagnostics(e)
    ta = g.tau_abs
    tau_ok = abs(g.tau_bar - ta) <= tol
    u_ok = abs(g.u1 * (1.0 + ta) - g.u2 * (1.0 - ta)) <= tol

    m = e.stage1_measurement()
    v1, v2 = e.psi1.vector(), e.psi2.vector()
    elems, diag1, diag2 = [], [], []
    for s in (1, 2):
        big = np.kron(m.effect(s), np.eye(2))
        elems.append(complex(np.vdot(v2, big @ v1)))
        diag1.append(float(np.vdot(v1, big @ v1).real))
        diag2.append(float(np.vdot(v2, big @ v2).real))
    if min(abs(elems[0]), abs(elems[1])) < tol:
        phase_ok = None
    else:
        phase_ok = _angle_distance(cmath.phase(elems[0]), cmath.phase(elems[1])) <= PHASE_TOL
    mag = [abs(2.0 * abs(elems[i]) - ta * (diag1[i] + diag2[i])) <= tol for i in range(2)]

    real = _is_real(e, tol)
    a1, b1, g1 = e.psi1.alpha.real, e.psi1.beta.real, e.psi1.gamma.real
    a2, b2, g2 = e.psi2.alpha.real, e.psi2.beta.real, e.psi2.gamma.real
    case1 = real and abs(a1 - g2) <= tol and abs(a2 - g1) <= tol and abs(b1 - b2) <= tol
    case2 = real and abs(a1 + g1) <= tol and abs(a2 + g2) <= tol
    case3 = real and abs(a1 - g1) <= tol and abs(a2 - g2) <= tol and abs(a1 * b1 - a2 * b2) <= tol

    pg = global_error_entangled(e)
    pl = sequential_error_entangled_closed(e)
    return EqualityDiagnosis(
        tau_condition=tau_ok,
        u_condition=u_ok,
        phase_condition=phase_ok,
        magnitude_condition_s1=mag[0],
        magnitude_condition_s2=mag[1],
        special_case_1=case1,
        special_case_2=case2,
        special_case_3=case3,
        product_states=e.psi1.is_product(tol) and e.psi2.is_product(tol),
        methods_equal=abs(pl - pg) <= tol_gap,
        p_global=pg,
        p_sequential=pl,
    )


def sample_entangled(rng: np.random.Generator) -> EntangledProblem:
    """Draw a random pair, canonicalized.

    Amplitudes ``alpha, beta, gamma`` of each state get independent standard
    complex Gaussian components and are normalized with weight 2 on
    ``|beta|^2``.
    """
    states = []
    for _ in range(2):
        c = rng.standard_normal(6)
        states.append(PairPureState.normalized(complex(c[0], c[1]), complex(c[2], c[3]), complex(c[4], c[5])))
    return validate_or_canonicalize(states[0], states[1])[0]


def sample_product(rng: np.random.Generator) -> EntangledProblem:
    """Draw ``phi1⊗phi1`` against ``phi2⊗phi2`` with Gaussian single-qubit states, canonicalized."""
    states = []
    for _ in range(2):
        c = rng.standard_normal(4)
        a, b = complex(c[0], c[1]), complex(c[2], c[3])
        n = math.hypot(abs(a), abs(b))
        states.append(PairPureState.product(a / n, b / n))
    return validate_or_canonicalize(states[0], states[1])[0]


def sample_special_case(case: int, rng: np.random.Generator) -> EntangledProblem:
    """Random real pair satisfying one of the three listed equality families.

    1. ``alpha1 = gamma2, alpha2 = gamma1, beta1 = beta2``
    2. ``alpha_k = -gamma_k``
    3. ``alpha_k = gamma_k`` and ``alpha1 beta1 = alpha2 beta2``
    """
    if case == 1:
        v = rng.standard_normal(3)
        a, b, c = v / np.linalg.norm(v)
        b /= math.sqrt(2.0)
        psi1, psi2 = PairPureState(a, b, c), PairPureState(c, b, a)
    elif case == 2:
        states = []
        for _ in range(2):
            t = rng.uniform(0.0, 2.0 * math.pi)
            a, b = math.cos(t) / math.sqrt(2.0), math.sin(t) / math.sqrt(2.0)
            states.append(PairPureState(a, b, -a))
        psi1, psi2 = states
    elif case == 3:
        t = rng.uniform(0.0, 2.0 * math.pi)
        a, b = math.cos(t) / math.sqrt(2.0), math.sin(t) / math.sqrt(2.0)
        # (b, a) has the same product a*b; an overall sign keeps it.
        sign = 1.0 if rng.random() < 0.5 else -1.0
        psi1, psi2 = PairPureState(a, b, a), PairPureState(sign * b, sign * a, sign * b)
    else:
        raise ValidationError(f"special case must be 1, 2 or 3, got {case!r}", "case")
    return EntangledProblem(psi1, psi2)


@dataclass(frozen=True)
class EntangledAuditSummary:
    count: int
    seed: int
    max_gap_expression: float
    max_global_excess: float
    near_equal: int
    violations: tuple[tuple[int, EntangledProblem, float], ...]
    unexplained_equalities: tuple[tuple[int, EntangledProblem, float], ...]

    @property
    def ok(self) -> bool:
        return not self.violations and not self.unexplained_equalities


def audit_entangled(
    count: int,
    seed: int,
    tol_gap: float = 1e-9,
    tol_param: float = 1e-6,
    expression_tol: float = 1e-10,
    order_tol: float = 1e-12,
    sampler=sample_entangled,
) -> EntangledAuditSummary:
    """Randomized non-positivity check of the gap expression.

    Instance ``i`` comes from stream ``(seed, i)``. A violation is a gap
    expression above ``expression_tol`` or a global error exceeding the
    sequential one by more than ``order_tol``. When the two errors agree
    within ``tol_gap`` the ``tau_bar``/``u`` conditions must hold within
    ``tol_param``.
    """
    violations = []
    unexplained = []
    near = 0
    max_expr = -math.inf
    max_excess = -math.inf
    for i in range(count):
        e = sampler(stream(seed, i))
        pg = global_error_entangled(e)
        pl = sequential_error_entangled_closed(e)
        g = gap_diagnostics(e)
        max_expr = max(max_expr, g.gap_expression)
        max_excess = max(max_excess, pg - pl)
        if g.gap_expression > expression_tol or pg > pl + order_tol:
            violations.append((i, e, g.gap_expression))
        if abs(pl - pg) <= tol_gap:
            near += 1
            ta = g.tau_abs
            if abs(g.tau_bar - ta) > tol_param or abs(g.u1 * (1.0 + ta) - g.u2 * (1.0 - ta)) > tol_param:
                unexplained.append((i, e, pl - pg))
    return EntangledAuditSummary(count, seed, max_expr, max_excess, near, tuple(violations), tuple(unexplained))
