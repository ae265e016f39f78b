"""Binary quantum hypothesis testing: Helstrom measurement, error, Bayes update."""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from . import qlin
from .errors import UndefinedConditionalError, ValidationError

DENSITY_TRACE_TOL = 1e-12
DENSITY_PSD_TOL = 1e-10
POSITIVITY_SLACK = 1e-12
MEASUREMENT_SUM_TOL = 1e-12
# Eigenvalues of the weighted difference inside this band count as zero and
# are assigned to outcome 1.
NULL_EIGENVALUE = 1e-12


@dataclass(frozen=True)
class QubitState:
    """Qubit density matrix ``[[x, z], [z*, 1 - x]]``."""

    x: float
    z: complex = 0j

    def __post_init__(self):
        x, z = float(self.x), complex(self.z)
        if not (np.isfinite(x) and cmath.isfinite(z)):
            raise ValidationError("non-finite parameters", "x/z")
        if not 0.0 <= x <= 1.0:
            raise ValidationError(f"population must lie in [0, 1], got {x}", "x")
        if abs(z) ** 2 > x * (1.0 - x) + POSITIVITY_SLACK:
            raise ValidationError(f"|z|^2 = {abs(z) ** 2:.6g} exceeds x(1-x) = {x * (1 - x):.6g}", "z")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)

    def operator(self) -> np.ndarray:
        return qubit_state_to_operator(self)


def qubit_state_to_operator(q: QubitState) -> np.ndarray:
    return np.array([[q.x, q.z], [q.z.conjugate(), 1.0 - q.x]], dtype=complex)


def as_density_matrix(rho, dim: int | None = None, name: str = "rho") -> np.ndarray:
    """Validate a density matrix (unit trace, positive semidefinite)."""
    rho = qlin.as_hermitian(rho, dim, name)
    if abs(np.trace(rho).real - 1.0) > DENSITY_TRACE_TOL:
        raise ValidationError(f"trace is {np.trace(rho).real!r}, expected 1", name)
    if not qlin.is_positive_semidefinite(rho, DENSITY_PSD_TOL):
        raise ValidationError("matrix is not positive semidefinite", name)
    return rho


@dataclass(frozen=True)
class Hypotheses:
    """Two candidate states with prior probabilities ``prior1`` and ``1 - prior1``."""

    rho1: np.ndarray
    rho2: np.ndarray
    prior1: float = 0.5

    def __post_init__(self):
        rho1 = as_density_matrix(self.rho1, name="rho1")
        rho2 = as_density_matrix(self.rho2, rho1.shape[0], name="rho2")
        prior1 = float(self.prior1)
        if not 0.0 <= prior1 <= 1.0:
            raise ValidationError(f"prior must lie in [0, 1], got {prior1}", "prior1")
        object.__setattr__(self, "rho1", rho1)
        object.__setattr__(self, "rho2", rho2)
        object.__setattr__(self, "prior1", prior1)

    @property
    def prior2(self) -> float:
        return 1.0 - self.prior1

    @property
    def priors(self) -> tuple[float, float]:
        return self.prior1, self.prior2

    @property
    def dim(self) -> int:
        return self.rho1.shape[0]

    def weighted_difference(self) -> np.ndarray:
        return self.prior1 * self.rho1 - self.prior2 * self.rho2

    @classmethod
    def from_qubits(cls, q1: QubitState, q2: QubitState, prior1: float = 0.5) -> Hypotheses:
        return cls(q1.operator(), q2.operator(), prior1)


@dataclass(frozen=True)
class TwoOutcomeMeasurement:
    pi1: np.ndarray
    pi2: np.ndarray

    def __post_init__(self):
        pi1 = qlin.as_hermitian(self.pi1, name="pi1")
        pi2 = qlin.as_hermitian(self.pi2, pi1.shape[0], name="pi2")
        if np.max(np.abs(pi1 + pi2 - np.eye(pi1.shape[0]))) > MEASUREMENT_SUM_TOL:
            raise ValidationError("pi1 + pi2 must equal the identity", "pi1+pi2")
        for name, op in (("pi1", pi1), ("pi2", pi2)):
            if not qlin.is_positive_semidefinite(op, DENSITY_PSD_TOL):
                raise ValidationError("effect is not positive semidefinite", name)
        object.__setattr__(self, "pi1", pi1)
        object.__setattr__(self, "pi2", pi2)

    @property
    def dim(self) -> int:
        return self.pi1.shape[0]

    def effect(self, outcome: int) -> np.ndarray:
        if outcome == 1:
            return self.pi1
        if outcome == 2:
            return self.pi2
        raise ValidationError(f"outcome must be 1 or 2, got {outcome!r}", "outcome")

    @classmethod
    def from_pi2(cls, pi2) -> TwoOutcomeMeasurement:
        pi2 = np.asarray(pi2, dtype=complex)
        return cls(np.eye(pi2.shape[0]) - pi2, pi2)


@dataclass(frozen=True)
class OutcomeDistribution:
    """``p_k_given_i[i, k]`` is the probability of outcome ``k+1`` for state ``i+1``."""

    p_k_given_i: np.ndarray
    p_total: tuple[float, float]
    priors: tuple[float, float] = field(default=(0.5, 0.5))

    def p(self, outcome: int, state: int) -> float:
        """``p(outcome / state)`` with 1-based labels."""
        return float(self.p_k_given_i[state - 1, outcome - 1])


def _check_dims(h: Hypotheses, m: TwoOutcomeMeasurement) -> None:
    if h.dim != m.dim:
        raise ValidationError(f"hypotheses have dimension {h.dim}, measurement {m.dim}", "measurement")


def negative_part_sum(h) -> float:
    """Sum of the negative eigenvalues of a Hermitian operator."""
    return float(np.sum(np.minimum(qlin.eig_hermitian(h).values, 0.0)))


def helstrom_measurement(h: Hypotheses) -> TwoOutcomeMeasurement:
    """Minimum-error measurement: outcome 2 on the negative eigenspace.

    The decision operator is ``prior1*rho1 - prior2*rho2``. Directions with
    eigenvalue inside ``±1e-12`` go to outcome 1, so identical hypotheses give
    the measurement ``(I, 0)``.
    """
    spectrum = qlin.eig_hermitian(h.weighted_difference())
    pi2 = np.zeros((h.dim, h.dim), dtype=complex)
    for value, vec in spectrum:
        if value < -NULL_EIGENVALUE:
            pi2 += qlin.projector(vec)
    return TwoOutcomeMeasurement.from_pi2(pi2)


def helstrom_error(h: Hypotheses) -> float:
    """Minimum mean error probability ``prior2 + sum(min(0, eig(prior1*rho1 - prior2*rho2)))``."""
    return h.prior2 + negative_part_sum(h.weighted_difference())


def mean_error(h: Hypotheses, m: TwoOutcomeMeasurement) -> float:
    _check_dims(h, m)
    return h.prior1 * float(np.trace(h.rho1 @ m.pi2).real) + h.prior2 * float(np.trace(h.rho2 @ m.pi1).real)


def outcome_probabilities(h: Hypotheses, m: TwoOutcomeMeasurement) -> OutcomeDistribution:
    _check_dims(h, m)
    table = np.empty((2, 2))
    for i, rho in enumerate((h.rho1, h.rho2)):
        p2 = float(np.clip(np.trace(rho @ m.pi2).real, 0.0, 1.0))
        table[i] = (1.0 - p2, p2)
    p_total = tuple(float(h.prior1 * table[0, k] + h.prior2 * table[1, k]) for k in range(2))
    table.setflags(write=False)
    return OutcomeDistribution(table, p_total, h.priors)


def bayes_posterior(h: Hypotheses, d: OutcomeDistribution, outcome: int) -> tuple[float, float]:
    """Posterior over the two hypotheses given an observed outcome.

    Raises:
        UndefinedConditionalError: if the outcome has zero total probability.
    """
    if outcome not in (1, 2):
        raise ValidationError(f"outcome must be 1 or 2, got {outcome!r}", "outcome")
    joint = (h.prior1 * d.p(outcome, 1), h.prior2 * d.p(outcome, 2))
    total = joint[0] + joint[1]
    if total <= 0.0:
        raise UndefinedConditionalError(f"outcome {outcome} has probability zero")
    post1 = joint[0] / total
    return post1, 1.0 - post1
