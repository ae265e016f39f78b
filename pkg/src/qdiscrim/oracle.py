"""Independent checks: brute-force measurement search and Monte Carlo simulation.

Nothing here uses the negative-eigenspace construction. The search only
evaluates the mean error of explicitly parametrized measurements, and the
simulator samples hypotheses and outcomes one trial at a time (vectorized).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._rng import stream
from .discrimination import Hypotheses, TwoOutcomeMeasurement
from .entangled import (
    EntangledProblem,
    sample_entangled,
    sequential_error_entangled_protocol,
)
from .errors import ValidationError
from .replicas import IndependentPairProblem, sample_independent, sequential_pair_protocol


@dataclass(frozen=True)
class SearchConfig:
    """Brute-force search settings.

    ``grid_density`` is the per-axis resolution of the Bloch-sphere grid for
    qubits (about ``grid_density**2`` directions); doubling it refines the
    grid without dropping any earlier point.
    """

    grid_density: int = 200
    random_trials: int = 10_000
    refine_iterations: int = 4000
    seed: int = 0
    povm_density: int = 12

    def __post_init__(self):
        for name in ("grid_density", "random_trials", "refine_iterations", "povm_density"):
            if int(getattr(self, name)) < 1:
                raise ValidationError("must be at least 1", name)


@dataclass(frozen=True)
class SearchResult:
    best_error: float
    best_measurement: TwoOutcomeMeasurement
    evaluations: int


@dataclass(frozen=True)
class SimulationResult:
    trials: int
    errors: int
    empirical_error: float
    std_error: float
    seed: int


def _errors_for(h: Hypotheses, pi2: np.ndarray) -> np.ndarray:
    """Mean error for a stack of outcome-2 effects, shape ``(n, d, d)``."""
    t1 = np.einsum("ij,nji->n", h.rho1, pi2).real
    t2 = np.einsum("ij,nji->n", h.rho2, pi2).real
    return h.prior1 * t1 + h.prior2 * (1.0 - t2)


def _bloch_effects(directions: np.ndarray, center: np.ndarray, radius: np.ndarray) -> np.ndarray:
    nx, ny, nz = directions.T
    out = np.empty((len(nx), 2, 2), dtype=complex)
    out[:, 0, 0] = center + radius * nz
    out[:, 1, 1] = center - radius * nz
    out[:, 0, 1] = radius * (nx - 1j * ny)
    out[:, 1, 0] = radius * (nx + 1j * ny)
    return out


def _sphere_grid(k: int) -> np.ndarray:
    theta = math.pi * np.arange(k + 1) / k
    phi = 2.0 * math.pi * np.arange(k) / k
    t, p = np.meshgrid(theta, phi, indexing="ij")
    t, p = t.ravel(), p.ravel()
    return np.column_stack([np.sin(t) * np.cos(p), np.sin(t) * np.sin(p), np.cos(t)])


def _search_qubit(h: Hypotheses, cfg: SearchConfig) -> SearchResult:
    dirs = _sphere_grid(cfg.grid_density)
    n = len(dirs)
    candidates = [
        _bloch_effects(dirs, np.full(n, 0.5), np.full(n, 0.5)),
        np.stack([np.zeros((2, 2)), np.eye(2)]).astype(complex),
    ]
    # Coarse sweep over unsharp effects a*I + b*(n.sigma), 0 <= a - b, a + b <= 1.
    coarse = _sphere_grid(cfg.povm_density)
    levels = np.linspace(0.0, 1.0, cfg.povm_density + 1)
    for a in levels:
        for b in levels[1:]:
            if a - b >= 0.0 and a + b <= 1.0:
                m = len(coarse)
                candidates.append(_bloch_effects(coarse, np.full(m, a), np.full(m, b)))
    effects = np.concatenate(candidates)
    errs = _errors_for(h, effects)
    i = int(np.argmin(errs))
    return SearchResult(float(errs[i]), TwoOutcomeMeasurement.from_pi2(effects[i]), len(effects))


def _frame_projector(frame: np.ndarray) -> np.ndarray:
    q, _ = np.linalg.qr(frame)
    return q @ q.conj().T


def _refine(h: Hypotheses, frame: np.ndarray, best: float, cfg: SearchConfig, rng) -> tuple[float, np.ndarray, int]:
    step = 0.25
    failures = 0
    evals = 0
    patience = 2 * frame.size
    for _ in range(cfg.refine_iterations):
        if step < 1e-6:
            break
        d = rng.standard_normal(frame.shape) + 1j * rng.standard_normal(frame.shape)
        d *= step / np.linalg.norm(d)
        improved = False
        for trial in (frame + d, frame - d):
            err = float(_errors_for(h, _frame_projector(trial)[None])[0])
            evals += 1
            if err < best:
                best, frame, improved = err, trial, True
                break
        if improved:
            failures = 0
        else:
            failures += 1
            if failures >= patience:
                step *= 0.5
                failures = 0
    return best, frame, evals


def _search_pair(h: Hypotheses, cfg: SearchConfig) -> SearchResult:
    rng = stream(cfg.seed, 0)
    dim = h.dim
    ranks = rng.integers(0, dim + 1, size=cfg.random_trials)
    best_err = math.inf
    best_pi2 = None
    best_by_rank: dict[int, tuple[float, np.ndarray]] = {}
    evals = 0
    for r in range(dim + 1):
        count = int(np.sum(ranks == r))
        if count == 0:
            continue
        if r == 0:
            frames = np.zeros((1, dim, 0), dtype=complex)
            pi2 = np.zeros((1, dim, dim), dtype=complex)
        else:
            frames = rng.standard_normal((count, dim, r)) + 1j * rng.standard_normal((count, dim, r))
            q, _ = np.linalg.qr(frames)
            pi2 = q @ np.conj(np.swapaxes(q, -1, -2))
        errs = _errors_for(h, pi2)
        evals += len(errs)
        i = int(np.argmin(errs))
        best_by_rank[r] = (float(errs[i]), frames[i])
        if errs[i] < best_err:
            best_err, best_pi2 = float(errs[i]), pi2[i]
    for r, (err, frame) in sorted(best_by_rank.items()):
        if r in (0, dim):
            continue
        err, frame, n = _refine(h, frame, err, cfg, rng)
        evals += n
        if err < best_err:
            best_err, best_pi2 = err, _frame_projector(frame)
    best_pi2 = 0.5 * (best_pi2 + best_pi2.conj().T)
    return SearchResult(best_err, TwoOutcomeMeasurement.from_pi2(best_pi2), evals)


def brute_force_min_error(h: Hypotheses, cfg: SearchConfig | None = None) -> SearchResult:
    """Smallest mean error found by direct search over two-outcome measurements.

    Qubits: a nested spherical grid of projective measurements, the two
    trivial measurements, and a coarse sweep of unsharp effects. Two-qubit
    hypotheses: random projectors of every rank from orthonormalized Gaussian
    frames, then a derivative-free refinement of the best frame per rank.
    """
    cfg = cfg or SearchConfig()
    if h.dim == 2:
        return _search_qubit(h, cfg)
    return _search_pair(h, cfg)


def _decision_tables(problem) -> tuple[np.ndarray, np.ndarray]:
    """Stage-one ``p[k, s]`` and stage-two ``q[k, s, d]`` probability tables (0-based)."""
    if isinstance(problem, IndependentPairProblem):
        report = sequential_pair_protocol(problem)
    elif isinstance(problem, EntangledProblem):
        report = sequential_error_entangled_protocol(problem)
    else:
        raise ValidationError(f"unsupported problem type {type(problem).__name__}", "problem")
    p = np.zeros((2, 2))
    q = np.zeros((2, 2, 2))
    for b in report.branches:
        s = b.outcome - 1
        p[0, s], p[1, s] = b.p_given_1, b.p_given_2
        if b.stage2_measurement is None:
            continue
        for k, rho in enumerate((b.rho1_conditional, b.rho2_conditional)):
            if rho is None:
                continue
            pd1 = float(np.clip(np.trace(rho @ b.stage2_measurement.pi1).real, 0.0, 1.0))
            q[k, s] = (pd1, 1.0 - pd1)
    return p, q


def simulate_sequential(problem, trials: int, seed: int, chunk: int = 1 << 20) -> SimulationResult:
    """Monte Carlo estimate of the sequential protocol's error rate.

    Each trial draws the true hypothesis with probability 1/2, replica A's
    outcome, then replica B's decision from the post-measurement state, and
    counts a wrong decision. Deterministic for a fixed ``seed``.
    """
    if trials < 1:
        raise ValidationError("must be at least 1", "trials")
    p, q = _decision_tables(problem)
    rng = stream(seed, 0)
    errors = 0
    done = 0
    while done < trials:
        n = min(chunk, trials - done)
        u = rng.random((3, n))
        k = (u[0] >= 0.5).astype(np.intp)
        s = (u[1] >= p[k, 0]).astype(np.intp)
        d = (u[2] >= q[k, s, 0]).astype(np.intp)
        errors += int(np.count_nonzero(d != k))
        done += n
    rate = errors / trials
    return SimulationResult(trials, errors, rate, math.sqrt(rate * (1.0 - rate) / trials), int(seed))


def random_problem(kind: str, seed: int, index: int = 0):
    """Deterministic random instance of the given family (``"independent"`` or ``"entangled"``)."""
    rng = stream(seed, index)
    if kind == "independent":
        return sample_independent(rng)
    if kind == "entangled":
        return sample_entangled(rng)
    raise ValidationError(f"kind must be 'independent' or 'entangled', got {kind!r}", "kind")
