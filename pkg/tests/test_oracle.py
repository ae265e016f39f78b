import numpy as np
import pytest

from qdiscrim._rng import stream
from qdiscrim.discrimination import Hypotheses, helstrom_error
from qdiscrim.entangled import EntangledProblem, PairPureState, canonical_mismatch
from qdiscrim.errors import ValidationError
from qdiscrim.oracle import SearchConfig, brute_force_min_error, random_problem, simulate_sequential
from qdiscrim.replicas import IndependentPairProblem, sequential_pair_protocol
from qdiscrim.entangled import sequential_error_entangled_protocol

from test_qlin import random_density

PURE0 = np.diag([1.0, 0.0])
PURE1 = np.diag([0.0, 1.0])


class TestSearchConfig:
    @pytest.mark.parametrize("field", ["grid_density", "random_trials", "refine_iterations"])
    def test_counts_positive(self, field):
        with pytest.raises(ValidationError):
            SearchConfig(**{field: 0})


class TestBruteForce:
    def test_orthogonal(self):
        r = brute_force_min_error(Hypotheses(PURE0, PURE1))
        assert r.best_error == pytest.approx(0.0, abs=1e-15)

    def test_pure_against_mixed(self):
        r = brute_force_min_error(Hypotheses(PURE0, np.eye(2) / 2), SearchConfig(grid_density=100))
        assert 0.25 - 1e-10 <= r.best_error <= 0.25 + 1e-3

    def test_independent_pair(self):
        p = IndependentPairProblem(1.0, 0.5)
        h = Hypotheses(np.kron(p.rho1, p.rho1), np.kron(p.rho2, p.rho2))
        r = brute_force_min_error(h, SearchConfig(random_trials=10_000))
        assert 0.125 - 1e-10 <= r.best_error <= 0.125 + 1e-3

    def test_strict_pair_agrees_with_exact_optimum(self):
        # The search knows nothing about eigenvalues; it lands on the 4x4
        # Helstrom value, not on the lower two-copy closed form.
        p = IndependentPairProblem(0.9, 0.3, 0.2)
        h = Hypotheses(np.kron(p.rho1, p.rho1), np.kron(p.rho2, p.rho2))
        r = brute_force_min_error(h)
        assert helstrom_error(h) - 1e-10 <= r.best_error <= helstrom_error(h) + 1e-6
        assert r.best_error > 0.11689 + 1e-3

    def test_never_below_helstrom_qubits(self):
        rng = np.random.default_rng(51)
        cfg = SearchConfig(grid_density=60)
        for _ in range(200):
            h = Hypotheses(random_density(rng, 2), random_density(rng, 2), rng.random())
            assert brute_force_min_error(h, cfg).best_error >= helstrom_error(h) - 1e-10

    def test_never_below_helstrom_pairs(self):
        rng = np.random.default_rng(52)
        cfg = SearchConfig(random_trials=500, refine_iterations=300)
        for _ in range(20):
            h = Hypotheses(random_density(rng, 4), random_density(rng, 4), rng.random())
            assert brute_force_min_error(h, cfg).best_error >= helstrom_error(h) - 1e-10

    def test_grid_refinement_monotone(self):
        rng = np.random.default_rng(53)
        for _ in range(20):
            h = Hypotheses(random_density(rng, 2), random_density(rng, 2), rng.random())
            errs = [brute_force_min_error(h, SearchConfig(grid_density=k)).best_error for k in (25, 50, 100, 200)]
            assert all(b <= a for a, b in zip(errs, errs[1:]))

    def test_fine_grid_excess(self):
        rng = np.random.default_rng(54)
        for _ in range(100):
            h = Hypotheses(random_density(rng, 2), random_density(rng, 2), rng.random())
            excess = brute_force_min_error(h).best_error - helstrom_error(h)
            assert -1e-10 <= excess <= 1e-3

    def test_deterministic(self):
        h = Hypotheses(random_density(np.random.default_rng(1), 4), random_density(np.random.default_rng(2), 4))
        cfg = SearchConfig(random_trials=300, refine_iterations=100, seed=7)
        assert brute_force_min_error(h, cfg).best_error == brute_force_min_error(h, cfg).best_error


class TestSimulation:
    def test_orthogonal(self):
        r = simulate_sequential(IndependentPairProblem(1.0, 0.0), 10_000, seed=1)
        assert r.errors == 0 and r.empirical_error == 0.0

    def test_rejects_zero_trials(self):
        with pytest.raises(ValidationError):
            simulate_sequential(IndependentPairProblem(1.0, 0.5), 0, seed=1)

    def test_independent_example(self):
        r = simulate_sequential(IndependentPairProblem(1.0, 0.5), 1_000_000, seed=42)
        assert r.empirical_error == r.errors / r.trials
        assert abs(r.empirical_error - 0.125) <= 4 * r.std_error

    def test_entangled_example(self):
        e = EntangledProblem(PairPureState(1, 0, 0), PairPureState(0.6, 0, 0.8))
        r = simulate_sequential(e, 1_000_000, seed=42)
        assert abs(r.empirical_error - 0.18) <= 4 * r.std_error

    def test_reproducible(self):
        p = IndependentPairProblem(0.9, 0.3, 0.2)
        assert simulate_sequential(p, 100_000, 5) == simulate_sequential(p, 100_000, 5)
        assert simulate_sequential(p, 100_000, 5).errors != simulate_sequential(p, 100_000, 6).errors

    def test_chunking_does_not_change_counts_per_stream(self):
        p = IndependentPairProblem(0.9, 0.3, 0.2)
        a = simulate_sequential(p, 10_000, 3, chunk=10_000)
        assert a.trials == 10_000 and 0 <= a.errors <= 10_000

    @pytest.mark.parametrize("kind", ["independent", "entangled"])
    def test_coverage(self, kind):
        hits = 0
        for i in range(100):
            problem = random_problem(kind, 60, i)
            if kind == "independent":
                analytic = sequential_pair_protocol(problem).total_error
            else:
                analytic = sequential_error_entangled_protocol(problem).total_error
            r = simulate_sequential(problem, 100_000, seed=1000 + i)
            hits += abs(r.empirical_error - analytic) <= 4 * max(r.std_error, 1e-12)
        assert hits >= 95


class TestRandomProblem:
    @pytest.mark.parametrize("kind", ["independent", "entangled"])
    def test_deterministic(self, kind):
        assert random_problem(kind, 11, 3) == random_problem(kind, 11, 3)
        assert random_problem(kind, 11, 3) != random_problem(kind, 11, 4)

    def test_bad_kind(self):
        with pytest.raises(ValidationError):
            random_problem("mixed", 0)

    def test_independent_valid(self):
        for i in range(10_000):
            p = random_problem("independent", 12, i)
            assert np.linalg.eigvalsh(p.rho1).min() >= -1e-12
            assert np.linalg.eigvalsh(p.rho2).min() >= -1e-12

    def test_entangled_canonical(self):
        for i in range(10_000):
            e = random_problem("entangled", 13, i)
            assert canonical_mismatch(e.psi1, e.psi2) <= 1e-10

    def test_streams_independent_of_order(self):
        forward = [random_problem("independent", 14, i) for i in range(50)]
        backward = [random_problem("independent", 14, i) for i in reversed(range(50))][::-1]
        assert forward == backward
        assert stream(14, 3).random() == stream(14, 3).random()
