import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdiscrim._rng import stream
from qdiscrim.discrimination import helstrom_error, Hypotheses
from qdiscrim.errors import ValidationError
from qdiscrim.replicas import (
    EqualityClass,
    IndependentPairProblem,
    audit_independent,
    canonicalize_pair,
    compare_independent,
    global_pair_error,
    global_pair_error_batch,
    global_pair_error_pipeline,
    sample_independent,
    sequential_pair_error_closed,
    sequential_pair_protocol,
)

from test_qlin import random_unitary

STRICT = IndependentPairProblem(0.9, 0.3, 0.2)


def lapack_helstrom(r1, r2, prior1=0.5):
    ev = np.linalg.eigvalsh(prior1 * r1 - (1 - prior1) * r2)
    return (1 - prior1) + np.sum(np.minimum(ev, 0.0))


def oracle_sequential(p):
    """Two-stage error built only from LAPACK eigenvectors and explicit sums."""
    r1, r2 = p.rho1, p.rho2
    w, v = np.linalg.eigh(0.5 * r1 - 0.5 * r2)
    neg = v[:, w < -1e-12]
    pi = {2: neg @ neg.conj().T}
    pi[1] = np.eye(2) - pi[2]
    total = 0.0
    for s in (1, 2):
        a = 0.5 * np.trace(r1 @ pi[s]).real
        b = 0.5 * np.trace(r2 @ pi[s]).real
        if a + b <= 0:
            continue
        prior = a / (a + b)
        total += (a + b) * lapack_helstrom(r1, r2, prior)
    return total


def on_manifold(rng):
    x1 = rng.random()
    if rng.random() < 0.5:
        x2 = 1.0 - x1
        zmax = math.sqrt(x1 * (1 - x1))
        z = rng.random() * zmax * np.exp(2j * math.pi * rng.random())
    else:
        x2, z = rng.random(), 0.0
    return IndependentPairProblem(x1, x2, z)


class TestProblem:
    def test_rejects_non_psd(self):
        with pytest.raises(ValidationError):
            IndependentPairProblem(0.9, 0.5, 0.4)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValidationError):
            IndependentPairProblem(1.5, 0.5)


class TestCanonicalize:
    def test_already_canonical(self):
        rho1 = np.array([[0.9, 0.2], [0.2, 0.1]])
        rho2 = np.array([[0.3, 0.2], [0.2, 0.7]])
        p, u = canonicalize_pair(rho1, rho2)
        np.testing.assert_allclose(u, np.eye(2), atol=1e-15)
        assert (p.x1, p.x2) == pytest.approx((0.9, 0.3))
        assert p.z == pytest.approx(0.2)

    def test_identical_states(self):
        rho = np.array([[0.6, 0.1j], [-0.1j, 0.4]])
        p, u = canonicalize_pair(rho, rho)
        np.testing.assert_array_equal(u, np.eye(2))
        assert p.x1 == p.x2 == pytest.approx(0.6)
        assert p.z == pytest.approx(0.1j)

    def test_rotation_invariance_and_round_trip(self):
        rng = np.random.default_rng(21)
        for _ in range(500):
            p = sample_independent(rng)
            w = random_unitary(rng)
            r1 = w @ p.rho1 @ w.conj().T
            r2 = w @ p.rho2 @ w.conj().T
            q, u = canonicalize_pair(r1, r2)
            if abs(p.x1 - p.x2) > 1e-6:
                # the difference diag(dx, -dx) fixes x1 > x2 up to swapping roles
                assert q.x1 >= q.x2 - 1e-12
                assert (q.x1 - q.x2) == pytest.approx(abs(p.x1 - p.x2), abs=1e-10)
                assert abs(q.z) == pytest.approx(abs(p.z), abs=1e-10)
            np.testing.assert_allclose(u @ q.rho1 @ u.conj().T, r1, atol=1e-10)
            np.testing.assert_allclose(u @ q.rho2 @ u.conj().T, r2, atol=1e-10)


class TestGlobal:
    def test_identical(self):
        p = IndependentPairProblem(0.4, 0.4, 0.3)
        assert global_pair_error(p) == 0.5
        assert global_pair_error_pipeline(p) == pytest.approx(0.5, abs=1e-15)

    def test_same_eigenvectors_example(self):
        p = IndependentPairProblem(1.0, 0.5)
        ev = np.diag(np.kron(p.rho1, p.rho1) - np.kron(p.rho2, p.rho2)).real
        np.testing.assert_allclose(ev, [0.75, -0.25, -0.25, -0.25])
        oracle = 0.5 + 0.5 * ev[ev < 0].sum()
        assert oracle == pytest.approx(0.125)
        assert global_pair_error(p) == pytest.approx(0.125, abs=1e-15)
        assert global_pair_error_pipeline(p) == pytest.approx(0.125, abs=1e-15)

    def test_strict_example_closed_form_value(self):
        # 0.5 * (1 - 0.6 * (0.2 + sqrt(1.16)))
        assert global_pair_error(STRICT) == pytest.approx(0.5 * (1 - 0.6 * (0.2 + math.sqrt(1.16))), abs=1e-15)
        assert global_pair_error(STRICT) == pytest.approx(0.11689, abs=1e-5)

    def test_strict_example_exact_optimum(self):
        r1, r2 = STRICT.rho1, STRICT.rho2
        exact = lapack_helstrom(np.kron(r1, r1), np.kron(r2, r2))
        assert global_pair_error_pipeline(STRICT) == pytest.approx(exact, abs=1e-13)
        assert exact == pytest.approx(0.1230691867, abs=1e-9)

    def test_closed_form_matches_pipeline_on_manifolds(self):
        rng = np.random.default_rng(22)
        for _ in range(2000):
            p = on_manifold(rng)
            assert abs(global_pair_error(p) - global_pair_error_pipeline(p)) <= 1e-10

    def test_closed_form_never_exceeds_optimum(self):
        # Off the equality manifolds the two-copy closed form falls below the
        # true optimum, so it is not attainable there.
        rng = np.random.default_rng(23)
        for _ in range(2000):
            p = sample_independent(rng)
            assert global_pair_error(p) <= global_pair_error_pipeline(p) + 1e-10

    def test_batch_matches_pipeline(self):
        rng = np.random.default_rng(24)
        ps = [sample_independent(rng) for _ in range(500)]
        batch = global_pair_error_batch([p.x1 for p in ps], [p.x2 for p in ps], [p.z for p in ps])
        for p, b in zip(ps, batch):
            assert b == pytest.approx(global_pair_error_pipeline(p), abs=1e-12)


class TestSequential:
    def test_identical(self):
        p = IndependentPairProblem(0.3, 0.3, 0.1)
        assert sequential_pair_error_closed(p) == 0.5
        assert sequential_pair_protocol(p).total_error == pytest.approx(0.5)

    def test_same_eigenvectors_example(self):
        p = IndependentPairProblem(1.0, 0.5)
        assert sequential_pair_error_closed(p) == pytest.approx(0.125, abs=1e-15)

    def test_strict_example(self):
        assert sequential_pair_error_closed(STRICT) == pytest.approx(0.13160, abs=1e-5)
        assert sequential_pair_protocol(STRICT).total_error == pytest.approx(oracle_sequential(STRICT), abs=1e-12)

    def test_orthogonal(self):
        r = sequential_pair_protocol(IndependentPairProblem(1.0, 0.0))
        assert r.total_error == 0.0
        for b in r.branches:
            assert b.posterior in ((1.0, 0.0), (0.0, 1.0))

    def test_breakdown(self):
        r = sequential_pair_protocol(IndependentPairProblem(1.0, 0.5))
        b1, b2 = r.branches
        assert b2.posterior == pytest.approx((0.0, 1.0), abs=1e-15)
        assert b2.stage2_error == pytest.approx(0.0, abs=1e-15)
        assert b2.lambda_s == math.inf
        assert b1.lambda_s == pytest.approx(0.5)
        assert r.total_error == pytest.approx(0.125, abs=1e-15)
        assert r.total_error_ratio_form == pytest.approx(0.125, abs=1e-15)

    def test_closed_form_matches_protocol(self):
        rng = np.random.default_rng(25)
        for _ in range(3000):
            p = sample_independent(rng)
            r = sequential_pair_protocol(p)
            c = sequential_pair_error_closed(p)
            assert abs(c - r.total_error) <= 1e-10
            assert abs(c - oracle_sequential(p)) <= 1e-10
            assert abs(r.total_error - r.total_error_ratio_form) <= 1e-10


class TestCompare:
    def test_same_eigenvalues(self):
        r = compare_independent(IndependentPairProblem(0.7, 0.3, 0.2))
        assert r.equality_class is EqualityClass.SAME_EIGENVALUES
        assert abs(r.gap) <= 1e-12
        assert abs(r.gap_closed_form) <= 1e-12

    def test_same_eigenvectors(self):
        r = compare_independent(IndependentPairProblem(1.0, 0.5))
        assert r.equality_class is EqualityClass.SAME_EIGENVECTORS
        assert abs(r.gap) <= 1e-12

    def test_identical(self):
        r = compare_independent(IndependentPairProblem(0.5, 0.5, 0.3))
        assert r.equality_class is EqualityClass.IDENTICAL_STATES

    def test_strict(self):
        r = compare_independent(STRICT)
        assert r.equality_class is EqualityClass.STRICT_INEQUALITY
        assert r.gap_closed_form == pytest.approx(0.01471, abs=1e-5)
        assert r.gap == pytest.approx(0.0085275167, abs=1e-9)

    @settings(max_examples=300, deadline=None)
    @given(st.integers(0, 2**63 - 1))
    def test_report_invariants(self, seed):
        p = sample_independent(stream(seed))
        r = compare_independent(p)
        assert r.gap >= -1e-12
        if r.equality_class is not EqualityClass.STRICT_INEQUALITY:
            assert abs(r.gap) <= 1e-9

    @settings(max_examples=300, deadline=None)
    @given(st.integers(0, 2**63 - 1))
    def test_swap_symmetry(self, seed):
        p = sample_independent(stream(seed))
        q = p.swapped()
        assert global_pair_error_pipeline(q) == pytest.approx(global_pair_error_pipeline(p), abs=1e-12)
        assert sequential_pair_error_closed(q) == pytest.approx(sequential_pair_error_closed(p), abs=1e-12)
        assert global_pair_error(q) == pytest.approx(global_pair_error(p), abs=1e-12)

    @settings(max_examples=300, deadline=None)
    @given(st.integers(0, 2**63 - 1))
    def test_two_copies_never_hurt(self, seed):
        p = sample_independent(stream(seed))
        single = helstrom_error(Hypotheses(p.rho1, p.rho2))
        assert global_pair_error_pipeline(p) <= single + 1e-12
        assert single <= 0.5 + 1e-12


class TestAudit:
    def test_small_audit(self):
        s = audit_independent(5000, seed=3)
        assert s.count == 5000
        assert s.min_gap >= -1e-12
        assert s.ok

    def test_deterministic(self):
        a = audit_independent(300, seed=9)
        b = audit_independent(300, seed=9)
        assert a == b

    def test_sampler_validity(self):
        rng = stream(5)
        for _ in range(10_000):
            p = sample_independent(rng)
            for r in (p.rho1, p.rho2):
                assert np.linalg.eigvalsh(r).min() >= -1e-12
