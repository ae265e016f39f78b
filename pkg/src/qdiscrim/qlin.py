"""Dense complex linear algebra for 2- and 4-dimensional Hermitian operators.

Operators are plain ``numpy`` arrays of dtype ``complex128``. The helpers
here validate shape, finiteness and Hermiticity, and implement a small,
deterministic eigensolver: closed form for 2x2, cyclic complex Jacobi for
4x4. Eigenvectors are phase-canonical (first non-negligible component real
and positive) so results are reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

SUPPORTED_DIMS = (2, 4)

HERMITIAN_TOL = 1e-12
NORM_TOL = 1e-12
UNITARY_TOL = 1e-12
DEGENERACY_GAP = 1e-12

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100

# Components below this modulus are skipped when fixing an eigenvector phase.
_PHASE_CUTOFF = 1e-12


@dataclass(frozen=True)
class Spectrum:
    """Eigen-decomposition of a Hermitian operator.

    ``values`` is sorted descending; ``vectors[:, i]`` is the unit eigenvector
    belonging to ``values[i]``.
    """

    values: np.ndarray
    vectors: np.ndarray

    def __iter__(self):
        for i in range(len(self.values)):
            yield float(self.values[i]), self.vectors[:, i]

    def __len__(self) -> int:
        return len(self.values)

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


def as_hermitian(m, dim: int | None = None, name: str = "operator") -> np.ndarray:
    """Validate ``m`` as a Hermitian operator and return its exactly-Hermitian copy."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in SUPPORTED_DIMS:
        raise ValidationError(f"expected a 2x2 or 4x4 matrix, got shape {a.shape}", name)
    if dim is not None and a.shape[0] != dim:
        raise ValidationError(f"expected dimension {dim}, got {a.shape[0]}", name)
    if not np.all(np.isfinite(a)):
        raise ValidationError("non-finite entries", name)
    if np.max(np.abs(a - a.conj().T)) > HERMITIAN_TOL:
        raise ValidationError("matrix is not Hermitian", name)
    return 0.5 * (a + a.conj().T)


def as_state_vector(v, dim: int | None = None, name: str = "state") -> np.ndarray:
    """Validate ``v`` as a normalized pure state of dimension 2 or 4."""
    a = np.asarray(v, dtype=complex)
    if a.ndim != 1 or a.shape[0] not in SUPPORTED_DIMS:
        raise ValidationError(f"expected a length-2 or length-4 vector, got shape {a.shape}", name)
    if dim is not None and a.shape[0] != dim:
        raise ValidationError(f"expected dimension {dim}, got {a.shape[0]}", name)
    if not np.all(np.isfinite(a)):
        raise ValidationError("non-finite amplitudes", name)
    if abs(np.vdot(a, a).real - 1.0) > NORM_TOL:
        raise ValidationError("state is not normalized", name)
    return a


def projector(v) -> np.ndarray:
    """Rank-one projector ``|v><v|``."""
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())


def _canonical_phase(v: np.ndarray) -> np.ndarray:
    for c in v:
        mag = abs(c)
        if mag > _PHASE_CUTOFF:
            return v * (c.conjugate() / mag)
    return v


def _order_key(v: np.ndarray) -> tuple[float, ...]:
    return tuple(x for c in v for x in (c.real, c.imag))


def _sorted_spectrum(values: np.ndarray, vectors: np.ndarray) -> Spectrum:
    vectors = np.column_stack([_canonical_phase(vectors[:, i]) for i in range(vectors.shape[1])])
    order = sorted(range(len(values)), key=lambda i: -values[i])
    # Within a cluster of (near-)equal eigenvalues, order eigenvectors lexicographically.
    result: list[int] = []
    cluster = [order[0]]
    for i in order[1:]:
        if values[cluster[0]] - values[i] < DEGENERACY_GAP:
            cluster.append(i)
        else:
            result.extend(sorted(cluster, key=lambda j: _order_key(vectors[:, j]), reverse=True))
            cluster = [i]
    result.extend(sorted(cluster, key=lambda j: _order_key(vectors[:, j]), reverse=True))
    vals = np.array([values[i] for i in result], dtype=float)
    vecs = vectors[:, result]
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return Spectrum(vals, vecs)


def _eig2(h: np.ndarray) -> Spectrum:
    a, d = h[0, 0].real, h[1, 1].real
    b = h[0, 1]
    mean = 0.5 * (a + d)
    half = 0.5 * (a - d)
    r = math.hypot(half, abs(b))
    values = np.array([mean + r, mean - r])
    if 2.0 * r < DEGENERACY_GAP:
        return _sorted_spectrum(values, np.eye(2, dtype=complex))
    if abs(b) == 0.0:
        top = np.array([1.0, 0.0], dtype=complex) if a >= d else np.array([0.0, 1.0], dtype=complex)
    elif a >= d:
        # lambda_+ - d = r + half >= r, well away from cancellation
        top = np.array([r + half, b.conjugate()], dtype=complex)
    else:
        top = np.array([b, r - half], dtype=complex)
    top = top / np.linalg.norm(top)
    bottom = np.array([-top[1].conjugate(), top[0].conjugate()])
    return _sorted_spectrum(values, np.column_stack([top, bottom]))


def _jacobi(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi sweeps; returns unsorted (eigenvalues, eigenvector columns)."""
    a = h.copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    offdiag = ~np.eye(n, dtype=bool)
    threshold = JACOBI_TOL * max(1.0, float(np.linalg.norm(a)))
    for _ in range(JACOBI_MAX_SWEEPS):
        off = float(np.linalg.norm(a[offdiag]))
        if off < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                g = np.eye(n, dtype=complex)
                g[p, p] = c
                g[p, q] = s
                g[q, p] = -s * phase.conjugate()
                g[q, q] = c * phase.conjugate()
                a = g.conj().T @ a @ g
                a[p, q] = a[q, p] = 0.0
                v = v @ g
    return np.real(np.diag(a)).copy(), v


def eig_hermitian(h) -> Spectrum:
    """Eigen-decomposition of a 2x2 or 4x4 Hermitian operator.

    Eigenvalues come back in descending order with phase-canonical
    eigenvectors. Degenerate eigenvalues (gap below ``1e-12``) have their
    eigenvectors ordered lexicographically; a fully degenerate 2x2 operator
    returns the standard basis.

    Raises:
        ValidationError: if ``h`` is not a finite Hermitian 2x2 or 4x4 matrix.
    """
    h = as_hermitian(h)
    if h.shape[0] == 2:
        return _eig2(h)
    values, vectors = _jacobi(h)
    # One re-orthonormalization pass removes accumulated rotation roundoff.
    q, r = np.linalg.qr(vectors)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return _sorted_spectrum(values, q)


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product of two single-qubit operators."""
    a = as_hermitian(a, 2, "A")
    b = as_hermitian(b, 2, "B")
    return np.kron(a, b)


def partial_trace(m, subsystem: str) -> np.ndarray:
    """Trace out ``subsystem`` (``"A"`` or ``"B"``) of a two-qubit operator."""
    m = as_hermitian(m, 4)
    t = m.reshape(2, 2, 2, 2)
    if subsystem == "A":
        out = np.einsum("ijik->jk", t)
    elif subsystem == "B":
        out = np.einsum("ijkj->ik", t)
    else:
        raise ValidationError(f"subsystem must be 'A' or 'B', got {subsystem!r}", "subsystem")
    return 0.5 * (out + out.conj().T)


def is_positive_semidefinite(h, tol: float = 1e-12) -> bool:
    """True iff the smallest eigenvalue of ``h`` is at least ``-tol``."""
    return bool(eig_hermitian(h).values[-1] >= -tol)


def is_unitary(u, tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)


def apply_local_basis_change(u, psi) -> np.ndarray:
    """Apply the same single-qubit unitary to both halves of a two-qubit state.

    Returns ``(U ⊗ U) psi``. A symmetric state (``|01>`` and ``|10>``
    amplitudes equal) stays symmetric.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2) or not np.all(np.isfinite(u)):
        raise ValidationError("expected a finite 2x2 matrix", "U")
    if not is_unitary(u):
        raise ValidationError("matrix is not unitary", "U")
    psi = as_state_vector(psi, 4, "psi")
    return np.kron(u, u) @ psi
