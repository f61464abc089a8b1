"""Dense matrix support: exact determinants and a Hermitian eigensolver.

Two layers live here.  ExactMatrix holds GaussianRational entries and gets a
fraction-free (Bareiss) determinant, used by the semisimplicity test.
Complex float matrices are plain numpy arrays; the eigensolver is a cyclic
Jacobi iteration, which is all the unitarization construction needs at the
desk scales this package targets (<= 64 x 64).
"""

from __future__ import annotations

import math

import numpy as np

from .scalars import GaussianRational

#: Off-diagonal threshold (relative to the input scale) for Jacobi sweeps.
JACOBI_OFF_THRESHOLD = 1e-12
JACOBI_SWEEP_CAP = 100
HERMITICITY_TOL = 1e-10
EIGENVALUE_FLOOR = 1e-12


class ExactMatrix:
    """Rectangular matrix of GaussianRationals (row-major)."""

    def __init__(self, entries):
        rows = [list(map(GaussianRational.of, row)) for row in entries]
        if not rows:
            raise ValueError("matrix needs at least one row")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("ragged rows")
        self.entries = rows
        self.rows = len(rows)
        self.cols = width

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )


def _monomial_determinant(matrix: ExactMatrix):
    """Determinant when every row has at most one nonzero entry, else None.

    Gram matrices of blade tables are diagonal, and Bareiss intermediate
    products blow up on them for no benefit; this shortcut keeps the
    semisimplicity batteries at desk speed.
    """
    n = matrix.rows
    columns = []
    product = GaussianRational(1)
    for row in matrix.entries:
        nonzero = [j for j, value in enumerate(row) if not value.is_zero()]
        if len(nonzero) > 1:
            return None
        if not nonzero:
            return GaussianRational(0)
        columns.append(nonzero[0])
        product = product * row[nonzero[0]]
    if len(set(columns)) != n:
        return GaussianRational(0)
    inversions = sum(
        1 for a in range(n) for b in range(a + 1, n) if columns[a] > columns[b]
    )
    return -product if inversions % 2 else product


def exact_determinant(matrix: ExactMatrix) -> GaussianRational:
    """Determinant by fraction-free (Bareiss) elimination, exactly.

    Pivoting takes the first nonzero entry in the column; exact arithmetic
    needs no stability pivoting.  Generalized permutation matrices short-cut
    to a signed product of their entries.
    """
    if not matrix.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = matrix.rows
    shortcut = _monomial_determinant(matrix)
    if shortcut is not None:
        return shortcut
    work = [row[:] for row in matrix.entries]
    sign = 1
    prev = GaussianRational(1)
    for k in range(n - 1):
        if work[k][k].is_zero():
            for r in range(k + 1, n):
                if not work[r][k].is_zero():
                    work[k], work[r] = work[r], work[k]
                    sign = -sign
                    break
            else:
                return GaussianRational(0)
        pivot = work[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i][j] = (pivot * work[i][j] - work[i][k] * work[k][j]) / prev
            work[i][k] = GaussianRational(0)
        prev = pivot
    result = work[n - 1][n - 1]
    return -result if sign < 0 else result


# -- complex float matrices ------------------------------------------------


def as_complex_matrix(entries) -> np.ndarray:
    matrix = np.asarray(entries, dtype=complex)
    if matrix.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("matrix has non-finite entries")
    return matrix


def matmul(a, b) -> np.ndarray:
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch: {a.shape} @ {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_complex_matrix(a).conj().T


def add(a, b) -> np.ndarray:
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} + {b.shape}")
    return a + b


def scale(a, scalar) -> np.ndarray:
    return as_complex_matrix(a) * complex(scalar)


def max_norm(a) -> float:
    a = np.asarray(a)
    return 0.0 if a.size == 0 else float(np.max(np.abs(a)))


def hermitian_eig(matrix) -> tuple[list[float], np.ndarray]:
    """Diagonalize a Hermitian matrix by cyclic Jacobi rotations.

    Returns (eigenvalues descending, U) with U H U^dagger ~ diag(eigenvalues)
    and U unitary.  Raises on non-Hermitian input or non-convergence.
    """
    h = as_complex_matrix(matrix)
    n = h.shape[0]
    if h.shape[0] != h.shape[1]:
        raise ValueError("eigensolver needs a square matrix")
    if max_norm(h - h.conj().T) > HERMITICITY_TOL:
        raise ValueError("matrix is not Hermitian within tolerance")
    h = (h + h.conj().T) / 2.0
    scale_ref = max(1.0, max_norm(h))
    v = np.eye(n, dtype=complex)  # accumulates V with V^dagger H V -> diag

    for _ in range(JACOBI_SWEEP_CAP):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off = max(off, abs(h[p, q]))
        if off <= JACOBI_OFF_THRESHOLD * scale_ref:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = h[p, q]
                r = abs(apq)
                if r <= JACOBI_OFF_THRESHOLD * scale_ref:
                    continue
                phase = apq / r
                tau = (h[q, q].real - h[p, p].real) / (2.0 * r)
                t = -math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                rot = np.eye(n, dtype=complex)
                rot[p, p] = c
                rot[p, q] = -s * phase
                rot[q, p] = s * np.conj(phase)
                rot[q, q] = c
                h = rot.conj().T @ h @ rot
                v = v @ rot
    else:
        raise RuntimeError("Jacobi iteration did not converge within sweep cap")

    eigenvalues = [h[i, i].real for i in range(n)]
    order = sorted(range(n), key=lambda i: -eigenvalues[i])
    eigenvalues = [eigenvalues[i] for i in order]
    u = v.conj().T[order, :]
    return eigenvalues, u


def inv_sqrt_diag(eigenvalues, u) -> np.ndarray:
    """Lambda^{-1/2}: the positive inverse square root in the rotated basis.

    Requires every eigenvalue to sit above the positivity floor; a singular
    input means the representation cannot be unitarized this way.
    """
    values = list(eigenvalues)
    u = as_complex_matrix(u)
    if len(values) != u.shape[0]:
        raise ValueError("eigenvalue count does not match the rotation size")
    if any(value <= EIGENVALUE_FLOOR for value in values):
        raise ValueError("eigenvalue at or below the positivity floor")
    return np.diag([1.0 / math.sqrt(value) for value in values]).astype(complex)
