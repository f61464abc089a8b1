"""Matrix representations, character tables, orthogonality, unitarization.

The sign representations send the generators of each tensor factor to
(+/-) Pauli matrices; restricted to a closed blade basis they provide the
2^m-dimensional verification layer.  Character tables are computed exactly
(Gaussian-rational phases) for commutative tables whose irreps are all
one-dimensional, which is the only case the projector construction needs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .scalars import GaussianRational, I, MINUS_I, MINUS_ONE, ONE
from .structure import SubalgebraTable, center_basis, irrep_profile

UNITARY_TOL = 1e-8
HOMOMORPHISM_TOL = 1e-9
TRACE_TOL = 1e-9
SIGN_REP_MAX_FACTORS = 4

SIGMA = {
    1: np.array([[0, 1], [1, 0]], dtype=complex),
    2: np.array([[0, -1j], [1j, 0]], dtype=complex),
    3: np.array([[1, 0], [0, -1]], dtype=complex),
}

#: The same Pauli matrices with exact Gaussian-rational entries.
EXACT_SIGMA = {
    1: ((GaussianRational(0), ONE), (ONE, GaussianRational(0))),
    2: ((GaussianRational(0), MINUS_I), (I, GaussianRational(0))),
    3: ((ONE, GaussianRational(0)), (GaussianRational(0), MINUS_ONE)),
}

PHASES = (ONE, I, MINUS_ONE, MINUS_I)


@dataclass(frozen=True)
class SignRep:
    """One sign per tensor factor: generators of factor f map to signs[f]*sigma."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @property
    def num_factors(self) -> int:
        return len(self.signs)

    def label(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)


def all_sign_reps(m: int) -> list[SignRep]:
    return [SignRep(signs) for signs in itertools.product((1, -1), repeat=m)]


def factor_image(mask: int, sign: int) -> np.ndarray:
    """Numeric image of one factor monomial under g_k -> sign * sigma_k."""
    image = np.eye(2, dtype=complex)
    for k in (1, 2, 3):
        if mask & (1 << (k - 1)):
            image = image @ (sign * SIGMA[k])
    return image


@dataclass(eq=False)
class MatrixRep:
    """Basis-indexed matrix images over a SubalgebraTable."""

    table: SubalgebraTable
    images: tuple[np.ndarray, ...]
    label: str = ""

    @property
    def dim(self) -> int:
        return self.images[0].shape[0]


def sign_rep_matrices(sign_rep: SignRep, table: SubalgebraTable) -> MatrixRep:
    """Blade images under the given sign representation, dimension 2^m."""
    if not table.is_blade_backed:
        raise ValueError("sign representations need a blade-backed table")
    m = table.num_factors
    if m != sign_rep.num_factors:
        raise ValueError("sign count does not match the table's factor count")
    if m > SIGN_REP_MAX_FACTORS:
        raise ValueError(f"matrix-size cap: m <= {SIGN_REP_MAX_FACTORS}")
    images = []
    for blade in table.blades:
        image = np.ones((1, 1), dtype=complex)
        for f, mask in enumerate(blade):
            image = np.kron(image, factor_image(mask, sign_rep.signs[f]))
        images.append(image)
    return MatrixRep(table, tuple(images), label=sign_rep.label())


def rep_from_characters(ct: "CharacterTable", row: int) -> MatrixRep:
    """A character row as a one-dimensional matrix representation."""
    images = tuple(
        np.array([[complex(value)]], dtype=complex) for value in ct.rows[row]
    )
    return MatrixRep(ct.table, images, label=f"chi{row + 1}")


def homomorphism_residual(rep: MatrixRep, sample_pairs=None) -> float:
    """Max deviation of images(x) images(y) from phase(x,y) images(z)."""
    d = rep.table.dimension
    pairs = sample_pairs
    if pairs is None:
        pairs = [(x, y) for x in range(d) for y in range(d)]
    worst = 0.0
    for x, y in pairs:
        entry = rep.table.product(x, y)
        product = rep.images[x] @ rep.images[y]
        if entry is None:
            expected = np.zeros_like(product)
        else:
            phase, z = entry
            expected = complex(phase) * rep.images[z]
        worst = max(worst, linalg.max_norm(product - expected))
    return worst


def is_unitary_rep(rep: MatrixRep, tol: float = UNITARY_TOL) -> bool:
    eye = np.eye(rep.dim)
    return all(
        linalg.max_norm(image @ image.conj().T - eye) <= tol for image in rep.images
    )


def distinguish_reps(reps: Sequence[MatrixRep]) -> dict[tuple[int, int], str]:
    """Pairwise verdicts: "nonequivalent" when a central basis element has
    different traces (beyond tolerance), "undetermined" otherwise."""
    if len({rep.dim for rep in reps}) > 1:
        raise ValueError("representations differ in dimension")
    central = center_basis(reps[0].table)
    verdicts = {}
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            split = any(
                abs(np.trace(a.images[z]) - np.trace(b.images[z])) > TRACE_TOL
                for z in central
            )
            verdicts[(i, j)] = "nonequivalent" if split else "undetermined"
    return verdicts


def verify_grand_orthogonality(rep_a: MatrixRep, rep_b: MatrixRep) -> float:
    """Max residual of sum_y conj(A_ij(a_y)) B_kl(a_y) against the
    orthogonality target (d/d_a) delta_AB delta_ik delta_jl.

    Refuses tables where left multiplication by some basis element does not
    permute the basis with unit phases (the rearrangement the sum relies on).
    """
    from .structure import check_coefficient_condition

    for rep in (rep_a, rep_b):
        if not is_unitary_rep(rep):
            raise ValueError("orthogonality sweep needs unitary representations")
    if rep_a.table is not rep_b.table and rep_a.table.dimension != rep_b.table.dimension:
        raise ValueError("representations live over different tables")
    if not check_coefficient_condition(rep_a.table):
        raise ValueError(
            "basis products do not permute the basis with unit phases"
        )
    d = rep_a.table.dimension
    same = rep_a is rep_b or (
        rep_a.dim == rep_b.dim
        and all(
            linalg.max_norm(x - y) <= 1e-12
            for x, y in zip(rep_a.images, rep_b.images)
        )
    )
    stacked_a = np.stack(rep_a.images)  # (d, da, da)
    stacked_b = np.stack(rep_b.images)
    sums = np.einsum("yij,ykl->ijkl", stacked_a.conj(), stacked_b)
    expected = np.zeros_like(sums)
    if same:
        ratio = d / rep_a.dim
        for i in range(rep_a.dim):
            for j in range(rep_a.dim):
                expected[i, j, i, j] = ratio
    return linalg.max_norm(sums - expected)


@dataclass(eq=False)
class CharacterTable:
    """Exact character rows over a table's basis (column order = basis order)."""

    table: SubalgebraTable
    rows: tuple[tuple[GaussianRational, ...], ...]

    @property
    def count(self) -> int:
        return len(self.rows)


def _phase_sort_key(value: GaussianRational) -> int:
    # +1 must sort before -1; i and -i slot between, ranked by power of i
    for power, phase in enumerate((ONE, I, MINUS_ONE, MINUS_I)):
        if value == phase:
            return power
    raise ValueError(f"character value {value} is not a fourth root of unity")


def _generating_indices(table: SubalgebraTable) -> list[int]:
    span = {0}
    gens: list[int] = []

    def close(seed: set[int]) -> set[int]:
        out = set(seed)
        frontier = list(seed)
        while frontier:
            x = frontier.pop()
            for y in list(out):
                for a, b in ((x, y), (y, x)):
                    entry = table.product(a, b)
                    if entry is not None and entry[1] not in out:
                        out.add(entry[1])
                        frontier.append(entry[1])
        return out

    for idx in range(1, table.dimension):
        if idx not in span:
            gens.append(idx)
            span = close(span | {idx})
    return gens


def character_table_abelian(table: SubalgebraTable) -> CharacterTable:
    """All multiplicative phase assignments on a commutative table.

    Preconditions: the table is commutative, every basis element squares to
    a unit phase times the identity, and the irrep profile is all ones.
    Rows come out sorted with the all-positive row first, then
    lexicographically with +1 before -1 (then i, -1, -i).
    """
    d = table.dimension
    if len(center_basis(table)) != d:
        raise ValueError("character solver needs a commutative table")
    for x in range(d):
        entry = table.product(x, x)
        if entry is None or entry[1] != 0 or not entry[0].is_unit_modulus():
            raise ValueError("basis element does not square to unit phase * identity")
    profile = irrep_profile(table)
    if any(n != 1 for n in profile.dims) or profile.ambiguous:
        raise ValueError("character solver needs all one-dimensional irreps")

    gens = _generating_indices(table)
    rows: set[tuple[GaussianRational, ...]] = set()
    for assignment in itertools.product(PHASES, repeat=len(gens)):
        values: dict[int, GaussianRational] = {0: ONE}
        for gen, value in zip(gens, assignment):
            values[gen] = value
        consistent = True
        changed = True
        while changed and consistent:
            changed = False
            for x in list(values):
                for y in list(values):
                    entry = table.product(x, y)
                    if entry is None:
                        raise ValueError("zero product in a character-table basis")
                    phase, z = entry
                    implied = values[x] * values[y] / phase
                    if z in values:
                        if values[z] != implied:
                            consistent = False
                            break
                    else:
                        values[z] = implied
                        changed = True
                if not consistent:
                    break
        if consistent and len(values) == d:
            rows.add(tuple(values[i] for i in range(d)))

    if len(rows) != d:
        raise ValueError(
            f"character enumeration found {len(rows)} rows for dimension {d}"
        )
    ordered = sorted(rows, key=lambda row: tuple(_phase_sort_key(v) for v in row))
    return CharacterTable(table, tuple(ordered))


def character_orthogonality_exact(ct: CharacterTable) -> bool:
    """Exact row orthogonality: sum_y conj(chi_a) chi_b = d * delta_ab."""
    d = ct.table.dimension
    for a, row_a in enumerate(ct.rows):
        for b, row_b in enumerate(ct.rows):
            total = GaussianRational(0)
            for va, vb in zip(row_a, row_b):
                total = total + va.conjugate() * vb
            if total != (GaussianRational(d) if a == b else GaussianRational(0)):
                return False
    return True


@dataclass(eq=False)
class UnitarizationResult:
    overlap: np.ndarray  # F = sum_y D(a_y) D(a_y)^dagger
    transform: np.ndarray  # Lambda^{-1/2} U
    unitary_images: tuple[np.ndarray, ...]
    label: str = ""


def unitarize(rep: MatrixRep) -> UnitarizationResult:
    """Conjugate the representation into unitary images.

    Builds F = sum_y D(a_y) D(a_y)^dagger, diagonalizes it, and applies
    Lambda^{-1/2} U on the left (inverse on the right).  Requires the
    coefficient condition on the table and a nonsingular F.
    """
    from .structure import check_coefficient_condition

    if not check_coefficient_condition(rep.table):
        raise ValueError("table fails the coefficient condition")
    overlap = np.zeros((rep.dim, rep.dim), dtype=complex)
    for image in rep.images:
        overlap = overlap + image @ image.conj().T
    eigenvalues, u = linalg.hermitian_eig(overlap)
    inv_sqrt = linalg.inv_sqrt_diag(eigenvalues, u)
    transform = inv_sqrt @ u
    sqrt_diag = np.diag([value ** 0.5 for value in eigenvalues]).astype(complex)
    transform_inv = u.conj().T @ sqrt_diag
    images = tuple(transform @ image @ transform_inv for image in rep.images)
    return UnitarizationResult(overlap, transform, images, label=rep.label)


def conjugate_rep(rep: MatrixRep, s: np.ndarray, label: str = "") -> MatrixRep:
    """Similarity transform S D S^{-1} of every image (S need not be unitary)."""
    s = linalg.as_complex_matrix(s)
    s_inv = np.linalg.inv(s)
    images = tuple(s @ image @ s_inv for image in rep.images)
    return MatrixRep(rep.table, images, label=label or f"{rep.label}~conj")


def regular_representation(table: SubalgebraTable) -> tuple[np.ndarray, ...]:
    """Left-multiplication matrices L(a_y) on the basis space (complex)."""
    d = table.dimension
    mats = []
    for y in range(d):
        mat = np.zeros((d, d), dtype=complex)
        for w in range(d):
            entry = table.product(y, w)
            if entry is not None:
                phase, z = entry
                mat[z, w] = complex(phase)
        mats.append(mat)
    return tuple(mats)


def matrix_element_projector(rep: MatrixRep, lam: int, k: int) -> np.ndarray:
    """(d_j/d) sum_y conj(D_{lam,k}(a_y)) L(a_y) on the regular space.

    The representation must be unitary; lam and k index rows/columns of its
    matrix elements (0-based).
    """
    if not is_unitary_rep(rep):
        raise ValueError("matrix-element projectors need a unitary representation")
    if not (0 <= lam < rep.dim and 0 <= k < rep.dim):
        raise IndexError("matrix-element index out of range")
    d = rep.table.dimension
    regular = regular_representation(rep.table)
    acc = np.zeros((d, d), dtype=complex)
    for y in range(d):
        acc = acc + np.conj(rep.images[y][lam, k]) * regular[y]
    return (rep.dim / d) * acc
