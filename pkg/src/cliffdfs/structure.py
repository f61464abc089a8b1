"""Subalgebra tables, structure constants, and the semisimplicity toolkit.

A SubalgebraTable is a multiplicatively closed basis: the product of any two
basis elements is phase * (another basis element), or exactly zero.  Tables
are usually backed by blades of Cl3^{tensor m} and compute their structure
constants on demand; small hand-built tables (the dual-number fixture, the
idempotent counterexample) carry string labels and an explicit product dict.

Everything here is a pure function over immutable tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import Blade, Multivector, blade_product, unit_blade
from .linalg import ExactMatrix, exact_determinant
from .parsing import render_blade
from .scalars import GaussianRational

DEFAULT_BASIS_CAP = 4096

ConstsEntry = Optional[tuple[GaussianRational, int]]


class CapExceededError(ValueError):
    pass


class NotSemisimpleError(ValueError):
    pass


class SubalgebraTable:
    """Closed basis plus structure constants; indices are 0-based, entry 0
    is always the identity."""

    def __init__(self, *, blades=None, labels=None, consts=None, num_factors=None):
        if blades is not None:
            self.blades: Optional[tuple[Blade, ...]] = tuple(blades)
            if num_factors is None:
                num_factors = len(self.blades[0])
            if any(len(b) != num_factors for b in self.blades):
                raise ValueError("blades disagree on factor count")
            if self.blades[0] != unit_blade(num_factors):
                raise ValueError("entry 0 must be the identity blade")
            if len(set(self.blades)) != len(self.blades):
                raise ValueError("duplicate basis blades")
            self.num_factors = num_factors
            self._index = {b: i for i, b in enumerate(self.blades)}
            self._consts = None
            self._labels = tuple(render_blade(b) for b in self.blades)
        else:
            if labels is None or consts is None:
                raise ValueError("abstract tables need labels and consts")
            self.blades = None
            self.num_factors = None
            self._labels = tuple(labels)
            self._consts = {}
            for (x, y), entry in consts.items():
                if entry is not None:
                    phase, z = entry
                    entry = (GaussianRational.of(phase), z)
                self._consts[(x, y)] = entry
            d = len(self._labels)
            for x in range(d):
                if self._consts.get((0, x)) != (GaussianRational(1), x):
                    raise ValueError("entry 0 must act as the identity")

    @property
    def dimension(self) -> int:
        return len(self._labels)

    def __len__(self) -> int:
        return len(self._labels)

    @property
    def is_blade_backed(self) -> bool:
        return self.blades is not None

    def labels(self) -> tuple[str, ...]:
        return self._labels

    def blade(self, index: int) -> Blade:
        if self.blades is None:
            raise ValueError("abstract table has no blades")
        return self.blades[index]

    def product(self, x: int, y: int) -> ConstsEntry:
        """Structure constant: a_x a_y = phase * a_z, or None when zero."""
        if self.blades is not None:
            sign, blade = blade_product(self.blades[x], self.blades[y])
            z = self._index.get(blade)
            if z is None:
                raise ValueError("basis is not multiplicatively closed")
            return GaussianRational(sign), z
        return self._consts.get((x, y))

    def element(self, index: int) -> Multivector:
        if self.blades is None:
            raise ValueError("abstract table has no multivector elements")
        return Multivector.from_blade(self.blades[index])

    def consts_items(self):
        d = self.dimension
        for x in range(d):
            for y in range(d):
                yield (x, y), self.product(x, y)


def close_generators(
    generators: Sequence[Multivector], m: int, cap: int = DEFAULT_BASIS_CAP
) -> SubalgebraTable:
    """Smallest monomially closed blade basis containing the generators.

    Each generator must be a single blade with unit-modulus coefficient (the
    phase is folded into the structure constants, not the basis).  Basis
    order: identity, then the generators, then breadth-first products.
    """
    basis: list[Blade] = [unit_blade(m)]
    seen = {basis[0]}
    for gen in generators:
        coeff, blade = gen.single_blade()
        if not coeff.is_unit_modulus():
            raise ValueError("generator coefficient must have unit modulus")
        if len(blade) != m:
            raise ValueError("generator factor count does not match m")
        if blade not in seen:
            seen.add(blade)
            basis.append(blade)

    grew = True
    while grew:
        grew = False
        snapshot = list(basis)
        for x in snapshot:
            for y in snapshot:
                _, z = blade_product(x, y)
                if z not in seen:
                    if len(basis) >= cap:
                        raise CapExceededError(
                            f"closure exceeded the basis cap of {cap}"
                        )
                    seen.add(z)
                    basis.append(z)
                    grew = True
    return SubalgebraTable(blades=basis, num_factors=m)


def full_clifford_table(m: int) -> SubalgebraTable:
    """All 8^m blades, ordered lexicographically on factor masks."""
    if not 1 <= m <= 6:
        raise ValueError("full table supports 1 <= m <= 6")
    masks = range(8)
    basis = [()]
    for _ in range(m):
        basis = [prefix + (mask,) for prefix in basis for mask in masks]
    return SubalgebraTable(blades=basis, num_factors=m)


def dual_numbers_table() -> SubalgebraTable:
    """The {1, n | n^2 = 0} counterexample table (not semisimple)."""
    one = GaussianRational(1)
    return SubalgebraTable(
        labels=("1", "n"),
        consts={
            (0, 0): (one, 0),
            (0, 1): (one, 1),
            (1, 0): (one, 1),
            (1, 1): None,
        },
    )


def trivial_table(m: int = 1) -> SubalgebraTable:
    return SubalgebraTable(blades=[unit_blade(m)], num_factors=m)


def _regular_trace(table: SubalgebraTable, z: int) -> GaussianRational:
    """Tr of left multiplication by basis element z on the basis space."""
    acc = GaussianRational(0)
    for w in range(table.dimension):
        entry = table.product(z, w)
        if entry is not None and entry[1] == w:
            acc = acc + entry[0]
    return acc


def gram_matrix(table: SubalgebraTable) -> ExactMatrix:
    """Trace form D_ij = Tr[L(a_i) L(a_j)] of the left regular representation.

    Computed through the structure constants: L(a_i)L(a_j) = L(a_i a_j), so
    each entry is phase(i,j) * Tr L(a_z), and no d x d matrices are built.
    """
    d = table.dimension
    traces = [_regular_trace(table, z) for z in range(d)]
    zero = GaussianRational(0)
    entries = []
    for i in range(d):
        row = []
        for j in range(d):
            entry = table.product(i, j)
            if entry is None:
                row.append(zero)
            else:
                phase, z = entry
                row.append(phase * traces[z])
        entries.append(row)
    return ExactMatrix(entries)


@dataclass(frozen=True)
class SemisimpleVerdict:
    semisimple: bool
    determinant: GaussianRational


def is_semisimple(table: SubalgebraTable) -> SemisimpleVerdict:
    """Trace-form criterion: semisimple iff det of the Gram matrix != 0."""
    det = exact_determinant(gram_matrix(table))
    return SemisimpleVerdict(not det.is_zero(), det)


def center_basis(table: SubalgebraTable) -> list[int]:
    """Indices of basis elements commuting (with phases) with every element."""
    d = table.dimension
    central = []
    for x in range(d):
        if all(table.product(x, y) == table.product(y, x) for y in range(d)):
            central.append(x)
    return central


def _dimension_solutions(d: int, k: int) -> list[tuple[int, ...]]:
    """All ascending multisets (n_1..n_k) with sum of squares d."""
    out: list[tuple[int, ...]] = []

    def recurse(remaining: int, parts: int, minimum: int, prefix: tuple[int, ...]):
        if parts == 0:
            if remaining == 0:
                out.append(prefix)
            return
        top = math.isqrt(remaining // parts)
        for n in range(minimum, top + 1):
            recurse(remaining - n * n, parts - 1, n, prefix + (n,))

    recurse(d, k, 1, ())
    return out


@dataclass(frozen=True)
class IrrepProfile:
    count_k: int
    dims: tuple[int, ...]
    ambiguous: bool
    solutions: tuple[tuple[int, ...], ...]


def irrep_profile(table: SubalgebraTable) -> IrrepProfile:
    """Irrep count from the central basis, dimensions from sum of squares.

    Multiple dimension solutions are all reported with the ambiguous flag
    set; the first (lexicographically smallest) one fills ``dims``.
    """
    verdict = is_semisimple(table)
    if not verdict.semisimple:
        raise NotSemisimpleError("irrep profile of a non-semisimple table")
    k = len(center_basis(table))
    solutions = _dimension_solutions(table.dimension, k)
    if not solutions:
        raise ValueError("no dimension vector satisfies the sum-of-squares equation")
    return IrrepProfile(k, solutions[0], len(solutions) > 1, tuple(solutions))


def check_coefficient_condition(table: SubalgebraTable) -> bool:
    """Row-orthogonality of the structure constants.

    For monomial tables the summed condition collapses to: for every x, the
    products a_x a_y hit each basis element exactly once, with a unit phase.
    Zero products or repeated targets fail the condition.
    """
    d = table.dimension
    for x in range(d):
        targets = set()
        for y in range(d):
            entry = table.product(x, y)
            if entry is None:
                return False
            phase, z = entry
            if not phase.is_unit_modulus() or z in targets:
                return False
            targets.add(z)
    return True


def tensor_tables(
    a: SubalgebraTable, b: SubalgebraTable, cap: int = DEFAULT_BASIS_CAP
) -> SubalgebraTable:
    """Tensor product table: pairwise basis in dictionary order.

    Two blade-backed tables give a blade-backed table over the concatenated
    factors; otherwise the product is an abstract table with multiplied
    structure constants.
    """
    if a.dimension * b.dimension > cap:
        raise CapExceededError(f"tensor basis exceeds the cap of {cap}")
    if a.is_blade_backed and b.is_blade_backed:
        blades = [xa + xb for xa in a.blades for xb in b.blades]
        return SubalgebraTable(blades=blades, num_factors=a.num_factors + b.num_factors)

    labels = [f"({la})x({lb})" for la in a.labels() for lb in b.labels()]
    db = b.dimension
    consts = {}
    for (xa, ya), ea in a.consts_items():
        for (xb, yb), eb in b.consts_items():
            key = (xa * db + xb, ya * db + yb)
            if ea is None or eb is None:
                consts[key] = None
            else:
                consts[key] = (ea[0] * eb[0], ea[1] * db + eb[1])
    return SubalgebraTable(labels=labels, consts=consts)
