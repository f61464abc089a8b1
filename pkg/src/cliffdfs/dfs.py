"""Noise operators, character projectors, and decoherence-free verdicts.

States live in the left ideal generated by the product idempotent; noise
operators are elements of a closed commutative subalgebra with concrete or
symbolic coefficients.  Projection and the per-basis eigen checks run in
exact arithmetic.  Each projected component also gets an exact column image
in the all-plus spin representation: a component can be nonzero as a raw
ideal element yet vanish in that physical block (``zero`` vs ``ideal_zero``
in the report), because the 2^m-dimensional block identifies e.g. g2*eps
with i*g1*eps while the raw ideal keeps them independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .algebra import Multivector, into_ideal, is_ideal_element
from .reptheory import (
    EXACT_SIGMA,
    CharacterTable,
    SignRep,
    character_table_abelian,
    sign_rep_matrices,
)
from .scalars import GaussianRational, I, MINUS_I, MINUS_ONE, ONE, format_scalar
from .structure import SubalgebraTable

CoeffSlot = Union[GaussianRational, str]

ORACLE_TOL = 1e-9


class EigenCheckError(RuntimeError):
    """An exact per-basis eigen relation failed; this flags a real bug."""


@dataclass(frozen=True)
class NoiseOperator:
    """Coefficient slots aligned to a table's basis; symbols stay formal."""

    table: SubalgebraTable
    coeffs: tuple[CoeffSlot, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.table.dimension:
            raise ValueError(
                f"need {self.table.dimension} coefficient slots,"
                f" got {len(self.coeffs)}"
            )

    @property
    def is_concrete(self) -> bool:
        return all(isinstance(slot, GaussianRational) for slot in self.coeffs)

    def element(self) -> Multivector:
        """The noise operator as an exact multivector (concrete slots only)."""
        if not self.is_concrete:
            raise ValueError("symbolic coefficients have no multivector form")
        acc = Multivector.zero(self.table.num_factors)
        for slot, idx in zip(self.coeffs, range(self.table.dimension)):
            acc = acc + self.table.element(idx).scale(slot)
        return acc


def default_symbols(d: int) -> tuple[str, ...]:
    return tuple(f"k{y + 1}" for y in range(d))


@dataclass(frozen=True)
class EigenvalueSum:
    """Formal sum over coefficient slots, weighted by character phases."""

    terms: tuple[tuple[CoeffSlot, GaussianRational], ...]

    def is_concrete(self) -> bool:
        return all(isinstance(slot, GaussianRational) for slot, _ in self.terms)

    def evaluate(self) -> GaussianRational:
        if not self.is_concrete():
            raise ValueError("cannot evaluate a symbolic sum")
        acc = GaussianRational(0)
        for slot, phase in self.terms:
            acc = acc + slot * phase
        return acc

    def render(self) -> str:
        if self.is_concrete():
            return format_scalar(self.evaluate())
        parts = []
        for slot, phase in self.terms:
            name = slot if isinstance(slot, str) else f"({format_scalar(slot)})"
            if phase == ONE:
                sign, prefix = "+", ""
            elif phase == MINUS_ONE:
                sign, prefix = "-", ""
            elif phase == I:
                sign, prefix = "+", "i "
            elif phase == MINUS_I:
                sign, prefix = "-", "i "
            else:
                sign, prefix = "+", f"({format_scalar(phase)}) "
            parts.append((sign, prefix + name))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


@dataclass(frozen=True)
class CharacterProjector:
    label: int  # 1-based irrep row
    element: Multivector


def build_projectors(ct: CharacterTable) -> list[CharacterProjector]:
    """P_j = (1/d) sum_y conj(chi_j(a_y)) a_y, one per character row.

    All one-dimensional, so the weight is 1/d.  The projector algebra
    (idempotence, mutual orthogonality, resolution of identity) is verified
    exactly during construction.
    """
    table = ct.table
    if not table.is_blade_backed:
        raise ValueError("projectors need a blade-backed table")
    d = table.dimension
    if ct.count != d:
        raise ValueError("character table does not match the basis size")
    weight = GaussianRational(1) / GaussianRational(d)
    projectors = []
    for j, row in enumerate(ct.rows):
        acc = Multivector.zero(table.num_factors)
        for y in range(d):
            acc = acc + table.element(y).scale(row[y].conjugate() * weight)
        projectors.append(CharacterProjector(j + 1, acc))

    total = Multivector.zero(table.num_factors)
    for p in projectors:
        if p.element * p.element != p.element:
            raise EigenCheckError(f"projector {p.label} is not idempotent")
        total = total + p.element
    if total != Multivector.unit(table.num_factors):
        raise EigenCheckError("projectors do not resolve the identity")
    for a in projectors:
        for b in projectors:
            if a.label != b.label and not (a.element * b.element).is_zero():
                raise EigenCheckError(
                    f"projectors {a.label} and {b.label} are not orthogonal"
                )
    return projectors


def project_state(projector: CharacterProjector, state: Multivector) -> Multivector:
    if projector.element.num_factors != state.num_factors:
        raise ValueError("projector and state disagree on factor count")
    return projector.element * state


def eigen_check(
    ct: CharacterTable,
    j: int,
    component: Multivector,
    coeffs: Optional[Sequence[CoeffSlot]] = None,
) -> EigenvalueSum:
    """Verify a_y * psi = chi_j(a_y) * psi exactly for every basis element.

    On success returns the noise eigenvalue as the formal sum over the
    coefficient slots (default symbols k1..kd); per-basis success implies
    the eigen relation for every noise operator over this table.
    """
    table = ct.table
    if component.is_zero():
        raise ValueError("eigen check needs a nonzero component")
    row = ct.rows[j - 1]
    for y in range(table.dimension):
        lhs = table.element(y) * component
        rhs = component.scale(row[y])
        if lhs != rhs:
            raise EigenCheckError(
                f"basis element {y} does not act as chi_{j} on the component"
            )
    slots = tuple(coeffs) if coeffs is not None else default_symbols(table.dimension)
    return EigenvalueSum(tuple(zip(slots, row)))


# -- exact column images in a sign representation ---------------------------


def _factor_column(mask: int, sign: int) -> list[GaussianRational]:
    """Exact first column of the factor image acting on (1, 0)."""
    col = [ONE, GaussianRational(0)]
    for k in (3, 2, 1):  # rightmost generator acts first
        if mask & (1 << (k - 1)):
            sig = EXACT_SIGMA[k]
            new = [
                sig[0][0] * col[0] + sig[0][1] * col[1],
                sig[1][0] * col[0] + sig[1][1] * col[1],
            ]
            if sign < 0:
                new = [-new[0], -new[1]]
            col = new
    return col


def exact_state_column(
    state: Multivector, sign_rep: Optional[SignRep] = None
) -> tuple[GaussianRational, ...]:
    """Exact 2^m column of the state in the given sign representation.

    The column is the image of the state matrix applied to the reference
    basis vector |0...0>; for ideal elements it determines the whole image.
    """
    m = state.num_factors
    signs = sign_rep.signs if sign_rep is not None else (1,) * m
    if len(signs) != m:
        raise ValueError("sign count does not match the state's factor count")
    total = [GaussianRational(0)] * (2 ** m)
    for blade, coeff in state.terms.items():
        vec = [coeff]
        for f, mask in enumerate(blade):
            factor = _factor_column(mask, signs[f])
            vec = [v * f_entry for v in vec for f_entry in factor]
        total = [t + v for t, v in zip(total, vec)]
    return tuple(total)


def column_is_zero(column: Sequence[GaussianRational]) -> bool:
    return all(entry.is_zero() for entry in column)


def column_ratio(
    numerator: Sequence[GaussianRational], denominator: Sequence[GaussianRational]
) -> Optional[GaussianRational]:
    """Exact ratio num = ratio * den when proportional, else None."""
    ratio = None
    for a, b in zip(numerator, denominator):
        if b.is_zero():
            if not a.is_zero():
                return None
            continue
        candidate = a / b
        if ratio is None:
            ratio = candidate
        elif ratio != candidate:
            return None
    return ratio


# -- the full pipeline -------------------------------------------------------


@dataclass(frozen=True)
class DfsComponent:
    label: int
    component: Multivector
    ideal_zero: bool
    zero: bool  # exact column image vanishes in the all-plus block
    eigenvalue: Optional[EigenvalueSum]
    evaluated: Optional[GaussianRational]


@dataclass(eq=False)
class DfsReport:
    table: SubalgebraTable
    character_table: CharacterTable
    projectors: list[CharacterProjector]
    state: Multivector
    components: tuple[DfsComponent, ...]

    def nonzero_components(self) -> list[DfsComponent]:
        return [entry for entry in self.components if not entry.zero]


def dfs_analyze(
    table: SubalgebraTable,
    state: Multivector,
    coeffs: Optional[Sequence[CoeffSlot]] = None,
) -> DfsReport:
    """Closure -> characters -> projectors -> projection -> eigen checks.

    The input state is absorbed into the ideal if it is not already there.
    Components are reported for every irrep, zero or not, with the formal
    (or evaluated) eigenvalue sums.
    """
    if not is_ideal_element(state):
        state = into_ideal(state)
    ct = character_table_abelian(table)
    projectors = build_projectors(ct)
    slots = tuple(coeffs) if coeffs is not None else default_symbols(table.dimension)
    NoiseOperator(table, slots)  # validates slot count

    components = []
    total = Multivector.zero(state.num_factors)
    for projector in projectors:
        comp = project_state(projector, state)
        total = total + comp
        ideal_zero = comp.is_zero()
        zero = ideal_zero or column_is_zero(exact_state_column(comp))
        eigenvalue = None
        evaluated = None
        if not ideal_zero:
            eigenvalue = eigen_check(ct, projector.label, comp, slots)
            if eigenvalue.is_concrete():
                evaluated = eigenvalue.evaluate()
        components.append(
            DfsComponent(projector.label, comp, ideal_zero, zero, eigenvalue, evaluated)
        )
    if total != state:
        raise EigenCheckError("projected components do not sum back to the state")
    return DfsReport(table, ct, projectors, state, tuple(components))


def matrix_oracle_check(
    ct: CharacterTable,
    j: int,
    component: Multivector,
    coeffs: Sequence[CoeffSlot],
    sign_rep: Optional[SignRep] = None,
) -> tuple[float, bool]:
    """Numeric eigen check in the 2^m representation: returns (residual, vacuous).

    Builds the noise matrix from concrete coefficients, the state column from
    the exact column image, and measures max |Gamma v - lambda v|.  A zero
    state is vacuous: residual 0 by construction, flagged.
    """
    table = ct.table
    m = table.num_factors
    if m is None or m > 4:
        raise ValueError("matrix oracle supports blade tables with m <= 4")
    slots = tuple(coeffs)
    if any(not isinstance(slot, GaussianRational) for slot in slots):
        raise ValueError("matrix oracle needs concrete coefficients")
    if sign_rep is None:
        sign_rep = SignRep((1,) * m)

    rep = sign_rep_matrices(sign_rep, table)
    gamma = np.zeros((2 ** m, 2 ** m), dtype=complex)
    for slot, image in zip(slots, rep.images):
        gamma = gamma + complex(slot) * image

    column = exact_state_column(component, sign_rep)
    if column_is_zero(column):
        return 0.0, True
    vector = np.array([complex(entry) for entry in column])
    row = ct.rows[j - 1]
    lam = complex(EigenvalueSum(tuple(zip(slots, row))).evaluate())
    residual = float(np.max(np.abs(gamma @ vector - lam * vector)))
    return residual, False
