"""Shared fixtures and the independent Pauli-matrix oracle.

The oracle maps blades straight to numpy matrices (its own sigma constants,
its own kron loop) so that exact-layer results can be checked against plain
matrix arithmetic without touching the package's representation code.
"""

from fractions import Fraction
import random

import numpy as np
import pytest

import cliffdfs as c

SIGMA = {
    1: np.array([[0, 1], [1, 0]], dtype=complex),
    2: np.array([[0, -1j], [1j, 0]], dtype=complex),
    3: np.array([[1, 0], [0, -1]], dtype=complex),
}


def oracle_factor_matrix(mask: int, sign: int = 1) -> np.ndarray:
    out = np.eye(2, dtype=complex)
    for k in (1, 2, 3):
        if mask & (1 << (k - 1)):
            out = out @ (sign * SIGMA[k])
    return out


def oracle_blade_matrix(blade, signs=None) -> np.ndarray:
    signs = signs or (1,) * len(blade)
    out = np.eye(1, dtype=complex)
    for mask, sign in zip(blade, signs):
        out = np.kron(out, oracle_factor_matrix(mask, sign))
    return out


def oracle_mv_matrix(mv: c.Multivector, signs=None) -> np.ndarray:
    out = np.zeros((2 ** mv.num_factors, 2 ** mv.num_factors), dtype=complex)
    for blade, coeff in mv.terms.items():
        out = out + complex(coeff) * oracle_blade_matrix(blade, signs)
    return out


def random_scalar(rng: random.Random) -> c.GaussianRational:
    def part():
        return Fraction(rng.randint(-4, 4), rng.randint(1, 4))

    return c.GaussianRational(part(), part())


def random_multivector(rng: random.Random, m: int, max_terms: int = 4) -> c.Multivector:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        blade = tuple(rng.randrange(8) for _ in range(m))
        terms[blade] = random_scalar(rng)
    return c.Multivector(m, terms)


@pytest.fixture(scope="session")
def a1_table():
    gens = [c.Multivector.from_blade((4, 4, 0)), c.Multivector.from_blade((0, 4, 4))]
    return c.close_generators(gens, 3)


@pytest.fixture(scope="session")
def gamma2_table():
    gens = [c.Multivector.from_blade((1, 1, 0, 0)), c.Multivector.from_blade((0, 0, 1, 1))]
    return c.close_generators(gens, 4)


@pytest.fixture(scope="session")
def gamma3_table():
    gens = [c.Multivector.from_blade((1, 1, 1, 1)), c.Multivector.from_blade((2, 2, 2, 2))]
    return c.close_generators(gens, 4)


@pytest.fixture(scope="session")
def ghz_state():
    return c.into_ideal(c.parse_element("1 [g3 g3 g3] + 1 [g1 g1 g1]"))


@pytest.fixture(scope="session")
def four_qubit_state():
    return c.into_ideal(c.parse_element("1 [g3 g3 g3 g3]"))
