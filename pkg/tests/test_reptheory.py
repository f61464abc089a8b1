"""Sign representations, orthogonality sweeps, character tables, unitarization."""

import random

import numpy as np
import pytest

import cliffdfs as c
import cliffdfs.reptheory as rt
import cliffdfs.structure as st
from cliffdfs import GaussianRational
from cliffdfs.linalg import max_norm

from conftest import oracle_blade_matrix

I2 = np.eye(2, dtype=complex)


@pytest.fixture(scope="module")
def cl3():
    return st.full_clifford_table(1)


@pytest.fixture(scope="module")
def cl3_reps(cl3):
    return [rt.sign_rep_matrices(s, cl3) for s in rt.all_sign_reps(1)]


def test_sign_rep_plus_maps_volume_to_i(cl3_reps):
    plus, minus = cl3_reps
    # i g1 g2 g3 -> -I in the plus family, +I in the minus family
    assert np.allclose(1j * plus.images[7], -I2)
    assert np.allclose(1j * minus.images[7], I2)


def test_sign_rep_images_match_oracle(cl3_reps):
    plus = cl3_reps[0]
    for idx in range(8):
        assert np.allclose(plus.images[idx], oracle_blade_matrix((idx,)))


def test_two_factor_sign_patterns():
    table = st.full_clifford_table(2)
    volume_left = table.blades.index((7, 0))
    volume_right = table.blades.index((0, 7))
    patterns = []
    for s in rt.all_sign_reps(2):
        rep = rt.sign_rep_matrices(s, table)
        eye = np.eye(4)
        left = 1 if np.allclose(1j * rep.images[volume_left], eye) else -1
        right = 1 if np.allclose(1j * rep.images[volume_right], eye) else -1
        patterns.append((left, right))
    assert patterns == [(-1, -1), (-1, 1), (1, -1), (1, 1)]


def test_sign_rep_caps_and_preconditions():
    with pytest.raises(ValueError):
        rt.sign_rep_matrices(rt.SignRep((1,) * 5), st.full_clifford_table(5))
    with pytest.raises(ValueError):
        rt.sign_rep_matrices(rt.SignRep((1, 1)), st.full_clifford_table(1))
    with pytest.raises(ValueError):
        rt.sign_rep_matrices(rt.SignRep((1,)), st.dual_numbers_table())


def test_homomorphism_exhaustive_small(cl3_reps, a1_table):
    for rep in cl3_reps:
        assert rt.homomorphism_residual(rep) <= 1e-9
    table2 = st.full_clifford_table(2)
    rep2 = rt.sign_rep_matrices(rt.SignRep((1, -1)), table2)
    assert rt.homomorphism_residual(rep2) <= 1e-9
    rep_a1 = rt.sign_rep_matrices(rt.SignRep((1, 1, 1)), a1_table)
    assert rt.homomorphism_residual(rep_a1) <= 1e-9


def test_homomorphism_exhaustive_three_factors():
    table = st.full_clifford_table(3)
    rep = rt.sign_rep_matrices(rt.SignRep((1, -1, 1)), table)
    stacked = np.stack(rep.images)
    d = table.dimension
    for x in range(d):
        products = np.einsum("ij,yjk->yik", rep.images[x], stacked)
        targets = np.empty(d, dtype=int)
        phases = np.empty(d, dtype=complex)
        for y in range(d):
            phase, z = table.product(x, y)
            targets[y] = z
            phases[y] = complex(phase)
        expected = phases[:, None, None] * stacked[targets]
        assert float(np.max(np.abs(products - expected))) <= 1e-9


def test_homomorphism_sampled_four_factors():
    table = st.full_clifford_table(4)
    rep = rt.sign_rep_matrices(rt.SignRep((1, 1, -1, -1)), table)
    rng = random.Random(44)
    pairs = [
        (rng.randrange(table.dimension), rng.randrange(table.dimension))
        for _ in range(2000)
    ]
    assert rt.homomorphism_residual(rep, sample_pairs=pairs) <= 1e-9


def test_distinguish_plus_minus(cl3_reps):
    verdicts = rt.distinguish_reps(cl3_reps)
    assert verdicts[(0, 1)] == "nonequivalent"
    assert verdicts[(1, 0)] == "nonequivalent"
    assert verdicts[(0, 0)] == "undetermined"
    assert verdicts[(1, 1)] == "undetermined"


def test_distinguish_similarity_is_undetermined(cl3, cl3_reps):
    rng = np.random.default_rng(3)
    s = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    conjugated = rt.conjugate_rep(cl3_reps[0], s)
    verdicts = rt.distinguish_reps([cl3_reps[0], conjugated])
    assert verdicts[(0, 1)] == "undetermined"


def test_distinguish_eight_reps_three_factors():
    table = st.full_clifford_table(3)
    reps = [rt.sign_rep_matrices(s, table) for s in rt.all_sign_reps(3)]
    verdicts = rt.distinguish_reps(reps)
    for i in range(8):
        for j in range(8):
            expected = "undetermined" if i == j else "nonequivalent"
            assert verdicts[(i, j)] == expected
            assert verdicts[(i, j)] == verdicts[(j, i)]


def test_distinguish_dimension_mismatch(cl3_reps, a1_table):
    other = rt.sign_rep_matrices(rt.SignRep((1, 1, 1)), a1_table)
    with pytest.raises(ValueError):
        rt.distinguish_reps([cl3_reps[0], other])


def test_grand_orthogonality_same_rep(cl3_reps):
    plus = cl3_reps[0]
    assert rt.verify_grand_orthogonality(plus, plus) <= 1e-9
    # spot-check the diagonal value d/d_alpha = 8/2 = 4
    total = sum(abs(image[0, 0]) ** 2 for image in plus.images)
    assert total == pytest.approx(4.0, abs=1e-9)


def test_grand_orthogonality_cross_rep(cl3_reps):
    assert rt.verify_grand_orthogonality(cl3_reps[0], cl3_reps[1]) <= 1e-9


def test_grand_orthogonality_trivial_algebra():
    ct = rt.character_table_abelian(st.trivial_table())
    rep = rt.rep_from_characters(ct, 0)
    assert rt.verify_grand_orthogonality(rep, rep) <= 1e-12
    assert rep.images[0][0, 0] == pytest.approx(1.0)


def test_grand_orthogonality_rejects_non_unitary(cl3_reps):
    crooked = rt.conjugate_rep(cl3_reps[0], np.array([[1, 1], [0, 1]]))
    with pytest.raises(ValueError):
        rt.verify_grand_orthogonality(crooked, crooked)


def test_character_table_a1(a1_table):
    ct = rt.character_table_abelian(a1_table)
    one, minus = GaussianRational(1), GaussianRational(-1)
    assert ct.rows == (
        (one, one, one, one),
        (one, one, minus, minus),
        (one, minus, one, minus),
        (one, minus, minus, one),
    )


def test_character_table_trivial():
    ct = rt.character_table_abelian(st.trivial_table())
    assert ct.rows == ((GaussianRational(1),),)


def test_character_table_bivector_subalgebra(gamma3_table):
    ct = rt.character_table_abelian(gamma3_table)
    assert len(ct.rows) == 4
    assert all(value.abs2() == 1 and value.im == 0 for row in ct.rows for value in row)
    assert rt.character_orthogonality_exact(ct)


def test_character_table_complex_phases():
    table = st.close_generators([c.Multivector.from_blade((0b011,))], 1)
    ct = rt.character_table_abelian(table)
    i_val = GaussianRational(0, 1)
    assert ct.rows == (
        (GaussianRational(1), i_val),
        (GaussianRational(1), -i_val),
    )
    assert rt.character_orthogonality_exact(ct)


def test_character_table_rows_are_multiplicative(a1_table, gamma3_table):
    for table in (a1_table, gamma3_table):
        ct = rt.character_table_abelian(table)
        d = table.dimension
        for row in ct.rows:
            for x in range(d):
                for y in range(d):
                    phase, z = table.product(x, y)
                    assert row[x] * row[y] == phase * row[z]


def test_character_table_rejects_bad_inputs():
    with pytest.raises(ValueError):
        rt.character_table_abelian(st.full_clifford_table(1))  # non-commutative
    with pytest.raises(ValueError):
        rt.character_table_abelian(st.dual_numbers_table())  # nilpotent basis


def test_character_orthogonality_mutation_fails(a1_table):
    ct = rt.character_table_abelian(a1_table)
    assert rt.character_orthogonality_exact(ct)
    rows = [list(row) for row in ct.rows]
    rows[1][2] = -rows[1][2]
    mutated = rt.CharacterTable(a1_table, tuple(tuple(row) for row in rows))
    assert not rt.character_orthogonality_exact(mutated)


def test_unitarize_already_unitary(cl3, cl3_reps):
    result = rt.unitarize(cl3_reps[0])
    assert np.allclose(result.overlap, 8 * np.eye(2))
    # transform proportional to the identity: images unchanged
    for before, after in zip(cl3_reps[0].images, result.unitary_images):
        assert max_norm(before - after) <= 1e-9


def test_unitarize_restores_conjugated_rep(cl3_reps):
    crooked = rt.conjugate_rep(cl3_reps[0], np.array([[1, 1], [0, 1]]))
    result = rt.unitarize(crooked)
    eye = np.eye(2)
    for before, after in zip(crooked.images, result.unitary_images):
        assert max_norm(after @ after.conj().T - eye) <= 1e-8
        assert np.trace(after) == pytest.approx(np.trace(before), abs=1e-8)


def test_unitarize_one_dimensional():
    table = st.close_generators([c.Multivector.from_blade((0b011,))], 1)
    ct = rt.character_table_abelian(table)
    rep = rt.rep_from_characters(ct, 0)
    result = rt.unitarize(rep)
    value = result.transform[0, 0]
    assert value.imag == pytest.approx(0.0, abs=1e-12)
    assert value.real > 0


def test_unitarize_idempotent(cl3, cl3_reps):
    crooked = rt.conjugate_rep(cl3_reps[0], np.array([[2, 1], [0, 1]]))
    once = rt.unitarize(crooked)
    again = rt.unitarize(rt.MatrixRep(cl3, once.unitary_images, label="once"))
    for first, second in zip(once.unitary_images, again.unitary_images):
        assert max_norm(first - second) <= 1e-8


def test_unitarize_rejects_failing_coefficient_condition():
    rep_table = st.dual_numbers_table()
    images = (np.eye(1, dtype=complex), np.zeros((1, 1), dtype=complex))
    with pytest.raises(ValueError):
        rt.unitarize(rt.MatrixRep(rep_table, images))


def test_unitarize_rejects_singular_overlap():
    table = st.trivial_table()
    rep = rt.MatrixRep(table, (np.zeros((1, 1), dtype=complex),))
    with pytest.raises(ValueError):
        rt.unitarize(rep)


def test_matrix_element_projector_composition(cl3, cl3_reps):
    d = cl3.dimension
    projectors = {}
    for j, rep in enumerate(cl3_reps):
        for lam in range(2):
            for k in range(2):
                projectors[(j, lam, k)] = rt.matrix_element_projector(rep, lam, k)
    for (j, lam, k), p in projectors.items():
        for (j2, mu, l), q in projectors.items():
            product = p @ q
            if j == j2 and k == mu:
                expected = projectors[(j, lam, l)]
            else:
                expected = np.zeros((d, d))
            assert max_norm(product - expected) <= 1e-8


def test_matrix_element_projectors_resolve_identity(cl3, cl3_reps):
    total = np.zeros((8, 8), dtype=complex)
    for rep in cl3_reps:
        for k in range(2):
            total = total + rt.matrix_element_projector(rep, k, k)
    assert max_norm(total - np.eye(8)) <= 1e-8


def test_matrix_element_projector_abelian_matches_character_projector(a1_table):
    ct = rt.character_table_abelian(a1_table)
    regular = rt.regular_representation(a1_table)
    for j in range(ct.count):
        rep = rt.rep_from_characters(ct, j)
        lhs = rt.matrix_element_projector(rep, 0, 0)
        projector = c.build_projectors(ct)[j]
        rhs = np.zeros((4, 4), dtype=complex)
        for idx in range(4):
            coeff = projector.element.coeff(a1_table.blade(idx))
            rhs = rhs + complex(coeff) * regular[idx]
        assert max_norm(lhs - rhs) <= 1e-12


def test_matrix_element_projector_validation(cl3_reps):
    crooked = rt.conjugate_rep(cl3_reps[0], np.array([[1, 1], [0, 1]]))
    with pytest.raises(ValueError):
        rt.matrix_element_projector(crooked, 0, 0)
    with pytest.raises(IndexError):
        rt.matrix_element_projector(cl3_reps[0], 0, 5)
