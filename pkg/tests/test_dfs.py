"""Projectors on states, eigen checks, column images, the oracle path."""

import random
from fractions import Fraction

import pytest

import cliffdfs as c
import cliffdfs.dfs as dfs
import cliffdfs.reptheory as rt
import cliffdfs.structure as st
from cliffdfs import GaussianRational, Multivector

from conftest import random_multivector


def gr(text):
    return c.parse_scalar(text)


def ideal(text):
    return c.into_ideal(c.parse_element(text))


@pytest.fixture(scope="module")
def a1_ct(a1_table):
    return rt.character_table_abelian(a1_table)


@pytest.fixture(scope="module")
def a1_projectors(a1_ct):
    return dfs.build_projectors(a1_ct)


def test_projector_elements_match_printed_forms(a1_projectors):
    printed = {
        c.parse_element("1/4 [1 1 1] + 1/4 [g3 g3 1] + 1/4 [1 g3 g3] + 1/4 [g3 1 g3]"),
        c.parse_element("1/4 [1 1 1] - 1/4 [g3 g3 1] + 1/4 [1 g3 g3] - 1/4 [g3 1 g3]"),
        c.parse_element("1/4 [1 1 1] - 1/4 [g3 g3 1] - 1/4 [1 g3 g3] + 1/4 [g3 1 g3]"),
        c.parse_element("1/4 [1 1 1] + 1/4 [g3 g3 1] - 1/4 [1 g3 g3] - 1/4 [g3 1 g3]"),
    }
    assert {p.element for p in a1_projectors} == printed
    # the all-plus row labels the first projector
    assert a1_projectors[0].element == c.parse_element(
        "1/4 [1 1 1] + 1/4 [g3 g3 1] + 1/4 [1 g3 g3] + 1/4 [g3 1 g3]"
    )


def test_projector_from_alternating_row(a1_ct, a1_projectors):
    # the (+,-,+,-) character row produces the alternating-sign projector
    row_index = a1_ct.rows.index(
        (GaussianRational(1), GaussianRational(-1), GaussianRational(1), GaussianRational(-1))
    )
    assert a1_projectors[row_index].element == c.parse_element(
        "1/4 [1 1 1] - 1/4 [g3 g3 1] + 1/4 [1 g3 g3] - 1/4 [g3 1 g3]"
    )


def test_trivial_projector_is_identity():
    ct = rt.character_table_abelian(st.trivial_table())
    (projector,) = dfs.build_projectors(ct)
    assert projector.element == Multivector.unit(1)


def test_projector_algebra_exact(a1_projectors, gamma3_table):
    gamma3_projectors = dfs.build_projectors(rt.character_table_abelian(gamma3_table))
    for projectors, m in ((a1_projectors, 3), (gamma3_projectors, 4)):
        total = Multivector.zero(m)
        for p in projectors:
            assert p.element * p.element == p.element
            total = total + p.element
        assert total == Multivector.unit(m)
        for p in projectors:
            for q in projectors:
                if p.label != q.label:
                    assert (p.element * q.element).is_zero()


def test_eigen_action_on_projectors(a1_ct, a1_projectors):
    table = a1_ct.table
    for j, p in enumerate(a1_projectors):
        for y in range(table.dimension):
            lhs = table.element(y) * p.element
            assert lhs == p.element.scale(a1_ct.rows[j][y])


def test_ghz_projection(a1_projectors, ghz_state):
    assert dfs.project_state(a1_projectors[0], ghz_state) == ghz_state
    for p in a1_projectors[1:]:
        assert dfs.project_state(p, ghz_state).is_zero()


def test_project_state_factor_mismatch(a1_projectors):
    with pytest.raises(ValueError):
        dfs.project_state(a1_projectors[0], Multivector.unit(2))


def test_eigen_check_ghz(a1_ct, ghz_state):
    result = dfs.eigen_check(a1_ct, 1, ghz_state, ("k1,1", "k1,2", "k1,3", "k1,4"))
    assert result.render() == "k1,1 + k1,2 + k1,3 + k1,4"


def test_eigen_check_rejects_zero(a1_ct):
    with pytest.raises(ValueError):
        dfs.eigen_check(a1_ct, 1, Multivector.zero(3))


def test_eigen_check_fails_loudly_on_wrong_row(a1_ct, ghz_state):
    with pytest.raises(dfs.EigenCheckError):
        dfs.eigen_check(a1_ct, 2, ghz_state)


def test_noise_operator_validation(a1_table):
    with pytest.raises(ValueError):
        dfs.NoiseOperator(a1_table, ("k1", "k2"))
    noise = dfs.NoiseOperator(
        a1_table, (gr("1"), gr("1/2"), gr("1/3"), gr("1/4"))
    )
    expected = (
        a1_table.element(0)
        + a1_table.element(1).scale(gr("1/2"))
        + a1_table.element(2).scale(gr("1/3"))
        + a1_table.element(3).scale(gr("1/4"))
    )
    assert noise.element() == expected
    with pytest.raises(ValueError):
        dfs.NoiseOperator(a1_table, ("k1", "k2", "k3", "k4")).element()


def test_noise_eigen_relation_via_element(a1_table, a1_ct, ghz_state):
    # concrete noise acting on the invariant state: Gamma psi = lambda psi
    slots = (gr("1"), gr("1/2"), gr("1/3"), gr("1/4"))
    noise = dfs.NoiseOperator(a1_table, slots)
    lam = dfs.EigenvalueSum(tuple(zip(slots, a1_ct.rows[0]))).evaluate()
    assert noise.element() * ghz_state == ghz_state.scale(lam)
    assert lam == gr("25/12")


def test_dfs_analyze_ghz(a1_table, ghz_state):
    report = dfs.dfs_analyze(a1_table, ghz_state)
    flags = [(entry.ideal_zero, entry.zero) for entry in report.components]
    assert flags == [(False, False), (True, True), (True, True), (True, True)]
    assert report.components[0].component == ghz_state
    assert report.components[0].eigenvalue.render() == "k1 + k2 + k3 + k4"


def test_dfs_analyze_four_qubit_vector_noise(gamma2_table, four_qubit_state):
    report = dfs.dfs_analyze(gamma2_table, four_qubit_state)
    quarters = Fraction(1, 4)
    states = [
        ideal("1 [g3 g3 g3 g3]"),
        ideal("1 [g1 g1 g3 g3]"),
        ideal("1 [g3 g3 g1 g1]"),
        ideal("1 [g1 g1 g1 g1]"),
    ]
    patterns = [(1, 1, 1, 1), (1, 1, -1, -1), (1, -1, 1, -1), (1, -1, -1, 1)]
    for entry, pattern in zip(report.components, patterns):
        assert not entry.zero and not entry.ideal_zero
        expected = Multivector.zero(4)
        for sign, state in zip(pattern, states):
            expected = expected + state.scale(GaussianRational(quarters * sign))
        assert entry.component == expected
    sums = [entry.eigenvalue.render() for entry in report.components]
    assert sums == [
        "k1 + k2 + k3 + k4",
        "k1 + k2 - k3 - k4",
        "k1 - k2 + k3 - k4",
        "k1 - k2 - k3 + k4",
    ]


def test_dfs_analyze_bivector_noise(gamma3_table, four_qubit_state):
    report = dfs.dfs_analyze(gamma3_table, four_qubit_state)
    zeros = [entry.zero for entry in report.components]
    ideal_zeros = [entry.ideal_zero for entry in report.components]
    assert zeros == [False, True, True, False]
    # the raw ideal elements do not vanish; only their physical block does
    assert ideal_zeros == [False, False, False, False]
    assert report.components[0].eigenvalue.render() == "k1 + k2 + k3 + k4"


def test_dfs_analyze_resolves_state(a1_table):
    rng = random.Random(12)
    eps = c.idempotent_eps(3)
    for _ in range(200):
        state = random_multivector(rng, 3, 4) * eps
        report = dfs.dfs_analyze(a1_table, state)
        total = Multivector.zero(3)
        for entry in report.components:
            total = total + entry.component
        assert total == state


def test_exact_state_column_matches_block_identities():
    eps = c.idempotent_eps(1)
    g1eps = Multivector.from_blade((0b001,)) * eps
    g2eps = Multivector.from_blade((0b010,)) * eps
    i_times = g1eps.scale(GaussianRational(0, 1))
    assert dfs.exact_state_column(g2eps) == dfs.exact_state_column(i_times)


def test_column_ratio():
    a = (gr("1/2"), gr("0"), gr("1/2i"))
    b = (gr("2"), gr("0"), gr("2i"))
    assert dfs.column_ratio(a, b) == gr("1/4")
    assert dfs.column_ratio(a, (gr("2"), gr("1"), gr("2i"))) is None
    assert dfs.column_ratio((gr("1"),), (gr("0"),)) is None


def test_bivector_components_proportional_to_printed_forms(gamma3_table, four_qubit_state):
    report = dfs.dfs_analyze(gamma3_table, four_qubit_state)
    printed_1 = ideal("2 [g3 g3 g3 g3] + 2 [g1 g1 g1 g1]")
    printed_4 = ideal("2 [g3 g3 g3 g3] - 2 [g1 g1 g1 g1]")
    ratio_1 = dfs.column_ratio(
        dfs.exact_state_column(report.components[0].component),
        dfs.exact_state_column(printed_1),
    )
    ratio_4 = dfs.column_ratio(
        dfs.exact_state_column(report.components[3].component),
        dfs.exact_state_column(printed_4),
    )
    assert ratio_1 == gr("1/4")
    assert ratio_4 == gr("1/4")


def test_matrix_oracle_ghz(a1_table, a1_ct, ghz_state):
    slots = (gr("1"), gr("1/2"), gr("1/3"), gr("1/4"))
    residual, vacuous = dfs.matrix_oracle_check(a1_ct, 1, ghz_state, slots)
    assert not vacuous and residual <= 1e-9
    lam = dfs.EigenvalueSum(tuple(zip(slots, a1_ct.rows[0]))).evaluate()
    assert lam == gr("25/12")


def test_matrix_oracle_zero_state_is_vacuous(a1_ct):
    slots = (gr("1"), gr("1"), gr("1"), gr("1"))
    residual, vacuous = dfs.matrix_oracle_check(a1_ct, 1, Multivector.zero(3), slots)
    assert vacuous and residual == 0.0


def test_matrix_oracle_bivector_unit_coeffs(gamma3_table, four_qubit_state):
    ct = rt.character_table_abelian(gamma3_table)
    report = dfs.dfs_analyze(gamma3_table, four_qubit_state)
    slots = (gr("1"), gr("1"), gr("1"), gr("1"))
    residual, vacuous = dfs.matrix_oracle_check(
        ct, 1, report.components[0].component, slots
    )
    assert not vacuous and residual <= 1e-9
    lam = dfs.EigenvalueSum(tuple(zip(slots, ct.rows[0]))).evaluate()
    assert lam == GaussianRational(4)


def test_matrix_oracle_rejects_symbols(a1_ct, ghz_state):
    with pytest.raises(ValueError):
        dfs.matrix_oracle_check(a1_ct, 1, ghz_state, ("k1", "k2", "k3", "k4"))


def test_eigenvalue_sum_rendering():
    i_phase = GaussianRational(0, 1)
    total = dfs.EigenvalueSum(
        (
            ("k1", GaussianRational(1)),
            ("k2", GaussianRational(-1)),
            ("k3", i_phase),
            ("k4", -i_phase),
        )
    )
    assert total.render() == "k1 - k2 + i k3 - i k4"
    mixed = dfs.EigenvalueSum((("k1", GaussianRational(1)), (gr("-1/2"), GaussianRational(-1))))
    assert mixed.render() == "k1 - (-1/2)"
    concrete = dfs.EigenvalueSum(((gr("1/2"), GaussianRational(1)), (gr("1/3"), GaussianRational(-1))))
    assert concrete.render() == "1/6"
