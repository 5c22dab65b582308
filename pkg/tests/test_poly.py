"""Exact polynomial arithmetic, grading, rendering, and the linear solver."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qschubert import (
    EchelonSystem,
    NonIntegralError,
    NoSolutionError,
    Polynomial,
    c_var,
    g_var,
    q_var,
    sigma_var,
    solve_linear_expansion,
    x_var,
)

X1, X2, X3 = x_var(1), x_var(2), x_var(3)
Q1 = q_var(1)


def small_polys():
    vars_ = [X1, X2, X3, Q1]
    term = st.tuples(
        st.integers(-4, 4),
        st.lists(st.sampled_from(vars_), min_size=0, max_size=3),
    )

    def build(terms):
        p = Polynomial.zero()
        for c, fs in terms:
            m = Polynomial.constant(c)
            for f in fs:
                m = m * f
            p = p + m
        return p

    return st.lists(term, min_size=0, max_size=4).map(build)


def test_constructors():
    assert Polynomial.zero().is_zero()
    assert Polynomial.constant(0).is_zero()
    assert Polynomial.constant(3).to_text() == "3"
    assert x_var(1) == Polynomial.variable(("x", 1))


def test_mul_example():
    assert (X1 * X1).to_text() == "x1^2"


def test_integer_scalar_multiplication_both_sides():
    p = X1 + X2
    assert 2 * p == p * 2 == p + p


@settings(max_examples=60)
@given(small_polys(), small_polys(), small_polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + Polynomial.zero() == p
    assert p * Polynomial.constant(1) == p
    assert p - p == Polynomial.zero()


@settings(max_examples=40)
@given(small_polys(), small_polys())
def test_substitute_is_a_ring_homomorphism(p, q):
    assignment = {("x", 1): X2 + Q1, ("x", 3): Polynomial.constant(2)}
    assert (p * q).substitute(assignment) == p.substitute(assignment) * q.substitute(assignment)
    assert (p + q).substitute(assignment) == p.substitute(assignment) + q.substitute(assignment)


def test_substitute_leaves_unassigned_variables_fixed():
    p = g_var(1, 0) * g_var(2, 0) + g_var(1, 1)
    got = p.substitute({("g", 1, 1): Q1})
    assert got == g_var(1, 0) * g_var(2, 0) + Q1


def test_substitute_can_kill_a_variable():
    p = g_var(1, 0) + g_var(1, 1) + g_var(1, 2)
    killed = p.substitute({("g", 1, 1): Polynomial.zero(), ("g", 1, 2): Polynomial.zero()})
    assert killed == g_var(1, 0)


def test_variable_grades_through_homogeneity():
    assert (X1 * X2).grade() == 2
    assert Q1.grade() == 2
    assert g_var(1, 2).grade() == 3
    assert c_var(3, 5).grade() == 3
    assert sigma_var(2, 1).grade() == 2
    assert q_var(1).grade(q_grades={1: 4}) == 4


def test_out_of_convention_variables_collapse():
    assert c_var(0, 7) == Polynomial.constant(1)
    assert c_var(-1, 2).is_zero()
    assert c_var(3, 2).is_zero()
    assert c_var(1, 0).is_zero()
    assert g_var(0, 1).is_zero()
    assert g_var(1, -1).is_zero()


def test_homogeneous_component_examples():
    p = X1 + X1 * X2
    assert p.homogeneous_component(2) == X1 * X2
    both = X1 * X1 - Q1
    assert both.homogeneous_component(2) == both
    assert p.homogeneous_component(-1).is_zero()


@settings(max_examples=40)
@given(small_polys())
def test_graded_components_recover_polynomial(p):
    total = Polynomial.zero()
    for grade, part in p.graded_components().items():
        assert part.is_homogeneous()
        assert part.grade() == grade
        total = total + part
    assert total == p


def test_monomial_order_is_total_and_multiplicative():
    monos = [
        X1 * X1, X1 * X2, X2 * X2, Q1, X1 * X1 * X2, X3,
        g_var(1, 0) * X1, c_var(2, 2), sigma_var(1, 1) * Q1,
    ]
    keys = [p.terms()[0][0] for p in monos]
    from qschubert.poly import mon_mul, mon_sort_key

    ordered = sorted(keys, key=mon_sort_key)
    for extra in keys:
        bumped = [mon_mul(k, extra) for k in ordered]
        assert bumped == sorted(bumped, key=mon_sort_key)
    assert len(set(keys)) == len(keys)


def test_text_rendering_uses_fixed_order_and_unicode_minus():
    assert (X1 * X1 - Q1).to_text() == "x1^2 − q1"
    assert (X1 * X1 * X2).to_text() == "x1^2·x2"
    assert Polynomial.zero().to_text() == "0"
    assert (g_var(1, 0) * g_var(1, 0) - g_var(1, 1)).to_text() == "g1[0]^2 − g1[1]"
    assert (c_var(1, 1) * c_var(1, 2) - c_var(2, 2)).to_text() == "c1(1)·c1(2) − c2(2)"


def test_text_rendering_parenthesizes_superscripted_variables():
    s = sigma_var(1, 1)
    assert s.to_text() == "s1^1"
    assert (s * s).to_text() == "(s1^1)^2"


def test_json_round_trip():
    p = X1 * X1 * X2 - 3 * Q1 * X3 + c_var(2, 3) * g_var(1, 1) - sigma_var(2, 2)
    obj = p.to_json_obj()
    assert Polynomial.from_json_obj(obj) == p
    for term in obj:
        assert isinstance(term["coeff"], str)
        for factor in term["monomial"]:
            assert factor["kind"] in ("x", "q", "g", "c", "sigma")
            assert factor["exp"] >= 1


def test_json_of_constant():
    obj = Polynomial.constant(5).to_json_obj()
    assert Polynomial.from_json_obj(obj) == Polynomial.constant(5)


def test_fraction_coefficients_supported_in_arithmetic():
    p = Fraction(1, 2) * X1
    assert p + p == X1
    assert (2 * p).to_text() == "x1"


def test_solver_example_and_recombination():
    sol = solve_linear_expansion(X1 * X1, [X1 * (X1 + X2), X1 * X2])
    assert list(sol) == [1, -1]
    assert sol.dependent_indices == ()
    assert not sol.has_dependencies


def test_solver_zero_target():
    sol = solve_linear_expansion(Polynomial.zero(), [X1, X2])
    assert list(sol) == [0, 0]


def test_solver_no_solution():
    with pytest.raises(NoSolutionError):
        solve_linear_expansion(X1, [X2])


def test_solver_non_integral_reported_distinctly():
    with pytest.raises(NonIntegralError):
        solve_linear_expansion(X1, [2 * X1])


def test_solver_reports_dependencies():
    sol = solve_linear_expansion(X1 + X2, [X1, X2, X1 + X2])
    assert sol.has_dependencies
    assert sol.dependent_indices == (2,)
    recombined = Polynomial.zero()
    for c, gen in zip(sol, [X1, X2, X1 + X2]):
        recombined = recombined + c * gen
    assert recombined == X1 + X2


@settings(max_examples=30)
@given(small_polys(), st.lists(st.integers(-3, 3), min_size=2, max_size=4))
def test_solver_recombines_exactly(extra, coeffs):
    gens = [X1 * X1, X1 * X2, X2 * X2, Q1][: len(coeffs)]
    target = Polynomial.zero()
    for c, g in zip(coeffs, gens):
        target = target + c * g
    sol = solve_linear_expansion(target, gens)
    rebuilt = Polynomial.zero()
    for c, g in zip(sol, gens):
        rebuilt = rebuilt + c * g
    assert rebuilt == target


def test_echelon_reduce_splits_target():
    gens = [X1 * (X1 + X2), X1 * X2]
    sys = EchelonSystem(gens)
    assert sys.rank == 2
    coeffs, leftover = sys.reduce(X1 * X1 + X2 * X2)
    rebuilt = leftover
    for j, c in coeffs.items():
        rebuilt = rebuilt + c * gens[j]
    assert rebuilt == X1 * X1 + X2 * X2


def test_echelon_rejects_fractional_generators():
    with pytest.raises(ValueError):
        EchelonSystem([Fraction(1, 2) * X1])


def test_echelon_dependent_indices():
    sys = EchelonSystem([X1, X2, X1 - X2])
    assert sys.rank == 2
    assert tuple(sys.dependent_indices) == (2,)
