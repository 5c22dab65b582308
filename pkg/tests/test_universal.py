"""Path polynomials, universal Schubert polynomials, and their specializations."""

import pytest

from qschubert import (
    PathAlphabet,
    Polynomial,
    VerificationError,
    all_permutations,
    c_var,
    g_from_c,
    g_var,
    kernel_chern_check,
    length,
    path_poly,
    path_poly_range,
    quantum_e,
    quantum_schubert,
    q_var,
    schubert_poly,
    specialize_classical,
    specialize_quantum,
    universal_schubert_c,
    universal_schubert_g,
    x_var,
)
from qschubert.universal import path_poly_via_determinant, path_poly_via_recursion


def test_path_poly_examples():
    assert path_poly(1, 2) == g_var(1, 0) + g_var(2, 0)
    assert path_poly(2, 2) == g_var(1, 0) * g_var(2, 0) + g_var(1, 1)
    assert path_poly(3, 2).is_zero()
    assert path_poly(0, 4) == Polynomial.constant(1)


def test_path_poly_range_examples():
    assert path_poly_range(1, 2, 2) == g_var(2, 0)
    assert path_poly_range(2, 1, 2) == path_poly(2, 2)
    assert path_poly_range(3, 2, 3).is_zero()


def test_path_poly_monomials_are_disjoint_path_covers():
    for l in range(1, 6):
        for k in range(0, l + 1):
            p = path_poly(k, l)
            for mono, coeff in p.terms():
                assert coeff == 1
                intervals = []
                for (kind, i, j), exp in mono:
                    assert kind == "g" and exp == 1
                    intervals.append((i, i + j))
                covered = []
                for a, b in intervals:
                    assert 1 <= a <= b <= l
                    covered.extend(range(a, b + 1))
                assert len(covered) == len(set(covered)) == k


def test_path_poly_three_way_agreement():
    for l in range(1, 6):
        for k in range(0, l + 1):
            direct = path_poly(k, l)
            assert direct == path_poly_via_recursion(k, l)
            assert direct == path_poly_via_determinant(k, l)


def test_path_poly_homogeneous_of_grade_k():
    for l in range(1, 6):
        for k in range(1, l + 1):
            assert path_poly(k, l).grade() == k


def test_g_from_c_examples():
    assert g_from_c(1, 0) == c_var(1, 1)
    for i in range(2, 5):
        assert g_from_c(i, 0) == c_var(1, i) - c_var(1, i - 1)
    expected = c_var(2, 2) - c_var(1, 1) * c_var(1, 2) + c_var(1, 1) * c_var(1, 1)
    assert g_from_c(1, 1) == expected


def test_g_from_c_round_trip_n5():
    n = 5
    assignment = {}
    for l in range(1, n + 1):
        for k in range(1, l + 1):
            assignment[("c", k, l)] = path_poly(k, l)
    for i in range(1, n + 1):
        for j in range(0, n - i + 1):
            expressed = g_from_c(i, j)
            assert expressed.grade() == j + 1
            assert expressed.substitute(assignment) == g_var(i, j)


def test_universal_schubert_c_examples():
    assert universal_schubert_c((1, 2, 3)) == Polynomial.constant(1)
    assert universal_schubert_c((2, 1, 3)) == c_var(1, 1)
    expected = c_var(1, 1) * c_var(1, 2) - c_var(2, 2)
    assert universal_schubert_c((3, 1, 2)) == expected


def test_universal_schubert_g_examples():
    assert universal_schubert_g((1, 2, 3)) == Polynomial.constant(1)
    assert universal_schubert_g((2, 1, 3)) == g_var(1, 0)
    assert universal_schubert_g((3, 1, 2)) == g_var(1, 0) * g_var(1, 0) - g_var(1, 1)


def test_universal_schubert_homogeneous():
    for w in all_permutations(4):
        if length(w) == 0:
            continue
        assert universal_schubert_c(w).grade() == length(w)
        assert universal_schubert_g(w).grade() == length(w)


def test_specialize_quantum_and_classical_examples():
    p = g_var(1, 0) * g_var(1, 0) - g_var(1, 1)
    assert specialize_quantum(p) == x_var(1) * x_var(1) - q_var(1)
    assert specialize_classical(p) == x_var(1) * x_var(1)
    untouched = c_var(2, 3) + Polynomial.constant(7)
    assert specialize_quantum(untouched) == untouched


def test_specialization_kills_long_paths():
    p = g_var(1, 2) + g_var(2, 3) * g_var(1, 0)
    assert specialize_quantum(p).is_zero()


def test_quantum_e_examples():
    for l in range(1, 5):
        total = Polynomial.zero()
        for i in range(1, l + 1):
            total = total + x_var(i)
        assert quantum_e(1, l) == total
    assert quantum_e(2, 2) == x_var(1) * x_var(2) + q_var(1)
    expected = (x_var(1) * x_var(2) * x_var(3)
                + q_var(1) * x_var(3) + x_var(1) * q_var(2))
    assert quantum_e(3, 3) == expected


def test_quantum_e_matches_specialized_path_poly():
    for l in range(1, 6):
        for k in range(0, l + 1):
            assert quantum_e(k, l) == specialize_quantum(path_poly(k, l))


def test_quantum_schubert_examples():
    assert quantum_schubert((2, 1, 3)) == x_var(1)
    assert quantum_schubert((3, 1, 2)) == x_var(1) * x_var(1) - q_var(1)
    assert quantum_schubert((1, 2, 3)) == Polynomial.constant(1)


def test_specialization_chain_s4():
    for w in all_permutations(4):
        universal = universal_schubert_g(w)
        assert specialize_quantum(universal) == quantum_schubert(w)
        assert specialize_classical(universal) == schubert_poly(w)
        assert quantum_schubert(w).substitute(
            {("q", i): Polynomial.zero() for i in range(1, 4)}
        ) == schubert_poly(w)


def test_kernel_chern_check_examples():
    assert kernel_chern_check(1, 2)
    assert kernel_chern_check(3, 3)
    assert kernel_chern_check(2, 4)


def test_kernel_chern_check_full_range_n5():
    for l in range(2, 6):
        for k in range(1, l):
            assert kernel_chern_check(k, l)


def test_path_alphabet_admissibility():
    alpha = PathAlphabet(3)
    assert alpha.admissible(1, 2)
    assert alpha.admissible(3, 0)
    assert not alpha.admissible(1, 3)
    assert not alpha.admissible(0, 1)
    gs = alpha.g_variables()
    assert (1, 2) in gs
    assert (2, 2) not in gs
    assert len(gs) == 6


def test_path_alphabet_validates_arguments():
    alpha = PathAlphabet(3)
    assert alpha.path_poly(2, 3) == path_poly(2, 3)
    with pytest.raises(ValueError):
        alpha.path_poly(1, 4)
    with pytest.raises(ValueError):
        alpha.quantum_e(1, 0)
    with pytest.raises(ValueError):
        alpha.g_from_c(2, 2)
