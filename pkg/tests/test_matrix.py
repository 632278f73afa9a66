import random

import pytest

from idealcore import Ideal, PolyMatrix, PolyRing, g_s_check, maximal_ideal, minor_ideal, pfaffian, pfaffian_ideal
from idealcore.matrix import det_bareiss, fitting_ideal, pfaffians, signed_submaximal_pfaffians

from conftest import EX_MATRIX, random_form


def random_matrix(ring, rows, cols, rng, degree=1):
    return PolyMatrix(ring, [[random_form(ring, degree, rng, -3, 3, 0.6) for _ in range(cols)]
                             for _ in range(rows)])


def random_alternating(ring, n, rng):
    a = [[ring.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            f = random_form(ring, 1, rng, -5, 5, 0.7)
            a[i][j], a[j][i] = f, -f
    return PolyMatrix(ring, a)


def test_parse_and_print(R2):
    M = PolyMatrix.parse("x, y; 0, x+1", R2)
    assert M.shape == (2, 2)
    assert PolyMatrix.parse(str(M), R2) == M
    with pytest.raises(ValueError):
        PolyMatrix.parse("x, y; x", R2)


def test_minors_2x2(R2):
    M = PolyMatrix.parse("x, y; y, x", R2)
    assert M.det() == R2.parse("x^2 - y^2")
    assert minor_ideal(M, 1) == maximal_ideal(R2)
    with pytest.raises(ValueError):
        M.minors(3)
    with pytest.raises(ValueError):
        M.minors(0)


def test_maximal_minors_of_hilbert_burch(R2):
    M = PolyMatrix.parse("y, 0; -x, y; 0, -x", R2)
    assert minor_ideal(M, 2) == Ideal(R2, "x^2, x*y, y^2")


def test_laplace_matches_bareiss(R3, rng):
    for n in range(1, 6):
        for _ in range(4):
            M = random_matrix(R3, n, n, rng)
            assert M.det() == det_bareiss(M)


def test_row_operation_leaves_minor_ideals_fixed(R3, rng):
    for _ in range(5):
        M = random_matrix(R3, 3, 4, rng)
        N = M.add_row_multiple(0, 2, random_form(R3, 1, rng, -2, 2))
        for t in (1, 2, 3):
            assert minor_ideal(M, t) == minor_ideal(N, t)


def test_minor_ideals_descend(R3, rng):
    M = random_matrix(R3, 3, 3, rng)
    assert minor_ideal(M, 3).issubset(minor_ideal(M, 2))
    assert minor_ideal(M, 2).issubset(minor_ideal(M, 1))


def test_transpose_preserves_minors(R3, rng):
    M = random_matrix(R3, 2, 3, rng)
    assert minor_ideal(M, 2) == minor_ideal(M.transpose(), 2)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_pfaffian_squared_is_determinant(n):
    rng = random.Random(n)
    R = PolyRing("x,y,z")
    for _ in range(3):
        M = random_alternating(R, n, rng)
        assert pfaffian(M) ** 2 == M.det()


def test_odd_alternating_has_zero_determinant(R3, rng):
    M = random_alternating(R3, 5, rng)
    assert M.det() == R3.zero
    assert pfaffian(M) == R3.zero


def test_pfaffian_of_generic_4x4():
    R = PolyRing("a,b,c,d,e,f")
    M = PolyMatrix.parse("0,a,b,c; -a,0,d,e; -b,-d,0,f; -c,-e,-f,0", R)
    assert pfaffian(M) == R.parse("a*f - b*e + c*d")


def test_pfaffian_errors(R2):
    with pytest.raises(ValueError):
        pfaffians(PolyMatrix.parse("0, x; x, 0", R2), 2)
    M = PolyMatrix.parse("0, x, y; -x, 0, 1; -y, -1, 0", R2)
    with pytest.raises(ValueError):
        pfaffians(M, 3)
    with pytest.raises(ValueError):
        pfaffians(M, 4)


def test_signed_pfaffians_are_annihilated(R4):
    M = PolyMatrix.parse(EX_MATRIX, R4)
    pf = signed_submaximal_pfaffians(M)
    for row in M.entries:
        assert sum((a * p for a, p in zip(row, pf)), R4.zero) == R4.zero


def test_pfaffian_example_ideal(R4):
    M = PolyMatrix.parse(EX_MATRIX, R4)
    I = pfaffian_ideal(M, 4)
    assert len(I.minimal_generators().gens) == 5
    assert I.height() == 3
    assert minor_ideal(M, 1) == Ideal(R4, "x^2, y^2, z^2, w^2")


def test_pfaffian_example_satisfies_g4(R4):
    M = PolyMatrix.parse(EX_MATRIX, R4)
    I = Ideal(R4, signed_submaximal_pfaffians(M))
    rep = g_s_check(I, M, 4)
    assert rep.holds
    assert [c.i for c in rep.checks] == [1, 2, 3]


def test_gs_hand_worked(R3):
    I = Ideal(R3, "x^2, x*y, y^2")
    phi = PolyMatrix.parse("y, 0; -x, y; 0, -x", R3)
    two = g_s_check(I, phi, 2)
    assert two.holds
    assert two.checks[0].height == 2
    three = g_s_check(I, phi, 3)
    assert not three.holds
    assert three.checks[1].height == 2


def test_gs_koszul(R2):
    I = Ideal(R2, "x, y")
    phi = PolyMatrix.parse("y; -x", R2)
    assert g_s_check(I, phi, 2).holds
    assert g_s_check(I, phi, 1).holds   # vacuous


def test_gs_errors(R2, R3):
    with pytest.raises(ValueError):
        g_s_check(Ideal(R2, "x, y"), PolyMatrix.parse("y; -x; 0", R2), 2)
    with pytest.raises(ValueError):
        g_s_check(Ideal(R2, "x, y"), PolyMatrix.parse("y; -x", R3), 2)


def test_fitting_conventions(R2):
    phi = PolyMatrix.parse("y; -x", R2)
    assert fitting_ideal(phi, 2).is_unit()
    assert fitting_ideal(phi, 0).is_zero()
    assert fitting_ideal(phi, 1) == maximal_ideal(R2)
