import random

import sympy
from hypothesis import given, settings, strategies as st

from perv_pn.linalg import (QQ, Matrix, PrimeField, Subspace, field_from_spec, kernel_basis,
                            random_matrix, rank, rref, solve)


def _to_sympy(M):
    return sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in row]
                         for row in M.to_lists()])


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_rank_matches_sympy(data):
    M = Matrix.from_lists(data)
    assert rank(M) == sympy.Matrix(data).rank()


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_rref_matches_sympy(data):
    R, piv = rref(Matrix.from_lists(data))
    S, spiv = sympy.Matrix(data).rref()
    assert list(piv) == list(spiv)
    assert _to_sympy(R) == S


@settings(max_examples=200, deadline=None)
@given(matrices, st.integers(0, 2**31))
def test_kernel_is_annihilated(data, seed):
    M = Matrix.from_lists(data)
    K = kernel_basis(M)
    assert K.ncols == M.ncols - rank(M)
    assert all(not any(row) for row in (M @ K).to_lists()) if K.ncols else True


def _check_plumbing(M, rng):
    R, piv = rref(M)
    R2, piv2 = rref(R)
    assert R2.to_lists() == R.to_lists() and piv2 == piv
    r = rank(M)
    assert r == len(piv)
    K = kernel_basis(M)
    assert r + K.ncols == M.ncols
    if K.ncols:
        assert (M @ K).rank() == 0
        assert K.rank() == K.ncols
    x = [M.field(rng.randint(-3, 3)) for _ in range(M.ncols)]
    b = M.apply(x)
    y = solve(M, b)
    assert y is not None and M.apply(y) == b


def test_plumbing_on_1000_random_matrices():
    rng = random.Random(20240601)
    for i in range(1000):
        field = QQ if i % 4 else PrimeField(7)
        M = random_matrix(rng, rng.randint(1, 20), rng.randint(1, 20), field,
                          density=rng.choice([0.2, 0.5, 1.0]))
        _check_plumbing(M, rng)


def test_solve_reports_inconsistency():
    M = Matrix.from_lists([[1, 0], [0, 0]])
    assert solve(M, [QQ(1), QQ(1)]) is None


def test_det_and_identity():
    assert Matrix.identity(4).det() == 1
    assert Matrix.from_lists([[1, 2], [3, 4]]).det() == -2


def test_prime_field_arithmetic():
    F = field_from_spec("7")
    assert F(3) * F(5) == F(1)
    assert F(3) * F(5) ** -1 == F(2)
    assert Matrix.from_lists([[1, 2], [3, 6]], F).rank() == 1
    assert Matrix.from_lists([[2, 0], [0, 1]], field_from_spec(2)).rank() == 1


def test_subspace_contains_and_complement():
    S = Subspace(3, [{0: QQ(1), 1: QQ(1)}])
    assert S.contains({0: QQ(2), 1: QQ(2)})
    assert not S.contains({0: QQ(1)})
    assert S.dim == 1
