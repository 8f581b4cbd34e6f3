import itertools
import json

import pytest

from perv_pn.linalg import PrimeField
from perv_pn.quiver import (algebra_from_json, algebra_to_json, build_An, build_En, cartan_matrix,
                            graded_block_dims, is_associative)
from perv_pn.tables import simples


def expected_cartan(n):
    # P_k has e_k, the loop at k (k < n) and one path to each neighbour
    C = [[0] * (n + 1) for _ in range(n + 1)]
    for k in range(n + 1):
        C[k][k] = 2 if k < n else 1
        for l in (k - 1, k + 1):
            if 0 <= l <= n:
                C[l][k] = 1
    return C


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_An_dimension_and_cartan(n):
    A = build_An(n)
    assert A.dim == 4 * n + 1
    assert cartan_matrix(A) == expected_cartan(n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_An_is_associative(n):
    assert is_associative(build_An(n))
    assert is_associative(build_En(n))


def test_loop_at_zero_survives_loop_at_n_dies():
    n = 2
    A = build_An(n)
    a1, b1 = A.arrow_element("a1"), A.arrow_element("b1")
    assert A.mul(a1, b1)                                    # 0 -> 1 -> 0
    a2, b2 = A.arrow_element("a2"), A.arrow_element("b2")
    assert not A.mul(b2, a2)                                # 2 -> 1 -> 2
    # the middle loop: a_2 b_2 = b_1 a_1 at vertex 1
    assert A.mul(a2, b2) == A.mul(b1, a1) and A.mul(a2, b2)
    assert not A.mul(a1, a2) and not A.mul(b2, b1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sigma_is_anti_involution(n):
    A = build_An(n)
    basis = [{i: A.field.one} for i in range(A.dim)]
    for x, y in itertools.product(basis, repeat=2):
        assert A.sigma(A.mul(x, y)) == A.mul(A.sigma(y), A.sigma(x))
    for x in basis:
        assert A.sigma(A.sigma(x)) == x


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_En_graded_dims_follow_cohomology_of_projective_spaces(n):
    E = build_En(n)
    for k in range(n + 1):
        for l in range(n + 1):
            got = graded_block_dims(E, k, l)
            got = got + [0] * (2 * n + 2 - len(got))
            assert got == [int(simples(k, l, r)) for r in range(2 * n + 2)]


def test_json_roundtrip():
    for A in (build_An(2), build_An(2, PrimeField(5)), build_En(3)):
        doc = json.loads(json.dumps(algebra_to_json(A)))
        B = algebra_from_json(doc)
        assert B.dim == A.dim and B.basis == A.basis and cartan_matrix(B) == cartan_matrix(A)


def test_negative_n_rejected():
    with pytest.raises(ValueError):
        build_An(-1)
