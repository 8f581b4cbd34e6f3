import pytest

from perv_pn.linalg import Matrix
from perv_pn.modules import (Module, census_tags, composition_factors, decompose, direct_sum, dual,
                             hom_dim, identity, injective, is_indecomposable, is_isomorphic, kernel,
                             named, projective, projective_cover, simple, socle, string_object,
                             top)
from perv_pn.quiver import build_An, cartan_matrix


def zigzag_oracle(A, sign, a, b):
    """Z+_{a,b} written down directly: one dimension at each vertex of [b, a];
    the arrow between i and i+1 points down (a_{i+1}) when a - (i+1) is even,
    up (b_{i+1}) otherwise.  Z- is the dual walk with all arrows reversed."""
    n = A.num_vertices - 1
    dims = [1 if b <= v <= a else 0 for v in range(n + 1)]
    Q = A.quiver
    act = []
    for idx, (name, s, t) in enumerate(Q.arrows):
        M = Matrix.zero(dims[t], dims[s], A.field)
        i = int(name[1:])
        if b <= i - 1 and i <= a:
            down = (a - i) % 2 == 0
            if sign == "-":
                down = not down
            if (name[0] == "a") == down:
                M = Matrix.from_lists([[1]], A.field)
        act.append(M)
    return Module(A, dims, act)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_strings_match_the_walk_oracle(n):
    A = build_An(n)
    for a in range(n + 1):
        for b in range(a + 1):
            for sign in "+-":
                Z = string_object(A, sign, a, b)
                W = zigzag_oracle(A, sign, a, b)
                assert Z.dims == W.dims
                assert is_isomorphic(Z, W), (sign, a, b)
                assert is_indecomposable(Z)


def test_small_strings_by_hand():
    A = build_An(2)
    assert is_isomorphic(named(A, "Z+", 1, 0), named(A, "Delta", 1))
    assert is_isomorphic(named(A, "Z-", 1, 0), named(A, "nabla", 1))
    assert is_isomorphic(named(A, "Z+", 2, 2), named(A, "IC", 2))
    assert named(A, "Z+", 2, 0).dims == (1, 1, 1)
    assert not is_isomorphic(named(A, "Z+", 2, 0), named(A, "Z-", 2, 0))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_projectives_follow_cartan_columns(n):
    A = build_An(n)
    C = cartan_matrix(A)
    for k in range(n + 1):
        P = projective(A, k)
        assert list(P.dims) == [C[l][k] for l in range(n + 1)]
        assert top(P)[0].dims == simple(A, k).dims


@pytest.mark.parametrize("n", [1, 2, 3])
def test_projective_injectives(n):
    A = build_An(n)
    for k in range(n):
        assert is_isomorphic(projective(A, k), injective(A, k))
        assert socle(projective(A, k))[0].dims == simple(A, k).dims
    assert is_isomorphic(projective(A, n), named(A, "Delta", n))
    assert not is_isomorphic(projective(A, n), injective(A, n))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_standards_have_two_step_flags(n):
    A = build_An(n)
    for k in range(n + 1):
        D = named(A, "Delta", k)
        want = [1 if v in (k, k - 1) else 0 for v in range(n + 1)]
        assert list(D.dims) == want
        assert top(D)[0].dims == simple(A, k).dims
        assert is_isomorphic(named(A, "nabla", k), dual(D))


@pytest.mark.parametrize("n", [1, 2])
def test_duality_is_involutive(n):
    A = build_An(n)
    for tag in census_tags(n):
        M = named(A, tag)
        assert is_isomorphic(dual(dual(M)), M)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hom_from_projective_is_vertex_slice(n):
    A = build_An(n)
    for tag in census_tags(n):
        M = named(A, tag)
        for k in range(n + 1):
            assert hom_dim(projective(A, k), M) == M.dims[k]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_regular_module_decomposes_into_projectives(n):
    A = build_An(n)
    S, _, _ = direct_sum([projective(A, k) for k in range(n + 1)])
    parts = decompose(S)
    assert sorted(P.dims for P in parts) == sorted(projective(A, k).dims for k in range(n + 1))
    assert all(is_indecomposable(P) for P in parts)


def test_projective_cover_and_kernel():
    A = build_An(1)
    f = projective_cover(simple(A, 0))
    K, _ = kernel(f)
    assert is_isomorphic(K, projective(A, 1))


def test_census_size():
    for n in (1, 2, 3):
        assert len(census_tags(n)) == n + (n + 1) ** 2


def test_identity_and_composition_factors():
    A = build_An(2)
    P = projective(A, 1)
    assert identity(P).is_iso()
    assert composition_factors(P) == (1, 2, 1)


def test_bad_string_indices():
    A = build_An(2)
    with pytest.raises(ValueError):
        string_object(A, "+", 1, 2)
    with pytest.raises(ValueError):
        named(A, "Q", 0)
