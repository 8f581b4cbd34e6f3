import itertools

import pytest

from perv_pn.complexes import (complexes_iso, direct_sum_complexes, hom_complex, minimal_perfect,
                               realize, shift, stalk, tensor_ghom, verify_certificate)
from perv_pn.ext import resolution, yoneda_compose
from perv_pn.functors import (cy_check, inverse_serre, is_zero_spherical, p_twist, ptwist_context,
                              serre, serre_duality_check, twist_map, verify_serre_equals_ptwist)
from perv_pn.modules import census_tags, named, zero_module
from perv_pn.quiver import build_An


def certified(C, D, seed=0):
    for k in range(5):
        res = complexes_iso(C, D, seed=seed + k)
        if res.status != "inconclusive":
            break
    if res.status == "certified":
        assert verify_certificate(res.certificate)
    return res.status == "certified"


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_serre_sends_projectives_to_injectives(n):
    A = build_An(n)
    for k in range(n + 1):
        S = serre(stalk(A, (k,)))
        assert certified(S, resolution(named(A, "I", k)).complex)
        if k < n:
            assert certified(S, stalk(A, (k,)))


@pytest.mark.parametrize("n", [1, 2])
def test_serre_inverts_inverse_serre(n):
    A = build_An(n)
    for tag in census_tags(n):
        M = named(A, tag)
        assert certified(serre(inverse_serre(M)), resolution(M).complex), tag
        assert certified(inverse_serre(serre(M)), resolution(M).complex), tag


def test_serre_of_top_simple_at_n1():
    A = build_An(1)
    E = resolution(named(A, "IC", 1)).complex
    assert certified(serre(E), shift(E, 2))
    assert not certified(serre(E), E)


def test_serre_is_additive():
    A = build_An(2)
    C = resolution(named(A, "Z+", 2, 0)).complex
    D = resolution(named(A, "IC", 1)).complex
    assert certified(serre(direct_sum_complexes([C, D])),
                     direct_sum_complexes([serre(C), serre(D)]))


def test_serre_duality_on_all_pairs_n2():
    A = build_An(2)
    objs = [named(A, t) for t in census_tags(2)] + [named(A, "P", 2)]
    for X, Y in itertools.product(objs, repeat=2):
        assert serre_duality_check(X, Y)
    assert serre_duality_check(zero_module(A), objs[0])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cy_examples(n):
    A = build_An(n)
    assert cy_check(named(A, "IC", n), 2 * n).value
    for k in range(n):
        assert not cy_check(named(A, "IC", k), 2 * k).value
        res = cy_check(named(A, "P", k), 0)
        assert res.value and res.method == "serre"
    assert cy_check(named(A, "IC", n), 2 * n).method == "pairing"


@pytest.mark.parametrize("n", [1, 2, 3])
def test_zero_spherical(n):
    A = build_An(n)
    assert all(is_zero_spherical(named(A, "P", k)) for k in range(n))
    assert not is_zero_spherical(named(A, "P", n))
    assert not any(is_zero_spherical(named(A, t)) for t in census_tags(n) if t[0] != "P")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ptwist_context_generator(n):
    ctx = ptwist_context(build_An(n))
    assert ctx.t.degree == 2 and ctx.t.is_closed()
    p = ctx.generator
    for _ in range(n - 1):
        p = yoneda_compose(ctx.generator, p)
    assert not p.is_zero()
    assert yoneda_compose(ctx.generator, p).is_zero()


def test_twist_map_is_closed():
    A = build_An(2)
    ctx = ptwist_context(A)
    V = hom_complex(ctx.E, realize(resolution(named(A, "Z+", 2, 0)).complex))
    T = tensor_ghom(V, ctx.E)
    assert twist_map(V, ctx.E, T, ctx.t).is_closed()


@pytest.mark.parametrize("n", [1, 2])
def test_ptwist_anchors(n):
    A = build_An(n)
    ctx = ptwist_context(A)
    assert certified(p_twist(ctx, named(A, "IC", n)), shift(ctx.E, -2 * n))
    for k in range(n + 1):
        assert certified(p_twist(ctx, named(A, "I", k)), stalk(A, (k,)))
    for k in range(n):
        assert certified(p_twist(ctx, named(A, "P", k)), stalk(A, (k,)))


def test_negative_controls_are_refuted():
    A = build_An(2)
    ctx = ptwist_context(A)
    assert complexes_iso(p_twist(ctx, named(A, "IC", 0)), inverse_serre(named(A, "IC", 1))).status == "refuted"
    assert complexes_iso(p_twist(ctx, named(A, "IC", 2)), ctx.E).status == "refuted"
    assert complexes_iso(serre(named(A, "IC", 2)), minimal_perfect(shift(ctx.E, 2))).status == "refuted"


@pytest.mark.parametrize("n,count", [(1, 5), (2, 11)])
def test_serre_equals_ptwist(n, count):
    rep = verify_serre_equals_ptwist(build_An(n), seed=0)
    assert len(rep.rows) == count
    assert rep.ok, [(r.label, r.status) for r in rep.rows if r.status != "certified"]
