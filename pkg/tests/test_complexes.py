import json
import random
from pathlib import Path

import pytest

from perv_pn.complexes import (ProjComplex, VectorComplex, chainmap_space, complex_from_json,
                               complex_to_json, complexes_iso, cone, direct_sum_complexes,
                               hom_complex, identity_map, minimal_perfect, realize, shift, stalk,
                               tensor_ghom, verify_certificate)
from perv_pn.ext import resolution
from perv_pn.linalg import Matrix
from perv_pn.modules import census_tags, named
from perv_pn.quiver import build_An

GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("k", [0, 1])
def test_n1_resolutions_match_golden(k):
    A = build_An(1)
    want = json.loads((GOLDEN / f"res_A1_IC{k}.json").read_text())
    C = resolution(named(A, "IC", k)).complex
    assert complex_to_json(C) == want
    assert complex_to_json(complex_from_json(A, want)) == want


@pytest.mark.parametrize("n", [1, 2, 3])
def test_resolutions_are_exact_and_minimal(n):
    A = build_An(n)
    for tag in census_tags(n):
        M = named(A, tag)
        C = resolution(M).complex
        assert C.is_minimal()
        assert C.homology() == {0: M.dims}
        assert C.lo >= -2 * n


def test_bad_differential_is_rejected():
    A = build_An(1)
    b1 = A.arrow_element("b1")
    a1 = A.arrow_element("a1")
    with pytest.raises(ValueError):
        # P_0 -> P_1 -> P_0: the composite is the nonzero loop at vertex 0
        ProjComplex(A, {-2: (0,), -1: (1,), 0: (0,)}, {-2: {0: {0: a1}}, -1: {0: {0: b1}}})
    # the other order composes to the zero loop at vertex 1
    ProjComplex(A, {-2: (1,), -1: (0,), 0: (1,)}, {-2: {0: {0: b1}}, -1: {0: {0: a1}}})
    with pytest.raises(ValueError):
        ProjComplex(A, {0: (0,), 1: (0,)}, {0: {0: {0: b1}}})


def test_shift_convention():
    A = build_An(2)
    C = resolution(named(A, "IC", 1)).complex
    S = shift(C, 1)
    assert all(S.terms[i] == C.terms[i + 1] for i in S.degrees)
    assert shift(S, -1).multiplicities() == C.multiplicities()
    assert S.homology() == {-1: named(A, "IC", 1).dims}


def test_cone_of_identity_is_contractible():
    A = build_An(2)
    for k in range(3):
        C = cone(identity_map(stalk(A, (k,))))
        assert minimal_perfect(C).is_zero()
    C = resolution(named(A, "Z+", 2, 0)).complex
    assert minimal_perfect(cone(identity_map(C))).is_zero()


def test_minimal_complex_unchanged():
    A = build_An(2)
    C = resolution(named(A, "IC", 2)).complex
    assert minimal_perfect(C).multiplicities() == C.multiplicities()


def test_minimal_perfect_preserves_homology_on_random_cones():
    A = build_An(2)
    rng = random.Random(7)
    tags = census_tags(2)
    for _ in range(15):
        s, t = rng.sample(tags, 2)
        C, D = resolution(named(A, s)).complex, resolution(named(A, t)).complex
        basis = chainmap_space(C, D)
        if not basis:
            continue
        f = basis[0].scale(rng.randint(1, 3))
        for g in basis[1:]:
            f = f + g.scale(rng.randint(-2, 2))
        K = cone(f)
        M = minimal_perfect(K)
        assert M.is_minimal()
        assert M.homology() == K.homology()


def test_hom_complex_from_projective_is_vertex_slice():
    A = build_An(2)
    for tag in census_tags(2):
        M = named(A, tag)
        for k in range(3):
            V = hom_complex(stalk(A, (k,)), M)
            assert {r: d for r, d in V.cohomology_dims().items() if d} == ({0: M.dims[k]} if M.dims[k] else {})


def test_hom_resolution_into_injective_top():
    # Hom(res IC_n, I_n) = Hom(IC_n, I_n): one-dimensional in degree 0 only
    A = build_An(2)
    V = hom_complex(resolution(named(A, "IC", 2)).complex, named(A, "I", 2))
    assert {r: d for r, d in V.cohomology_dims().items() if d} == {0: 1}


def test_tensor_with_vector_complexes():
    A = build_An(2)
    F = A.field
    P = resolution(named(A, "Z-", 2, 1)).complex
    one = VectorComplex(F, {0: 1}, {})
    assert tensor_ghom(one, P).multiplicities() == P.multiplicities()
    for m in (-2, 1, 3):
        V = VectorComplex(F, {m: 1}, {})
        assert tensor_ghom(V, P).multiplicities() == shift(P, -m).multiplicities()
    acyclic = VectorComplex(F, {0: 1, 1: 1}, {0: Matrix.identity(1, F)})
    T = tensor_ghom(acyclic, P)
    assert T.homology() == {}
    assert minimal_perfect(T).is_zero()


def test_complexes_iso_outcomes():
    A = build_An(1)
    C0 = resolution(named(A, "IC", 0)).complex
    C1 = resolution(named(A, "IC", 1)).complex
    res = complexes_iso(C1, C1, seed=3)
    assert res.status == "certified" and verify_certificate(res.certificate)
    assert complexes_iso(C0, C1).status == "refuted"
    assert complexes_iso(shift(C1, 1), C1).status == "refuted"


def test_iso_certificate_for_rebuilt_complex():
    A = build_An(2)
    C = resolution(named(A, "Z+", 2, 0)).complex
    D = complex_from_json(A, json.loads(json.dumps(complex_to_json(C))))
    res = complexes_iso(C, D, seed=1)
    assert res.status == "certified"
    assert verify_certificate(res.certificate)


def test_direct_sum_and_realize():
    A = build_An(2)
    C = resolution(named(A, "IC", 0)).complex
    D = resolution(named(A, "IC", 2)).complex
    S = direct_sum_complexes([C, D])
    assert S.homology() == {0: (1, 0, 1)}
    assert realize(S).homology() == {0: (1, 0, 1)}
