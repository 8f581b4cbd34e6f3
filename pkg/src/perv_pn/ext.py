"""Ext groups, Yoneda products and graded endomorphism rings.

Ext^r(M, N) is computed as H^r Hom(res M, N).  A class is a cocycle there;
for composition it is lifted to a closed degree-r map ``res M -> res N``
(``delta F = 0`` and ``eps F = f``), after which Yoneda products are plain
composition, strictly associative on representatives.

Resolutions are memoized per module object; the memo is the only shared
mutable state and is guarded by the algebra's lock (insert-once semantics).
"""
from __future__ import annotations

from dataclasses import dataclass

from .complexes import ChainMap, GradedHom, Resolution, hom_complex, minimal_proj_resolution
from .linalg import Matrix, solve
from .modules import Module, _mat_vec, proj_offsets


def resolution(M: Module) -> Resolution:
    """Cached minimal projective resolution of M (maxdeg = 2n)."""
    A = M.algebra
    key = ("res", id(M))
    with A.cache_lock:
        hit = A.cache.get(key)
        if hit is not None and hit[0] is M:
            return hit[1]
    R = minimal_proj_resolution(M)
    with A.cache_lock:
        hit = A.cache.get(key)
        if hit is not None and hit[0] is M:
            return hit[1]
        A.cache[key] = (M, R)     # M is kept alive so id(M) cannot be reused
    return R


def ext_complex(M: Module, N: Module) -> GradedHom:
    A = M.algebra
    key = ("extcx", id(M), id(N))
    with A.cache_lock:
        hit = A.cache.get(key)
        if hit is not None and hit[0] is M and hit[1] is N:
            return hit[2]
    V = hom_complex(resolution(M).complex, N)
    with A.cache_lock:
        A.cache.setdefault(key, (M, N, V))
    return V


def ext_dim(M: Module, N: Module, r: int) -> int:
    if r < 0:
        return 0
    return ext_complex(M, N).cohomology_dim(r)


def ext_dims(M: Module, N: Module, rmax: int | None = None) -> list[int]:
    """[dim Ext^r(M, N) for r = 0..rmax]; rmax defaults to 2n."""
    if rmax is None:
        rmax = 2 * (M.algebra.num_vertices - 1)
    V = ext_complex(M, N)
    return [V.cohomology_dim(r) for r in range(rmax + 1)]


@dataclass
class ExtClass:
    """A class in Ext^r(M, N), represented by a cocycle of Hom(res M, N)."""

    source: Module
    target: Module
    degree: int
    cocycle: dict

    @property
    def ambient(self) -> GradedHom:
        return ext_complex(self.source, self.target)

    def coords(self) -> list:
        c = self.ambient.class_coords(self.degree, self.cocycle)
        if c is None:
            raise AssertionError("representative is not a cocycle")
        return c

    def is_zero(self) -> bool:
        return not any(self.coords())

    def __add__(self, other: "ExtClass") -> "ExtClass":
        v = dict(self.cocycle)
        for j, x in other.cocycle.items():
            w = v.get(j, 0) + x
            if w:
                v[j] = w
            else:
                v.pop(j, None)
        return ExtClass(self.source, self.target, self.degree, v)

    def scale(self, c) -> "ExtClass":
        F = self.source.field
        c = F(c)
        return ExtClass(self.source, self.target, self.degree,
                        {j: c * x for j, x in self.cocycle.items()} if c else {})

    def lift(self) -> ChainMap:
        return lift(self)


def ext_basis(M: Module, N: Module, r: int) -> list[ExtClass]:
    V = ext_complex(M, N)
    if r < 0 or not V.dim(r):
        return []
    return [ExtClass(M, N, r, z) for z in V.cohomology(r)[2]]


def identity_class(M: Module) -> ExtClass:
    """The class of id_M in Ext^0(M, M) (the augmentation)."""
    V = ext_complex(M, M)
    R = resolution(M)
    comps = {(0, q): w for q, w in enumerate(R.generator_images()) if w}
    return ExtClass(M, M, 0, V.from_components(0, comps))


def augmentation_pushforward(W: GradedHom, RN: Resolution, V: GradedHom, r: int) -> Matrix:
    """Matrix of eps_*: W^r = Hom^r(res M, res N) -> V^r = Hom^r(res M, N)."""
    N = RN.module
    A = N.algebra
    gens = RN.generator_images()
    PN0 = RN.complex.term(0)
    rows = [dict() for _ in range(V.dim(r))]
    for (i, p, v, off, size) in W.blocks.get(r, []):
        if i + r != 0 or (i, p) not in V.index.get(r, {}):
            continue
        voff, _ = V.index[r][(i, p)]
        # block coordinates: basis of e_v A e_{t_q} for each summand q of (res N)^0
        offs = proj_offsets(A, PN0, v)
        for q, t in enumerate(PN0):
            for j, b in enumerate(A.paths_between(t, v)):
                img = _mat_vec(N.act_basis(b), gens[q])
                col = off + offs[q] + j
                for a, c in img.items():
                    rows[voff + a][col] = c
    return Matrix(V.dim(r), W.dim(r), rows, A.field)


def lift(f: ExtClass) -> ChainMap:
    """Closed degree-r map F: res M -> res N with eps F = f (exists by projectivity)."""
    M, N, r = f.source, f.target, f.degree
    A = M.algebra
    key = ("lift", id(M), id(N), r, tuple(sorted(f.cocycle.items())))
    with A.cache_lock:
        hit = A.cache.get(key)
        if hit is not None and hit[0] is M and hit[1] is N:
            return hit[2]
    RM, RN = resolution(M), resolution(N)
    W = _res_hom(M, N)
    V = ext_complex(M, N)
    F = A.field
    if not W.dim(r):
        if any(f.cocycle.values()):
            raise AssertionError("lift failed: no maps in this degree")
        return ChainMap(RM.complex, RN.complex, r, {})
    E = augmentation_pushforward(W, RN, V, r)
    D = W.diff(r)
    sysm = D.vstack(E)
    rhs = [F.zero] * D.nrows + [f.cocycle.get(j, F.zero) for j in range(V.dim(r))]
    x = solve(sysm, rhs)
    if x is None:
        raise AssertionError("lift failed: class does not lift to a chain map")
    Fm = W.to_chainmap(r, {j: c for j, c in enumerate(x) if c})
    with A.cache_lock:
        A.cache.setdefault(key, (M, N, Fm))
    return Fm


def _res_hom(M: Module, N: Module) -> GradedHom:
    A = M.algebra
    key = ("reshom", id(M), id(N))
    with A.cache_lock:
        hit = A.cache.get(key)
        if hit is not None and hit[0] is M and hit[1] is N:
            return hit[2]
    W = hom_complex(resolution(M).complex, resolution(N).complex)
    with A.cache_lock:
        A.cache.setdefault(key, (M, N, W))
    return W


def compose_with_cocycle(M: Module, F: ChainMap, g: ExtClass) -> dict:
    """The cocycle of g o F in Hom(res M, L), for F: res M -> res N closed."""
    L = g.target
    Vg = g.ambient
    r, s = F.degree, g.degree
    gcomp = Vg.components(s, g.cocycle)
    out_V = ext_complex(M, L)
    comps = {}
    for i, C in F.comps.items():
        if i + r + s != 0:
            continue
        src = F.source.terms[i]
        tgt = F.target.terms[i + r]
        for p, row in C.items():
            acc: dict = {}
            for q, x in row.items():
                y = gcomp.get((i + r, q))
                if not y:
                    continue
                w = _mat_vec(L.act(x, tgt[q], src[p]), y)
                for j, c in w.items():
                    v = acc.get(j, 0) + c
                    if v:
                        acc[j] = v
                    else:
                        acc.pop(j, None)
            if acc:
                comps[(i, p)] = acc
    return out_V.from_components(r + s, comps)


def yoneda_compose(g: ExtClass, f: ExtClass) -> ExtClass:
    """g . f in Ext^{r+s}(M, L) for f in Ext^r(M, N), g in Ext^s(N, L)."""
    if f.target is not g.source:
        raise ValueError("classes are not composable (target of f must be source of g)")
    M, L = f.source, g.target
    return ExtClass(M, L, f.degree + g.degree, compose_with_cocycle(M, lift(f), g))


# -- graded endomorphism rings -------------------------------------------------------------


@dataclass
class EndProfile:
    dims: list[int]                  # dim Ext^r(M, M), r = 0..2n
    pattern_k: int | None            # k when dims = (1,0,1,...,1) up to 2k, else None
    power: int | None                # largest m with t^m != 0 (None if pattern fails)

    @property
    def p_like(self) -> int | None:
        """k when M is P^k-like, else None."""
        if self.pattern_k is not None and self.power == self.pattern_k:
            return self.pattern_k
        return None


def graded_end_ring_profile(M: Module) -> EndProfile:
    n = M.algebra.num_vertices - 1
    dims = ext_dims(M, M, 2 * n)
    k = None
    for cand in range(n + 1):
        if dims == [1 if (r % 2 == 0 and r <= 2 * cand) else 0 for r in range(2 * n + 1)]:
            k = cand
    if k is None:
        return EndProfile(dims, None, None)
    if k == 0:
        return EndProfile(dims, 0, 0)
    t = ext_basis(M, M, 2)[0]
    power, cur = 1, t
    while power < n + 1:
        nxt = yoneda_compose(t, cur)
        if nxt.is_zero():
            break
        cur = nxt
        power += 1
    return EndProfile(dims, k, power)
