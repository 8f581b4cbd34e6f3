"""Bounded complexes of projectives and of modules.

Conventions (see docs/conventions.md):

* cohomological grading, ``d^i : C^i -> C^{i+1}``;
* a differential between sums of projectives is a sparse matrix ``D[p][q]``
  with ``D[p][q]`` in ``e_{s_p} A e_{t_q}``; the summand ``P_{s_p}`` maps by
  right multiplication, so "first D then D'" is the matrix product ``D * D'``;
* shift ``C[m]^i = C^{i+m}`` with differential ``(-1)^m d``;
* Hom complex ``(delta f) = d f - (-1)^r f d`` for f of degree r;
* cone of a degree-0 chain map f: ``cone^i = C^{i+1} + D^i``,
  ``d(c, y) = (-d c, f c + d y)``;
* tensor with a complex of vector spaces ``d(v x p) = dv x p + (-1)^|v| v x dp``.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .linalg import Matrix, Subspace, kernel_vectors, solve
from .modules import (Module, Morphism, _mat_vec, direct_sum, elements_to_vector, kernel,
                      map_from_projectives, proj_sum, projective_cover, projective_map,
                      vector_to_elements, zero_module, dual, dual_morphism)
from .quiver import PathAlgebra

# -- sparse matrices over the algebra ------------------------------------------------


def amat_mul(A: PathAlgebra, X: dict, Y: dict) -> dict:
    out: dict = {}
    for p, row in X.items():
        acc: dict = {}
        for q, x in row.items():
            for r, y in Y.get(q, {}).items():
                prod = A.mul(x, y)
                if prod:
                    acc[r] = A.add(acc.get(r, {}), prod)
        acc = {r: v for r, v in acc.items() if v}
        if acc:
            out[p] = acc
    return out


def amat_add(A: PathAlgebra, X: dict, Y: dict, c=1) -> dict:
    out = {p: dict(row) for p, row in X.items()}
    for p, row in Y.items():
        tgt = out.setdefault(p, {})
        for q, y in row.items():
            v = A.add(tgt.get(q, {}), y, c)
            if v:
                tgt[q] = v
            else:
                tgt.pop(q, None)
    return {p: row for p, row in out.items() if row}


def amat_scale(A: PathAlgebra, X: dict, c) -> dict:
    if not c:
        return {}
    return {p: {q: A.scale(x, c) for q, x in row.items()} for p, row in X.items()}


def _sign(m: int) -> int:
    return -1 if m % 2 else 1


# -- complexes of projectives ---------------------------------------------------------


class ProjComplex:
    """Bounded complex of sums of indecomposable projectives.

    ``terms[i]`` is a tuple of vertices (one per summand), ``diffs[i]`` the
    sparse matrix of ``d^i``.  d^2 = 0 is checked on construction.
    """

    def __init__(self, algebra: PathAlgebra, terms: dict, diffs: dict, check: bool = True):
        self.algebra = algebra
        self.terms = {i: tuple(t) for i, t in terms.items() if len(t)}
        self.diffs = {}
        for i, D in diffs.items():
            if i in self.terms and i + 1 in self.terms:
                D = {p: {q: x for q, x in row.items() if x} for p, row in D.items()}
                D = {p: row for p, row in D.items() if row}
                if D:
                    self.diffs[i] = D
        if check:
            self.check()

    def check(self):
        A = self.algebra
        for i, D in self.diffs.items():
            src, tgt = self.terms[i], self.terms[i + 1]
            for p, row in D.items():
                for q, x in row.items():
                    for b in x:
                        if A.source(b) != tgt[q] or A.target(b) != src[p]:
                            raise ValueError(f"differential entry ({p},{q}) in degree {i} "
                                             "has wrong endpoints")
        for i in self.diffs:
            if i + 1 in self.diffs and amat_mul(A, self.diffs[i], self.diffs[i + 1]):
                raise ValueError(f"d^2 != 0 in degree {i}")

    # basic data
    @property
    def field(self):
        return self.algebra.field

    def term(self, i: int) -> tuple:
        return self.terms.get(i, ())

    def diff(self, i: int) -> dict:
        return self.diffs.get(i, {})

    @property
    def degrees(self) -> list[int]:
        return sorted(self.terms)

    @property
    def lo(self):
        return min(self.terms) if self.terms else 0

    @property
    def hi(self):
        return max(self.terms) if self.terms else -1

    def is_zero(self) -> bool:
        return not self.terms

    def multiplicities(self) -> dict[int, tuple[int, ...]]:
        """degree -> multiplicity of each P_k."""
        N = self.algebra.num_vertices
        out = {}
        for i, t in self.terms.items():
            c = Counter(t)
            out[i] = tuple(c.get(k, 0) for k in range(N))
        return out

    def size(self) -> int:
        return sum(len(t) for t in self.terms.values())

    def is_minimal(self) -> bool:
        return all(self.algebra.is_radical(x) for D in self.diffs.values()
                   for row in D.values() for x in row.values())

    def homology(self) -> dict[int, tuple[int, ...]]:
        return realize(self).homology()

    def to_json(self) -> dict:
        return complex_to_json(self)

    def __repr__(self):
        body = ", ".join(f"{i}: {list(self.terms[i])}" for i in self.degrees)
        return f"ProjComplex({{{body}}})"


def zero_complex(A: PathAlgebra) -> ProjComplex:
    return ProjComplex(A, {}, {})


def stalk(A: PathAlgebra, vertices: Sequence[int], degree: int = 0) -> ProjComplex:
    return ProjComplex(A, {degree: tuple(vertices)}, {})


def shift(C: ProjComplex, m: int) -> ProjComplex:
    """C[m]: C[m]^i = C^{i+m}, differential (-1)^m d."""
    A = C.algebra
    s = _sign(m)
    return ProjComplex(A, {i - m: t for i, t in C.terms.items()},
                       {i - m: amat_scale(A, D, A.field(s)) for i, D in C.diffs.items()},
                       check=False)


def direct_sum_complexes(Cs: Sequence[ProjComplex]) -> ProjComplex:
    A = Cs[0].algebra
    terms, diffs, offs = {}, {}, []
    for C in Cs:
        off = {i: len(terms.get(i, ())) for i in C.terms}
        offs.append(off)
        for i, t in C.terms.items():
            terms[i] = terms.get(i, ()) + t
    for C, off in zip(Cs, offs):
        for i, D in C.diffs.items():
            tgt = diffs.setdefault(i, {})
            for p, row in D.items():
                tgt[p + off[i]] = {q + off[i + 1]: x for q, x in row.items()}
    return ProjComplex(A, terms, diffs, check=False)


@dataclass
class ChainMap:
    """Degree-r map ``comps[i]: source^i -> target^{i+r}`` (sparse algebra matrices).

    It is *closed* when ``d f - (-1)^r f d = 0``; closed degree-0 maps are chain maps.
    """

    source: ProjComplex
    target: ProjComplex
    degree: int
    comps: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.comps = {i: C for i, C in self.comps.items() if C}

    @property
    def algebra(self):
        return self.source.algebra

    def comp(self, i: int) -> dict:
        return self.comps.get(i, {})

    def differential(self) -> dict:
        """Components of delta(f), a map of degree r+1."""
        A = self.algebra
        r = self.degree
        out = {}
        degs = set(self.comps) | {i - 1 for i in self.comps}
        for i in degs:
            a = amat_mul(A, self.comp(i), self.target.diff(i + r))
            b = amat_mul(A, self.source.diff(i), self.comp(i + 1))
            v = amat_add(A, a, b, A.field(-_sign(r)))
            if v:
                out[i] = v
        return out

    def is_closed(self) -> bool:
        return not self.differential()

    def then(self, g: "ChainMap") -> "ChainMap":
        """g after self."""
        A = self.algebra
        r = self.degree
        comps = {i: amat_mul(A, C, g.comp(i + r)) for i, C in self.comps.items()}
        return ChainMap(self.source, g.target, r + g.degree, comps)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        A = self.algebra
        keys = set(self.comps) | set(other.comps)
        return ChainMap(self.source, self.target, self.degree,
                        {i: amat_add(A, self.comp(i), other.comp(i)) for i in keys})

    def scale(self, c) -> "ChainMap":
        A = self.algebra
        return ChainMap(self.source, self.target, self.degree,
                        {i: amat_scale(A, C, A.field(c)) for i, C in self.comps.items()})

    def is_zero(self) -> bool:
        return not self.comps

    def as_degree_zero(self) -> "ChainMap":
        """The same components viewed as a degree-0 map source[-r] -> target."""
        r = self.degree
        return ChainMap(shift(self.source, -r), self.target, 0,
                        {i + r: C for i, C in self.comps.items()})

    def top_matrices(self, i: int) -> dict[int, Matrix]:
        """Per vertex k, the scalar (mod radical) matrix of comp(i) between P_k summands."""
        A = self.algebra
        F = A.field
        src, tgt = self.source.term(i), self.target.term(i + self.degree)
        out = {}
        for k in set(src) | set(tgt):
            ps = [p for p, v in enumerate(src) if v == k]
            qs = [q for q, v in enumerate(tgt) if v == k]
            pos = {q: j for j, q in enumerate(qs)}
            C = self.comp(i)
            rows = []
            for p in ps:
                row = {}
                for q, x in C.get(p, {}).items():
                    if q in pos:
                        c = A.unit_part(x)
                        if c:
                            row[pos[q]] = c
                rows.append(row)
            out[k] = Matrix(len(ps), len(qs), rows, F)
        return out

    def is_iso(self) -> bool:
        """Degree-0 map with every component invertible (checked on tops)."""
        if self.degree != 0:
            return False
        degs = set(self.source.terms) | set(self.target.terms)
        for i in degs:
            for M in self.top_matrices(i).values():
                if M.nrows != M.ncols or M.rank() != M.nrows:
                    return False
        return True


def identity_map(C: ProjComplex) -> ChainMap:
    A = C.algebra
    F = A.field
    comps = {i: {p: {p: {A.idempotent(v): F.one}} for p, v in enumerate(t)}
             for i, t in C.terms.items()}
    return ChainMap(C, C, 0, comps)


def cone(f: ChainMap) -> ProjComplex:
    """Mapping cone of a closed degree-0 map; summands ordered (C^{i+1}, D^i)."""
    if f.degree != 0:
        raise ValueError("cone needs a degree-0 map; use as_degree_zero() first")
    C, D = f.source, f.target
    A = C.algebra
    minus = A.field(-1)
    degs = {i - 1 for i in C.terms} | set(D.terms)
    terms = {i: C.term(i + 1) + D.term(i) for i in degs}
    diffs = {}
    for i in degs:
        nc = len(C.term(i + 1))
        nc2 = len(C.term(i + 2))
        M: dict = {}
        for p, row in C.diff(i + 1).items():
            M[p] = {q: A.scale(x, minus) for q, x in row.items()}
        for p, row in f.comp(i + 1).items():
            M.setdefault(p, {}).update({nc2 + q: x for q, x in row.items()})
        for p, row in D.diff(i).items():
            M[nc + p] = {nc2 + q: x for q, x in row.items()}
        diffs[i] = M
    return ProjComplex(A, terms, diffs)


# -- complexes of modules -------------------------------------------------------------


class ModComplex:
    """Bounded complex of modules with morphism differentials."""

    def __init__(self, algebra: PathAlgebra, terms: dict, diffs: dict, check: bool = True):
        self.algebra = algebra
        self.terms = {i: M for i, M in terms.items() if M.dim}
        self.diffs = {i: f for i, f in diffs.items() if i in self.terms and i + 1 in self.terms}
        if check:
            for i, f in self.diffs.items():
                g = self.diffs.get(i + 1)
                if g is not None and not (g @ f).is_zero():
                    raise ValueError(f"d^2 != 0 in degree {i}")

    @property
    def field(self):
        return self.algebra.field

    def term(self, i: int) -> Module:
        M = self.terms.get(i)
        return M if M is not None else zero_module(self.algebra)

    def diff(self, i: int) -> Morphism | None:
        return self.diffs.get(i)

    @property
    def lo(self):
        return min(self.terms) if self.terms else 0

    @property
    def hi(self):
        return max(self.terms) if self.terms else -1

    def homology(self) -> dict[int, tuple[int, ...]]:
        """degree -> dimension vector of H^i (only nonzero degrees)."""
        out = {}
        N = self.algebra.num_vertices
        for i, M in self.terms.items():
            d_out, d_in = self.diffs.get(i), self.diffs.get(i - 1)
            dims = []
            for v in range(N):
                z = M.dims[v] - (d_out.mats[v].rank() if d_out else 0)
                b = d_in.mats[v].rank() if d_in else 0
                dims.append(z - b)
            if any(dims):
                out[i] = tuple(dims)
        return out


def stalk_module(M: Module, degree: int = 0) -> ModComplex:
    return ModComplex(M.algebra, {degree: M}, {})


def realize(C: ProjComplex) -> ModComplex:
    """The complex of modules underlying a complex of projectives."""
    A = C.algebra
    terms = {i: proj_sum(A, t) for i, t in C.terms.items()}
    diffs = {}
    for i, D in C.diffs.items():
        src, tgt = C.terms[i], C.terms[i + 1]
        dense = [[D.get(p, {}).get(q, {}) for q in range(len(tgt))] for p in range(len(src))]
        f = projective_map(A, src, tgt, dense)
        diffs[i] = Morphism(terms[i], terms[i + 1], f.mats, check=False)
    X = ModComplex(A, terms, diffs, check=False)
    X.proj = C
    return X


def dual_complex(X: ModComplex) -> ModComplex:
    """Termwise twisted dual: D(X)^i = D(X^{-i})."""
    A = X.algebra
    terms = {-i: dual(M) for i, M in X.terms.items()}
    diffs = {-i - 1: dual_morphism(f) for i, f in X.diffs.items()}
    for i, f in diffs.items():
        diffs[i] = Morphism(terms[i], terms[i + 1], f.mats, check=False)
    return ModComplex(A, terms, diffs)


# -- complexes of vector spaces and Hom complexes ---------------------------------------


class VectorComplex:
    """Complex of finite-dimensional vector spaces; ``diffs[r]`` is dims[r+1] x dims[r]."""

    def __init__(self, field, dims: dict, diffs: dict, check: bool = True):
        self.field = field
        self.dims = {r: d for r, d in dims.items() if d}
        self.diffs = {r: M for r, M in diffs.items()
                      if r in self.dims and r + 1 in self.dims and not M.is_zero()}
        self._coh: dict = {}
        if check:
            for r, M in self.diffs.items():
                N = self.diffs.get(r + 1)
                if N is not None and not (N @ M).is_zero():
                    raise ValueError(f"d^2 != 0 in degree {r}")

    def dim(self, r: int) -> int:
        return self.dims.get(r, 0)

    def diff(self, r: int) -> Matrix:
        M = self.diffs.get(r)
        if M is None:
            return Matrix.zero(self.dim(r + 1), self.dim(r), self.field)
        return M

    def cohomology(self, r: int):
        """(cocycle basis, coboundary subspace, class representatives) in degree r."""
        if r not in self._coh:
            Z = kernel_vectors(self.diff(r)) if self.dim(r) else []
            B = Subspace(self.dim(r), self.diff(r - 1).columns() if self.dim(r - 1) else [],
                         self.field)
            reps = []
            S = Subspace(self.dim(r), B.basis(), self.field)
            for z in Z:
                if not S.contains(z):
                    S.add_all([z])
                    reps.append(z)
            self._coh[r] = (Z, B, reps)
        return self._coh[r]

    def cohomology_dim(self, r: int) -> int:
        return len(self.cohomology(r)[2])

    def cohomology_dims(self) -> dict[int, int]:
        return {r: self.cohomology_dim(r) for r in sorted(self.dims)
                if self.cohomology_dim(r)}

    def is_cocycle(self, r: int, v: dict) -> bool:
        return not _mat_vec(self.diff(r), v)

    def class_coords(self, r: int, v: dict) -> list | None:
        """Coordinates of the class of a cocycle in the representative basis."""
        _, B, reps = self.cohomology(r)
        if not reps:
            return []
        cols = reps + B.basis()
        M = Matrix.from_columns(cols, self.dim(r), self.field)
        x = solve(M, [v.get(j, self.field.zero) for j in range(self.dim(r))])
        if x is None:
            return None
        return x[:len(reps)]

    def is_coboundary(self, r: int, v: dict) -> bool:
        c = self.class_coords(r, v)
        return c is not None and not any(c)


class GradedHom(VectorComplex):
    """Hom complex Hom(P, X) for a complex of projectives P and a complex of modules X.

    A degree-r element is a family of vectors ``x_{i,p}`` in ``X^{i+r}`` at
    vertex ``s_p`` (the image of the generator of the p-th summand of P^i).
    ``blocks[r]`` lists ``(i, p, vertex, offset, size)``.
    """

    def __init__(self, P: ProjComplex, X: ModComplex):
        A = P.algebra
        self.P, self.X = P, X
        self.blocks: dict[int, list] = {}
        self.index: dict[int, dict] = {}
        if P.terms and X.terms:
            rng = range(X.lo - P.hi, X.hi - P.lo + 1)
        else:
            rng = range(0)
        dims = {}
        for r in rng:
            blocks, off = [], 0
            idx = {}
            for i in P.degrees:
                M = X.terms.get(i + r)
                if M is None:
                    continue
                for p, v in enumerate(P.terms[i]):
                    size = M.dims[v]
                    if size:
                        blocks.append((i, p, v, off, size))
                        idx[(i, p)] = (off, size)
                        off += size
            if off:
                self.blocks[r] = blocks
                self.index[r] = idx
                dims[r] = off
        self.field, self.dims = A.field, dims
        diffs = {r: self._build_diff(r) for r in dims if r + 1 in dims}
        super().__init__(A.field, dims, diffs)

    def _build_diff(self, r: int) -> Matrix:
        P, X = self.P, self.X
        A = P.algebra
        F = A.field
        tgt_idx = self.index[r + 1]
        rows = [dict() for _ in range(sum(b[4] for b in self.blocks[r + 1]))]
        sgn = F(-_sign(r))

        def put(block_key, local_rows_matrix, col_off):
            off, _ = tgt_idx[block_key]
            for a, row in enumerate(local_rows_matrix.rows):
                tgt = rows[off + a]
                for j, x in row.items():
                    w = tgt.get(col_off + j, 0) + x
                    if w:
                        tgt[col_off + j] = w
                    else:
                        tgt.pop(col_off + j, None)

        for (i, p, v, off, size) in self.blocks[r]:
            # d_X after f
            dX = X.diffs.get(i + r)
            if dX is not None and (i, p) in tgt_idx:
                put((i, p), dX.mats[v], off)
            # -(-1)^r f after d_P: contributes to blocks (i-1, p') through D^{i-1}[p'][p]
            Mx = X.terms[i + r]
            for pp, row in P.diff(i - 1).items():
                x = row.get(p)
                if x is None or (i - 1, pp) not in tgt_idx:
                    continue
                put((i - 1, pp), Mx.act(x, v, P.terms[i - 1][pp]).scale(sgn), off)
        return Matrix(len(rows), self.dim(r), rows, F)

    # conversions
    def components(self, r: int, vec: dict) -> dict:
        """(i, p) -> sparse vector in X^{i+r} at the summand's vertex."""
        out = {}
        for (i, p, v, off, size) in self.blocks.get(r, []):
            w = {j - off: x for j, x in vec.items() if off <= j < off + size}
            if w:
                out[(i, p)] = w
        return out

    def from_components(self, r: int, comps: dict) -> dict:
        out = {}
        idx = self.index.get(r, {})
        for key, w in comps.items():
            if not w:
                continue
            if key not in idx:
                raise ValueError(f"component {key} is not in degree {r}")
            off, _ = idx[key]
            for j, x in w.items():
                if x:
                    out[off + j] = x
        return out

    def to_chainmap(self, r: int, vec: dict) -> ChainMap:
        """For X realized from a ProjComplex Q: the degree-r map P -> Q."""
        Q = self.X.proj
        A = self.P.algebra
        comps: dict = {}
        for (i, p), w in self.components(r, vec).items():
            v = self.P.terms[i][p]
            elems = vector_to_elements(A, Q.terms[i + r], v, w)
            row = {q: e for q, e in enumerate(elems) if e}
            if row:
                comps.setdefault(i, {})[p] = row
        return ChainMap(self.P, Q, r, comps)

    def from_chainmap(self, f: ChainMap) -> dict:
        Q = self.X.proj
        A = self.P.algebra
        comps = {}
        r = f.degree
        for i, C in f.comps.items():
            for p, row in C.items():
                v = self.P.terms[i][p]
                tgt = Q.terms[i + r]
                comps[(i, p)] = elements_to_vector(A, tgt, v, [row.get(q, {}) for q in range(len(tgt))])
        return self.from_components(r, comps)


def as_modcomplex(X) -> ModComplex:
    if isinstance(X, ModComplex):
        return X
    if isinstance(X, ProjComplex):
        return realize(X)
    if isinstance(X, Module):
        return stalk_module(X)
    raise TypeError(f"cannot view {type(X).__name__} as a complex of modules")


def hom_complex(P: ProjComplex, X) -> GradedHom:
    """Hom(P, X); X may be a ModComplex, a ProjComplex or a Module (stalk in degree 0)."""
    return GradedHom(P, as_modcomplex(X))


def chainmap_space(C: ProjComplex, D: ProjComplex, degree: int = 0) -> list[ChainMap]:
    """Basis of the closed degree-r maps C -> D."""
    H = hom_complex(C, D)
    if not H.dim(degree):
        return []
    return [H.to_chainmap(degree, z) for z in H.cohomology(degree)[0]]


# -- tensor and evaluation ----------------------------------------------------------------


def tensor_ghom(V: VectorComplex, P: ProjComplex) -> ProjComplex:
    """Total complex of V (x) P; the summand (r, a, j, p) sits in degree r + j.

    Summands in degree d are ordered by r, then basis vector a of V^r, then p.
    """
    A = P.algebra
    F = A.field
    layout = tensor_layout(V, P)
    terms = {d: tuple(P.terms[j][p] for (r, a, j, p) in L) for d, L in layout.items()}
    pos = {d: {key: k for k, key in enumerate(L)} for d, L in layout.items()}
    diffs = {}
    for d, L in layout.items():
        if d + 1 not in layout:
            continue
        tgt = pos[d + 1]
        M: dict = {}
        dV_cache = {}
        for k, (r, a, j, p) in enumerate(L):
            row = {}
            if r not in dV_cache:
                dV_cache[r] = V.diff(r).columns() if V.dim(r + 1) else None
            cols = dV_cache[r]
            if cols is not None:
                e = A.idempotent(P.terms[j][p])
                for b, c in cols[a].items():
                    row[tgt[(r + 1, b, j, p)]] = {e: c}
            s = F(_sign(r))
            for q, x in P.diff(j).get(p, {}).items():
                row[tgt[(r, a, j + 1, q)]] = A.scale(x, s)
            if row:
                M[k] = row
        diffs[d] = M
    return ProjComplex(A, terms, diffs)


def tensor_layout(V: VectorComplex, P: ProjComplex) -> dict[int, list[tuple]]:
    layout: dict[int, list] = {}
    for r in sorted(V.dims):
        for a in range(V.dim(r)):
            for j in P.degrees:
                for p in range(len(P.terms[j])):
                    layout.setdefault(r + j, []).append((r, a, j, p))
    return layout


def evaluation(V: GradedHom, T: ProjComplex) -> ChainMap:
    """ev: V (x) P -> Q, v (x) p -> v(p), for V = hom_complex(P, Q) and T = tensor_ghom(V, P)."""
    P, Q = V.P, V.X.proj
    A = P.algebra
    layout = tensor_layout(V, P)
    comps = {}
    basis_cache = {}
    for d, L in layout.items():
        C = {}
        for k, (r, a, j, p) in enumerate(L):
            key = (r, a)
            if key not in basis_cache:
                basis_cache[key] = V.to_chainmap(r, {a: A.field.one})
            f = basis_cache[key]
            row = f.comp(j).get(p)
            if row:
                C[k] = row
        comps[d] = C
    return ChainMap(T, Q, 0, comps)


# -- resolutions --------------------------------------------------------------------------


@dataclass
class Resolution:
    """Minimal projective resolution ``complex -> module`` (terms in degrees <= 0)."""

    complex: ProjComplex
    augmentation: Morphism          # proj_sum(complex.term(0)) -> module
    module: Module

    def generator_images(self) -> list[dict]:
        """Image in M of the generator of each summand of the degree-0 term."""
        aug = self.augmentation
        A = self.module.algebra
        out = []
        verts = self.complex.term(0)
        for q, v in enumerate(verts):
            off = elements_to_vector(A, verts, v, [({A.idempotent(v): A.field.one} if k == q else {})
                                                   for k in range(len(verts))])
            out.append(_mat_vec(aug.mats[v], off))
        return out


def minimal_proj_resolution(M: Module, maxdeg: int | None = None) -> Resolution:
    """Minimal projective resolution; maxdeg defaults to the global dimension bound 2n."""
    A = M.algebra
    if maxdeg is None:
        maxdeg = 2 * (A.num_vertices - 1)
    cover = projective_cover(M)
    terms = {0: cover.source.proj_vertices}
    diffs = {}
    K, inc = kernel(cover)
    d = 0
    while K.dim:
        d += 1
        if d > maxdeg:
            raise AssertionError(f"resolution longer than {maxdeg}: global dimension bound violated")
        c = projective_cover(K)
        verts = c.source.proj_vertices
        prev = terms[-d + 1]
        D = {}
        for p, k in enumerate(verts):
            gen = {off: x for off, x in _generator_column(c, p, k).items()}
            w = _mat_vec(inc.mats[k], gen)
            elems = vector_to_elements(A, prev, k, w)
            row = {q: e for q, e in enumerate(elems) if e}
            if row:
                D[p] = row
        terms[-d] = verts
        diffs[-d] = D
        K2, inc2 = kernel(c)
        K, inc = K2, Morphism(K2, c.source, inc2.mats, check=False)
    P = ProjComplex(A, terms, diffs)
    aug = Morphism(cover.source, M, cover.mats, check=False)
    return Resolution(P, aug, M)


def _generator_column(cover: Morphism, p: int, k: int) -> dict:
    """Image of the generator of summand p (vertex k) under a map out of a projective sum."""
    A = cover.source.algebra
    verts = cover.source.proj_vertices
    e = elements_to_vector(A, verts, k, [({A.idempotent(k): A.field.one} if q == p else {})
                                         for q in range(len(verts))])
    return _mat_vec(cover.mats[k], e)


def resolve_complex(X: ModComplex) -> tuple[ProjComplex, dict]:
    """Projective replacement P -> X (a quasi-isomorphism), built from the top down.

    Returns (P, q) with ``q[i]: proj_sum(P^i) -> X^i``.
    """
    A = X.algebra
    n = A.num_vertices - 1
    if not X.terms:
        return zero_complex(A), {}
    terms: dict = {}
    diffs: dict = {}
    qmaps: dict = {}
    i = X.hi
    while True:
        if i < X.lo - 2 * n - 2:
            raise AssertionError("projective replacement did not terminate")
        Pnext = proj_sum(A, terms.get(i + 1, ()))
        Xi = X.term(i)
        # cycles of the cone of q in degree i: (p, x) with d p = 0 and q p = -d x
        S, (iP, iX), (prP, prX) = direct_sum([Pnext, Xi])
        Pn2 = proj_sum(A, terms.get(i + 2, ()))
        Xn = X.term(i + 1)
        T, (jP, jX), _ = direct_sum([Pn2, Xn])
        mats = []
        dP = _proj_diff_morphism(A, terms.get(i + 1, ()), terms.get(i + 2, ()), diffs.get(i + 1, {}))
        q1 = qmaps.get(i + 1)
        dX = X.diff(i)
        for v in range(A.num_vertices):
            m = Matrix.zero(T.dims[v], S.dims[v], A.field)
            if dP is not None:
                m = m + jP.mats[v] @ dP.mats[v].scale(A.field(-1)) @ prP.mats[v]
            if q1 is not None:
                m = m + jX.mats[v] @ q1.mats[v] @ prP.mats[v]
            if dX is not None:
                m = m + jX.mats[v] @ dX.mats[v] @ prX.mats[v]
            mats.append(m)
        Z, zinc = kernel(Morphism(S, T, mats, check=False))
        if Z.dim == 0:
            if i < X.lo:
                break
            i -= 1
            continue
        c = projective_cover(Z)
        verts = c.source.proj_vertices
        D = {}
        qcols = []
        minus = A.field(-1)
        for p, k in enumerate(verts):
            w = _mat_vec(zinc.mats[k], _generator_column(c, p, k))
            wp = _mat_vec(prP.mats[k], w)
            wx = _mat_vec(prX.mats[k], w)
            elems = vector_to_elements(A, terms.get(i + 1, ()), k, wp)
            row = {q: A.scale(e, minus) for q, e in enumerate(elems) if e}
            if row:
                D[p] = row
            qcols.append((k, wx))
        terms[i] = verts
        if D:
            diffs[i] = D
        qmaps[i] = map_from_projectives(Xi, qcols)
        i -= 1
    P = ProjComplex(A, terms, diffs)
    return P, qmaps


def _proj_diff_morphism(A, src, tgt, D):
    if not src or not tgt:
        return None
    dense = [[D.get(p, {}).get(q, {}) for q in range(len(tgt))] for p in range(len(src))]
    return projective_map(A, src, tgt, dense)


# -- Gaussian cancellation ------------------------------------------------------------------


@dataclass
class Minimized:
    complex: ProjComplex
    maps_out: list        # transported maps out of the original complex (precomposed with iota)
    maps_in: list         # transported maps into the original complex (postcomposed with pi)


def minimal_perfect(C: ProjComplex, maps_out: Sequence[ChainMap] = (),
                    maps_in: Sequence[ChainMap] = ()) -> Minimized | ProjComplex:
    """Cancel invertible differential entries until the complex is minimal.

    A unit entry ``u = D^i[p][q]`` splits off the contractible piece
    ``P --u--> P``; the remaining differential becomes ``gamma - beta u^{-1} alpha``.
    The inclusion ``iota`` of the reduced complex and the projection ``pi``
    onto it are homotopy equivalences; maps out of C are precomposed with
    iota, maps into C are postcomposed with pi.  Without maps a bare
    ProjComplex is returned.
    """
    A = C.algebra
    F = A.field
    minus = F(-1)
    # working copies: rows[i][p] = {q: x}, cols[i][q] = set(p)
    alive = {i: set(range(len(t))) for i, t in C.terms.items()}
    rows = {i: {p: dict(r) for p, r in D.items()} for i, D in C.diffs.items()}
    cols: dict = {}
    for i, D in rows.items():
        ci = cols.setdefault(i, {})
        for p, r in D.items():
            for q in r:
                ci.setdefault(q, set()).add(p)
    outs = [{i: {p: dict(r) for p, r in Ci.items()} for i, Ci in f.comps.items()}
            for f in maps_out]
    # maps in: store as columns per target degree: ins[k][j] = {q: {y: x}} where target deg j
    ins = []
    for g in maps_in:
        byq: dict = {}
        for i, Ci in g.comps.items():
            j = i + g.degree
            for y, r in Ci.items():
                for q, x in r.items():
                    byq.setdefault(j, {}).setdefault(q, {})[(i, y)] = x
        ins.append(byq)

    def is_unit(i, p, q):
        x = rows.get(i, {}).get(p, {}).get(q)
        return x is not None and C.terms[i][p] == C.terms[i + 1][q] and A.unit_part(x)

    stack = [(i, p, q) for i in sorted(rows, reverse=True) for p, r in rows[i].items()
             for q in r if is_unit(i, p, q)]
    while stack:
        i, p, q = stack.pop()
        if not is_unit(i, p, q):
            continue
        D = rows[i]
        u = D[p][q]
        uinv = A.inverse_local(u)
        alpha = {qq: x for qq, x in D[p].items() if qq != q}
        beta = {pp: D[pp][q] for pp in cols[i].get(q, set()) if pp != p}
        # gamma' = gamma - beta u^{-1} alpha
        for pp, b in beta.items():
            bu = A.mul(b, uinv)
            row = D[pp]
            for qq, a in alpha.items():
                v = A.add(row.get(qq, {}), A.mul(bu, a), minus)
                if v:
                    if qq not in row:
                        cols[i].setdefault(qq, set()).add(pp)
                    row[qq] = v
                    if C.terms[i][pp] == C.terms[i + 1][qq] and A.unit_part(v):
                        stack.append((i, pp, qq))
                else:
                    if qq in row:
                        del row[qq]
                        cols[i][qq].discard(pp)
            # transport maps out: g[pp] -= beta u^{-1} g[p] at degree i
            for g in outs:
                gi = g.get(i)
                if gi and p in gi:
                    grow = gi.setdefault(pp, {})
                    for y, x in gi[p].items():
                        v = A.add(grow.get(y, {}), A.mul(bu, x), minus)
                        if v:
                            grow[y] = v
                        else:
                            grow.pop(y, None)
        # transport maps in: at degree i+1, x_E -= x_q u^{-1} alpha
        for byq in ins:
            cq = byq.get(i + 1, {}).get(q)
            if cq:
                for key, xq in cq.items():
                    xu = A.mul(xq, uinv)
                    for qq, a in alpha.items():
                        tgt = byq[i + 1].setdefault(qq, {})
                        v = A.add(tgt.get(key, {}), A.mul(xu, a), minus)
                        if v:
                            tgt[key] = v
                        else:
                            tgt.pop(key, None)
        # delete row p and column q of D^i
        for qq in D[p]:
            cols[i][qq].discard(p)
        del D[p]
        for pp in list(cols[i].get(q, set())):
            D[pp].pop(q, None)
            if not D[pp]:
                del D[pp]
        cols[i].pop(q, None)
        for pp in list(D):
            if not D[pp]:
                del D[pp]
        # column p of D^{i-1} and row q of D^{i+1}
        if i - 1 in rows:
            for pp in list(cols[i - 1].get(p, set())):
                rows[i - 1][pp].pop(p, None)
                if not rows[i - 1][pp]:
                    del rows[i - 1][pp]
            cols[i - 1].pop(p, None)
        if i + 1 in rows and q in rows[i + 1]:
            for qq in rows[i + 1][q]:
                cols[i + 1][qq].discard(q)
            del rows[i + 1][q]
        alive[i].discard(p)
        alive[i + 1].discard(q)
        for g in outs:
            if i in g:
                g[i].pop(p, None)
            if i + 1 in g:
                g[i + 1].pop(q, None)
        for byq in ins:
            byq.get(i, {}).pop(p, None)
            byq.get(i + 1, {}).pop(q, None)
        # drop zero rows (they may have been emptied)
        for pp in [pp for pp, r in D.items() if not r]:
            del D[pp]

    # renumber
    newidx = {i: {p: k for k, p in enumerate(sorted(s))} for i, s in alive.items()}
    terms = {i: tuple(C.terms[i][p] for p in sorted(s)) for i, s in alive.items()}
    diffs = {}
    for i, D in rows.items():
        M = {}
        for p, r in D.items():
            if p in newidx[i]:
                rr = {newidx[i + 1][q]: x for q, x in r.items() if q in newidx.get(i + 1, {}) and x}
                if rr:
                    M[newidx[i][p]] = rr
        diffs[i] = M
    R = ProjComplex(A, terms, diffs)
    if not maps_out and not maps_in:
        return R
    new_outs = []
    for f, g in zip(maps_out, outs):
        comps = {}
        for i, Ci in g.items():
            comps[i] = {newidx[i][p]: {y: x for y, x in r.items() if x}
                        for p, r in Ci.items() if p in newidx.get(i, {}) and r}
        new_outs.append(ChainMap(R, f.target, f.degree, comps))
    new_ins = []
    for g, byq in zip(maps_in, ins):
        comps: dict = {}
        for j, byq_j in byq.items():
            for q, col in byq_j.items():
                if q not in newidx.get(j, {}):
                    continue
                for (i, y), x in col.items():
                    if x:
                        comps.setdefault(i, {}).setdefault(y, {})[newidx[j][q]] = x
        new_ins.append(ChainMap(g.source, R, g.degree, comps))
    return Minimized(R, new_outs, new_ins)


# -- isomorphism certificates -----------------------------------------------------------------


@dataclass
class IsoResult:
    status: str                      # "certified" | "refuted" | "inconclusive"
    certificate: ChainMap | None = None
    seed: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.status == "certified"


def verify_certificate(f: ChainMap) -> bool:
    """Independent re-check: closed degree-0 map with invertible components."""
    return f.degree == 0 and f.is_closed() and f.is_iso()


def complexes_iso(C: ProjComplex, D: ProjComplex, seed: int = 0, tries: int = 20) -> IsoResult:
    """Certificate or refutation of C = D in the derived category (both minimal)."""
    if not (C.is_minimal() and D.is_minimal()):
        raise ValueError("complexes_iso needs minimal complexes")
    if C.multiplicities() != D.multiplicities():
        return IsoResult("refuted", seed=seed, reason="termwise multiplicities differ")
    if C.is_zero():
        return IsoResult("certified", ChainMap(C, D, 0, {}), seed)
    if C.homology() != D.homology():
        return IsoResult("refuted", seed=seed, reason="homology dimension vectors differ")
    basis = chainmap_space(C, D, 0)
    if not basis:
        return IsoResult("refuted", seed=seed, reason="no nonzero chain maps")
    rng = random.Random(seed)
    F = C.field
    for _ in range(tries):
        f = basis[0].scale(F.random_element(rng, 1000))
        for g in basis[1:]:
            f = f + g.scale(F.random_element(rng, 1000))
        if f.is_iso():
            if verify_certificate(f):
                return IsoResult("certified", f, seed)
            raise AssertionError("certificate failed independent verification")
    return IsoResult("inconclusive", seed=seed, reason=f"no invertible chain map in {tries} draws")


# -- JSON -------------------------------------------------------------------------------------


def _elem_to_json(A: PathAlgebra, x: dict) -> dict:
    return {A.basis_name(i): A.field.to_json(c) for i, c in sorted(x.items())}


def complex_to_json(C: ProjComplex) -> dict:
    A = C.algebra
    return {
        "schema": "perv_pn.complex/1",
        "algebra": A.name,
        "terms": {str(i): list(C.terms[i]) for i in C.degrees},
        "differentials": {str(i): [[p, q, _elem_to_json(A, x)]
                                   for p, row in sorted(D.items()) for q, x in sorted(row.items())]
                          for i, D in sorted(C.diffs.items())},
    }


def complex_from_json(A: PathAlgebra, doc: dict) -> ProjComplex:
    names = {A.basis_name(i): i for i in range(A.dim)}
    terms = {int(i): tuple(t) for i, t in doc["terms"].items()}
    diffs = {}
    for i, entries in doc.get("differentials", {}).items():
        D: dict = {}
        for p, q, x in entries:
            D.setdefault(p, {})[q] = {names[b]: A.field.from_json(c) for b, c in x.items()}
        diffs[int(i)] = D
    return ProjComplex(A, terms, diffs)
