"""Finite-dimensional modules as quiver representations.

A module stores one vector space ``F^{dims[v]}`` per vertex and one matrix
per arrow (``dims[target] x dims[source]``).  Vectors are sparse dicts.

The projective ``P_k = A e_k`` has ``(P_k)_l = e_l A e_k`` with basis
``A.paths_between(k, l)`` in that order.  A morphism ``P_s -> P_t`` is right
multiplication by an element of ``e_s A e_t``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .linalg import (Matrix, Subspace, kernel_basis, kernel_vectors, solve_many)
from .quiver import PathAlgebra


def _mat_vec(M: Matrix, v: dict) -> dict:
    """M times a sparse column vector."""
    out = {}
    for i, r in enumerate(M.rows):
        acc = 0
        for j, x in v.items():
            y = r.get(j)
            if y:
                acc = acc + x * y
        if acc:
            out[i] = acc
    return out


class Module:
    """A representation of the quiver of ``algebra`` satisfying its relations."""

    def __init__(self, algebra: PathAlgebra, dims: Sequence[int], action: Sequence[Matrix],
                 check: bool = True, proj_vertices: tuple[int, ...] | None = None):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.action = list(action)
        # set when this module is literally the direct sum P_{v_0} + P_{v_1} + ...
        self.proj_vertices = proj_vertices
        self._acts: dict[int, Matrix] = {}
        Q = algebra.quiver
        if len(self.dims) != Q.num_vertices or len(self.action) != len(Q.arrows):
            raise ValueError("dimension vector / action size mismatch")
        for a, M in enumerate(self.action):
            if M.shape != (self.dims[Q.target(a)], self.dims[Q.source(a)]):
                raise ValueError(f"arrow {Q.arrows[a][0]} has wrong matrix shape {M.shape}")
        if check:
            self.check_relations()

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def path_matrix(self, path) -> Matrix:
        start, arrows = path
        M = Matrix.identity(self.dims[start], self.field)
        for a in arrows:
            M = self.action[a] @ M
        return M

    def act_basis(self, i: int) -> Matrix:
        """Matrix of the basis element ``i`` of the algebra (source -> target block)."""
        M = self._acts.get(i)
        if M is None:
            M = self.path_matrix(self.algebra.basis[i][3])
            self._acts[i] = M
        return M

    def act(self, x: dict, s: int, t: int) -> Matrix:
        """Action of the ``e_t A e_s`` part of x as a ``dims[t] x dims[s]`` matrix."""
        out = Matrix.zero(self.dims[t], self.dims[s], self.field)
        for i in self.algebra.paths_between(s, t):
            c = x.get(i)
            if c:
                out = out + self.act_basis(i).scale(c)
        return out

    def check_relations(self):
        A = self.algebra
        for rel in A.relations:
            p0 = next(iter(rel))
            s, t = p0[0], A.quiver.path_end(p0)
            tot = Matrix.zero(self.dims[t], self.dims[s], self.field)
            for p, c in rel.items():
                tot = tot + self.path_matrix(p).scale(c)
            if not tot.is_zero():
                raise ValueError("module violates an algebra relation")

    def to_json(self) -> dict:
        F = self.field
        names = [a[0] for a in self.algebra.quiver.arrows]
        return {
            "schema": "perv_pn.module/1",
            "algebra": self.algebra.name,
            "dims": list(self.dims),
            "arrows": {names[a]: [[F.to_json(x) for x in row] for row in M.to_lists()]
                       for a, M in enumerate(self.action)},
        }

    @classmethod
    def from_json(cls, algebra: PathAlgebra, doc: dict) -> "Module":
        F = algebra.field
        Q = algebra.quiver
        dims = doc["dims"]
        action = []
        for name, s, t in Q.arrows:
            rows = doc["arrows"][name]
            action.append(Matrix.from_lists([[F.from_json(x) for x in r] for r in rows], F,
                                            ncols=dims[s]))
        return cls(algebra, dims, action)

    def __repr__(self):
        return f"Module(dims={self.dims})"


class Morphism:
    """Module homomorphism given by one matrix per vertex."""

    def __init__(self, source: Module, target: Module, mats: Sequence[Matrix], check: bool = True):
        self.source = source
        self.target = target
        self.mats = list(mats)
        if check:
            self.check()

    def check(self):
        Q = self.source.algebra.quiver
        for v, M in enumerate(self.mats):
            if M.shape != (self.target.dims[v], self.source.dims[v]):
                raise ValueError("morphism block has wrong shape")
        for a in range(len(Q.arrows)):
            s, t = Q.source(a), Q.target(a)
            if self.target.action[a] @ self.mats[s] != self.mats[t] @ self.source.action[a]:
                raise ValueError("matrices do not commute with the arrow action")

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """self after other."""
        return Morphism(other.source, self.target,
                        [a @ b for a, b in zip(self.mats, other.mats)], check=False)

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target,
                        [a + b for a, b in zip(self.mats, other.mats)], check=False)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "Morphism":
        c = self.source.field(c)
        return Morphism(self.source, self.target, [m.scale(c) for m in self.mats], check=False)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats)

    def is_iso(self) -> bool:
        return all(m.nrows == m.ncols and m.rank() == m.nrows for m in self.mats)

    def rank(self) -> int:
        return sum(m.rank() for m in self.mats)

    def __repr__(self):
        return f"Morphism({self.source.dims} -> {self.target.dims})"


def identity(M: Module) -> Morphism:
    return Morphism(M, M, [Matrix.identity(d, M.field) for d in M.dims], check=False)


def zero_morphism(M: Module, N: Module) -> Morphism:
    return Morphism(M, N, [Matrix.zero(b, a, M.field) for a, b in zip(M.dims, N.dims)],
                    check=False)


def zero_module(A: PathAlgebra) -> Module:
    Q = A.quiver
    return Module(A, [0] * Q.num_vertices,
                  [Matrix.zero(0, 0, A.field) for _ in Q.arrows], check=False)


# -- the basic objects ---------------------------------------------------------

def _check_vertex(A: PathAlgebra, k: int):
    if not 0 <= k < A.num_vertices:
        raise ValueError(f"vertex {k} out of range 0..{A.num_vertices - 1}")


def simple(A: PathAlgebra, k: int) -> Module:
    _check_vertex(A, k)
    dims = [1 if v == k else 0 for v in range(A.num_vertices)]
    action = [Matrix.zero(dims[t], dims[s], A.field) for _, s, t in A.quiver.arrows]
    return Module(A, dims, action, check=False)


def projective(A: PathAlgebra, k: int) -> Module:
    """P_k = A e_k."""
    _check_vertex(A, k)
    return proj_sum(A, (k,))


def proj_sum(A: PathAlgebra, vertices: Sequence[int]) -> Module:
    """The direct sum P_{v_0} + P_{v_1} + ... in its standard basis."""
    vertices = tuple(vertices)
    N = A.num_vertices
    F = A.field
    dims = [sum(len(A.paths_between(k, l)) for k in vertices) for l in range(N)]
    action = []
    for name, s, t in A.quiver.arrows:
        alpha = A.arrow_element(name)
        rows = [dict() for _ in range(dims[t])]
        off_s = off_t = 0
        for k in vertices:
            src = A.paths_between(k, s)
            for j, x in enumerate(src):
                for i, c in A.mul(alpha, {x: F.one}).items():
                    rows[off_t + A.slot[i]][off_s + j] = c
            off_s += len(src)
            off_t += len(A.paths_between(k, t))
        action.append(Matrix(dims[t], dims[s], rows, F))
    return Module(A, dims, action, check=False, proj_vertices=vertices)


def proj_offsets(A: PathAlgebra, vertices: Sequence[int], l: int) -> list[int]:
    """Offsets of each summand inside vertex l of ``proj_sum(A, vertices)``."""
    out, off = [], 0
    for k in vertices:
        out.append(off)
        off += len(A.paths_between(k, l))
    return out


def elements_to_vector(A: PathAlgebra, vertices: Sequence[int], l: int, elems: Sequence[dict]) -> dict:
    """(a_q) with a_q in e_l A e_{v_q}  ->  vector at vertex l of the projective sum."""
    offs = proj_offsets(A, vertices, l)
    v = {}
    for off, a in zip(offs, elems):
        for i, c in a.items():
            if c:
                v[off + A.slot[i]] = c
    return v


def vector_to_elements(A: PathAlgebra, vertices: Sequence[int], l: int, v: dict) -> list[dict]:
    offs = proj_offsets(A, vertices, l)
    out = []
    for q, k in enumerate(vertices):
        idx = A.paths_between(k, l)
        out.append({idx[j - offs[q]]: c for j, c in v.items()
                    if offs[q] <= j < offs[q] + len(idx) and c})
    return out


def projective_map(A: PathAlgebra, src: Sequence[int], tgt: Sequence[int],
                   D: Sequence[Sequence[dict]]) -> Morphism:
    """The map of projective sums given by right multiplication by the matrix D.

    ``D[p][q]`` lies in ``e_{src[p]} A e_{tgt[q]}``; the summand ``P_{src[p]}``
    is sent to ``sum_q x * D[p][q]``.
    """
    P, Qm = proj_sum(A, src), proj_sum(A, tgt)
    F = A.field
    mats = []
    for l in range(A.num_vertices):
        rows = [dict() for _ in range(Qm.dims[l])]
        so = proj_offsets(A, src, l)
        to = proj_offsets(A, tgt, l)
        for p, s in enumerate(src):
            for j, x in enumerate(A.paths_between(s, l)):
                for q, t in enumerate(tgt):
                    a = D[p][q]
                    if not a:
                        continue
                    for i, c in A.mul({x: F.one}, a).items():
                        r = rows[to[q] + A.slot[i]]
                        col = so[p] + j
                        w = r.get(col, 0) + c
                        if w:
                            r[col] = w
                        else:
                            r.pop(col, None)
        mats.append(Matrix(Qm.dims[l], P.dims[l], rows, F))
    return Morphism(P, Qm, mats, check=False)


def dual(M: Module) -> Module:
    """Vector-space dual with the action twisted by the anti-involution."""
    A = M.algebra
    if A.involution is None:
        raise ValueError("dual needs an algebra with an anti-involution")
    action = [M.action[A.involution[a]].transpose() for a in range(len(A.quiver.arrows))]
    return Module(A, M.dims, action, check=False)


def dual_morphism(f: Morphism) -> Morphism:
    """D(f): D(target) -> D(source)."""
    return Morphism(dual(f.target), dual(f.source), [m.transpose() for m in f.mats], check=False)


def injective(A: PathAlgebra, k: int) -> Module:
    """I_k, realized as the twisted dual of P_k (it has simple socle IC_k)."""
    return dual(projective(A, k))


# -- direct sums, sub and quotient modules ---------------------------------------

def direct_sum(mods: Sequence[Module]) -> tuple[Module, list[Morphism], list[Morphism]]:
    """Direct sum with its inclusions and projections."""
    mods = list(mods)
    A = mods[0].algebra
    F = A.field
    N = A.num_vertices
    dims = [sum(m.dims[v] for m in mods) for v in range(N)]
    action = []
    for a, (_, s, t) in enumerate(A.quiver.arrows):
        rows = [dict() for _ in range(dims[t])]
        os = ot = 0
        for m in mods:
            for i, r in enumerate(m.action[a].rows):
                rows[ot + i] = {os + j: x for j, x in r.items()}
            os += m.dims[s]
            ot += m.dims[t]
        action.append(Matrix(dims[t], dims[s], rows, F))
    pv = None
    if all(m.proj_vertices is not None for m in mods):
        pv = tuple(v for m in mods for v in m.proj_vertices)
    S = Module(A, dims, action, check=False, proj_vertices=pv)
    incs, projs = [], []
    offs = [0] * N
    for m in mods:
        inc, pr = [], []
        for v in range(N):
            inc.append(Matrix(dims[v], m.dims[v],
                              [dict() for _ in range(offs[v])]
                              + [{i: F.one} for i in range(m.dims[v])]
                              + [dict() for _ in range(dims[v] - offs[v] - m.dims[v])], F))
            pr.append(Matrix(m.dims[v], dims[v], [{offs[v] + i: F.one} for i in range(m.dims[v])], F))
            offs[v] += m.dims[v]
        incs.append(Morphism(m, S, inc, check=False))
        projs.append(Morphism(S, m, pr, check=False))
    return S, incs, projs


def submodule(M: Module, gens: Sequence[tuple[int, dict]]) -> tuple[Module, Morphism]:
    """Submodule generated by vectors ``(vertex, v)``; returns it with its inclusion."""
    A = M.algebra
    Q = A.quiver
    spaces = [Subspace(d, field=M.field) for d in M.dims]
    todo = list(gens)
    while todo:
        v, x = todo.pop()
        r = spaces[v].reduce(x)
        if not r:
            continue
        spaces[v].add_all([r])
        for a in Q.arrows_from(v):
            y = _mat_vec(M.action[a], r)
            if y:
                todo.append((Q.target(a), y))
    return _sub_from_spaces(M, [s.basis() for s in spaces])


def _sub_from_spaces(M: Module, bases: Sequence[Sequence[dict]]) -> tuple[Module, Morphism]:
    """Module structure on a family of arrow-stable subspaces (given by bases)."""
    A = M.algebra
    F = M.field
    incl = [Matrix.from_columns(list(b), M.dims[v], F) for v, b in enumerate(bases)]
    action = []
    for a, (_, s, t) in enumerate(A.quiver.arrows):
        X = solve_many(incl[t], M.action[a] @ incl[s])
        if X is None:
            raise ValueError("subspaces are not stable under the action")
        action.append(X)
    S = Module(A, [len(b) for b in bases], action, check=False)
    return S, Morphism(S, M, incl, check=False)


def quotient(M: Module, inc: Morphism) -> tuple[Module, Morphism]:
    """M / image(inc), with the projection.  ``inc`` need not be injective."""
    A = M.algebra
    F = M.field
    spaces = [Subspace(M.dims[v], inc.mats[v].columns(), F) for v in range(len(M.dims))]
    comp = [s.complement_coordinates() for s in spaces]
    pos = [{j: k for k, j in enumerate(c)} for c in comp]

    def proj_vec(v, x):
        r = spaces[v].reduce(x)
        return {pos[v][j]: c for j, c in r.items()}

    proj = []
    for v in range(len(M.dims)):
        cols = [proj_vec(v, {j: F.one}) for j in range(M.dims[v])]
        proj.append(Matrix.from_columns(cols, len(comp[v]), F))
    action = []
    for a, (_, s, t) in enumerate(A.quiver.arrows):
        cols = [proj_vec(t, _mat_vec(M.action[a], {j: F.one})) for j in comp[s]]
        action.append(Matrix.from_columns(cols, len(comp[t]), F))
    Qm = Module(A, [len(c) for c in comp], action, check=False)
    return Qm, Morphism(M, Qm, proj, check=False)


def kernel(f: Morphism) -> tuple[Module, Morphism]:
    return _sub_from_spaces(f.source, [kernel_basis(m).columns() for m in f.mats])


def image(f: Morphism) -> tuple[Module, Morphism]:
    from .linalg import column_space_basis
    return _sub_from_spaces(f.target, [column_space_basis(m) for m in f.mats])


def cokernel(f: Morphism) -> tuple[Module, Morphism]:
    return quotient(f.target, f)


def radical(M: Module) -> tuple[Module, Morphism]:
    A = M.algebra
    Q = A.quiver
    bases = []
    for v in range(len(M.dims)):
        S = Subspace(M.dims[v], field=M.field)
        for a in Q.arrows_to(v):
            S.add_all(M.action[a].columns())
        bases.append(S.basis())
    return _sub_from_spaces(M, bases)


def top(M: Module) -> tuple[Module, Morphism]:
    return quotient(M, radical(M)[1])


def socle(M: Module) -> tuple[Module, Morphism]:
    Q = M.algebra.quiver
    bases = []
    for v in range(len(M.dims)):
        out = [M.action[a] for a in Q.arrows_from(v)]
        if out:
            stacked = out[0]
            for m in out[1:]:
                stacked = stacked.vstack(m)
            bases.append(kernel_vectors(stacked))
        else:
            bases.append([{i: M.field.one} for i in range(M.dims[v])])
    return _sub_from_spaces(M, bases)


def projective_cover(M: Module) -> Morphism:
    """Surjection from a sum of indecomposable projectives, minimal (top-preserving).

    The generator of the q-th summand ``P_k`` maps to a vector of ``M_k``
    complementing the radical; ``cover.source.proj_vertices`` lists the k's.
    """
    A = M.algebra
    F = M.field
    Q = A.quiver
    gens = []
    for k in range(len(M.dims)):
        S = Subspace(M.dims[k], field=F)
        for a in Q.arrows_to(k):
            S.add_all(M.action[a].columns())
        for j in S.complement_coordinates():
            gens.append((k, {j: F.one}))
    return map_from_projectives(M, gens)


def map_from_projectives(M: Module, gens: Sequence[tuple[int, dict]]) -> Morphism:
    """The map ``sum P_{k_q} -> M`` sending the q-th generator to the given vector."""
    A = M.algebra
    verts = tuple(k for k, _ in gens)
    P = proj_sum(A, verts)
    mats = []
    for l in range(A.num_vertices):
        cols = []
        for k, m in gens:
            for b in A.paths_between(k, l):
                cols.append(_mat_vec(M.act_basis(b), m))
        mats.append(Matrix.from_columns(cols, M.dims[l], M.field))
    return Morphism(P, M, mats, check=False)


def injective_hull(M: Module) -> Morphism:
    """Injection into a sum of twisted duals of projectives (= injectives)."""
    c = projective_cover(dual(M))
    f = dual_morphism(c)
    # D(D M) is M with identical matrices, so f is literally a map out of M
    return Morphism(M, f.target, f.mats, check=False)


def composition_factors(M: Module) -> tuple[int, ...]:
    """Multiplicity of each simple; for quiver representations this is the dim vector."""
    return M.dims


# -- Hom spaces ---------------------------------------------------------------------

def hom_space(M: Module, N: Module) -> list[Morphism]:
    """Basis of Hom_A(M, N)."""
    A = M.algebra
    F = M.field
    Q = A.quiver
    nv = len(M.dims)
    off, tot = [], 0
    for v in range(nv):
        off.append(tot)
        tot += N.dims[v] * M.dims[v]

    def var(v, i, j):
        return off[v] + i * M.dims[v] + j

    eqs = []
    for a, (_, s, t) in enumerate(Q.arrows):
        Na, Ma = N.action[a], M.action[a]
        Ma_cols = Ma.columns()
        for i in range(N.dims[t]):
            for j in range(M.dims[s]):
                row = {}
                for p, x in Na.rows[i].items():
                    row[var(s, p, j)] = row.get(var(s, p, j), 0) + x
                for q, x in Ma_cols[j].items():
                    k = var(t, i, q)
                    row[k] = row.get(k, 0) - x
                row = {k: x for k, x in row.items() if x}
                if row:
                    eqs.append(row)
    sol = kernel_vectors(Matrix(len(eqs), tot, eqs, F))
    out = []
    for vec in sol:
        mats = []
        for v in range(nv):
            rows = [dict() for _ in range(N.dims[v])]
            for k, x in vec.items():
                if off[v] <= k < off[v] + N.dims[v] * M.dims[v]:
                    i, j = divmod(k - off[v], M.dims[v])
                    rows[i][j] = x
            mats.append(Matrix(N.dims[v], M.dims[v], rows, F))
        out.append(Morphism(M, N, mats, check=False))
    return out


def hom_dim(M: Module, N: Module) -> int:
    return len(hom_space(M, N))


def morphism_vector(f: Morphism) -> dict:
    """Flatten a morphism into one sparse vector (used to test linear relations)."""
    out, off = {}, 0
    for m in f.mats:
        for i, r in enumerate(m.rows):
            for j, x in r.items():
                out[off + i * m.ncols + j] = x
        off += m.nrows * m.ncols
    return out


# -- endomorphism rings, indecomposability and decomposition -------------------------

def _is_nilpotent(f: Morphism) -> bool:
    for m in f.mats:
        p = m
        for _ in range(max(m.nrows, 1)):
            if p.is_zero():
                break
            p = p @ m
        if not p.is_zero():
            return False
    return True


def _charpoly_factors(f: Morphism) -> list[list]:
    """Distinct monic irreducible factors (coefficients, leading first) of the char poly."""
    import sympy
    from sympy.polys.matrices import DomainMatrix

    F = f.source.field
    x = sympy.Symbol("x")
    if F.char == 0:
        dom = sympy.QQ
        to_sym = lambda c: sympy.QQ(int(c.numerator), int(c.denominator))
        poly_kw = {}
    else:
        dom = sympy.GF(F.p)
        to_sym = lambda c: dom(int(c))
        poly_kw = {"modulus": F.p}
    factors = set()
    for m in f.mats:
        if m.nrows == 0:
            continue
        rows = [[to_sym(c) for c in r] for r in m.to_lists()]
        cp = DomainMatrix(rows, m.shape, dom).charpoly()
        poly = sympy.Poly([sympy.Rational(str(c)) if F.char == 0 else int(c) for c in cp],
                          x, **poly_kw)
        for g, _ in poly.factor_list()[1]:
            factors.add(tuple(sympy.Rational(c) for c in g.monic().all_coeffs()))
    out = []
    for coeffs in sorted(factors, key=lambda c: (len(c), str(c))):
        out.append([F(int(c.p)) / F(int(c.q)) for c in coeffs])
    return out


def _poly_eval(coeffs, f: Morphism) -> Morphism:
    F = f.source.field
    out = []
    for m in f.mats:
        acc = Matrix.zero(m.nrows, m.ncols, F)
        for c in coeffs:
            acc = acc @ m + Matrix.identity(m.nrows, F).scale(F(c))
        out.append(acc)
    return Morphism(f.source, f.target, out, check=False)


def _fitting_split(f: Morphism):
    """(ker f^N, im f^N) as submodules, or None when the split is trivial."""
    M = f.source
    g = f
    for _ in range(max(M.dims + (1,)).bit_length()):
        g = g @ g
    r = g.rank()
    if r == 0 or r == M.dim:
        return None
    return kernel(g), image(g)


def _scalar_part(f: Morphism):
    """lambda with f - lambda nilpotent, or None."""
    M = f.source
    F = M.field
    d = M.dim
    if d == 0:
        return F.zero
    if F.char == 0 or d % F.char:
        tr = sum((m[i, i] for m in f.mats for i in range(m.nrows)), F.zero)
        lam = tr / F(d)
    else:
        facs = _charpoly_factors(f)
        if len(facs) != 1 or len(facs[0]) != 2:
            return None
        lam = -facs[0][1]
    if _is_nilpotent(f - identity(M).scale(lam)):
        return lam
    return None


def is_indecomposable(M: Module) -> bool:
    """End(M) is local with residue field the ground field."""
    if M.dim == 0:
        return False
    E = hom_space(M, M)
    nil = []
    for f in E:
        lam = _scalar_part(f)
        if lam is None:
            return False
        nil.append(f - identity(M).scale(lam))
    # span of the nilpotent parts must be a nilpotent ideal
    F = M.field
    basis = Subspace(sum(a * a for a in M.dims), field=F)
    basis.add_all(morphism_vector(g) for g in nil)
    power = [g for g in nil if not g.is_zero()]
    for _ in range(M.dim + 1):
        if not power:
            return True
        nxt = Subspace(basis.n, field=F)
        reps = []
        for x in power:
            for g in nil:
                y = x @ g
                v = morphism_vector(y)
                if v and not basis.contains(v):
                    return False
                if v and not nxt.contains(v):
                    nxt.add_all([v])
                    reps.append(y)
        power = reps
    return not power


def decompose(M: Module, seed: int = 0, tries: int = 30) -> list[Module]:
    """Split M into indecomposable summands via Fitting decompositions in End(M)."""
    if M.dim == 0:
        return []
    E = hom_space(M, M)
    rng = random.Random(seed)
    candidates = list(E)
    F = M.field
    for _ in range(tries):
        if len(E) <= 1:
            break
        f = E[0].scale(F.random_element(rng, 50))
        for g in E[1:]:
            f = f + g.scale(F.random_element(rng, 50))
        candidates.append(f)
    for f in candidates:
        split = _fitting_split(f)
        if split is None and _scalar_part(f) is None:
            for coeffs in _charpoly_factors(f):
                split = _fitting_split(_poly_eval(coeffs, f))
                if split is not None:
                    break
        if split is not None:
            (K, _), (I, _) = split
            return decompose(K, seed + 1, tries) + decompose(I, seed + 2, tries)
    return [M]


def _indec_iso(M: Module, N: Module) -> bool:
    """Deterministic test for indecomposable M: iso iff some g f is not nilpotent."""
    fs, gs = hom_space(M, N), hom_space(N, M)
    for f in fs:
        for g in gs:
            if not _is_nilpotent(g @ f):
                return True
    return False


def find_isomorphism(M: Module, N: Module, seed: int = 0, tries: int = 8) -> Morphism | None:
    """Random search for an invertible element of Hom(M, N)."""
    if M.dims != N.dims:
        return None
    H = hom_space(M, N)
    if M.dim == 0:
        return zero_morphism(M, N)
    if not H:
        return None
    rng = random.Random(seed)
    F = M.field
    for _ in range(tries):
        f = H[0].scale(F.random_element(rng, 1000))
        for g in H[1:]:
            f = f + g.scale(F.random_element(rng, 1000))
        if all(m.det() for m in f.mats):
            return f
    return None


def is_isomorphic(M: Module, N: Module, seed: int = 0) -> bool:
    if M.dims != N.dims:
        return False
    if find_isomorphism(M, N, seed) is not None:
        return True
    # deterministic fallback: compare indecomposable summands
    ms, ns = decompose(M, seed), decompose(N, seed)
    if len(ms) != len(ns):
        return False
    unused = list(ns)
    for X in ms:
        for i, Y in enumerate(unused):
            if X.dims == Y.dims and _indec_iso(X, Y):
                del unused[i]
                break
        else:
            return False
    return True


# -- standard objects and strings --------------------------------------------------------

def standard(A: PathAlgebra, k: int) -> Module:
    """Delta_k: P_k modulo the trace of the P_l (l >= k) in its radical."""
    _check_vertex(A, k)
    P = projective(A, k)
    F = A.field
    gens = []
    for l in range(k, A.num_vertices):
        for j, b in enumerate(A.paths_between(k, l)):
            if A.degree(b) > 0:
                gens.append((l, {j: F.one}))
    _, inc = submodule(P, gens)
    return quotient(P, inc)[0]


def costandard(A: PathAlgebra, k: int) -> Module:
    return dual(standard(A, k))


def syzygy(M: Module) -> tuple[Module, Morphism, Morphism]:
    """(Omega M, Omega M -> P, P -> M) for the projective cover P of M."""
    cover = projective_cover(M)
    K, inc = kernel(cover)
    return K, inc, cover


def ext1_dim(X: Module, N: Module) -> int:
    """dim Ext^1(X, N) via the first syzygy."""
    return len(_ext1_classes(X, N)[0])


def _ext1_classes(X: Module, N: Module):
    K, inc, cover = syzygy(X)
    homs = hom_space(K, N)
    restr = Subspace(sum(a * b for a, b in zip(K.dims, N.dims)), field=X.field)
    restr.add_all(morphism_vector(g @ inc) for g in hom_space(cover.source, N))
    reps = []
    for g in homs:
        v = morphism_vector(g)
        if not restr.contains(v):
            restr.add_all([v])
            reps.append(g)
    return reps, K, inc


def nonsplit_extension(X: Module, N: Module, index: int = 0) -> Module:
    """Middle term of the extension 0 -> N -> E -> X -> 0 given by an Ext^1 basis class.

    Built as the pushout of the syzygy sequence along a representative.
    """
    reps, K, inc = _ext1_classes(X, N)
    if not reps:
        raise ValueError("Ext^1 vanishes: no nonsplit extension")
    g = reps[index]
    S, (iN, iP), _ = direct_sum([N, inc.target])
    # submodule {(-g w, inc w)}
    emb = iP @ inc - iN @ g
    E, _ = quotient(S, emb)
    return E


def string_object(A: PathAlgebra, sign: str, a: int, b: int) -> Module:
    """Z+_{a,b} by the extension recursion 0 -> Delta_a -> Z+_{a,b} -> Z+_{a-2,b} -> 0."""
    n = A.num_vertices - 1
    if not 0 <= b <= a <= n:
        raise ValueError(f"need 0 <= b <= a <= n, got a={a}, b={b}")
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    key = ("string", sign, a, b)
    with A.cache_lock:
        if key in A.cache:
            return A.cache[key]
    if sign == "-":
        Z = dual(string_object(A, "+", a, b))
    elif a == b:
        Z = simple(A, a)
    elif a == b + 1:
        Z = standard(A, a)
    else:
        X = string_object(A, "+", a - 2, b)
        D = standard(A, a)
        reps = _ext1_classes(X, D)[0]
        if len(reps) != 1:
            raise AssertionError(f"Ext^1(Z+_{{{a-2},{b}}}, Delta_{a}) has dimension {len(reps)}, "
                                 "expected 1 (algebra presentation bug?)")
        Z = nonsplit_extension(X, D)
        # nonsplit <=> id_X does not lift: dim Hom(X, Z) < dim Hom(X, D) + dim End(X)
        if hom_dim(X, Z) >= hom_dim(X, D) + hom_dim(X, X):
            raise AssertionError("constructed extension splits")
    with A.cache_lock:
        return A.cache.setdefault(key, Z)


# -- named objects ---------------------------------------------------------------

@dataclass(frozen=True)
class NamedObject:
    tag: tuple
    module: Module

    @property
    def label(self) -> str:
        return tag_label(self.tag)


def tag_label(tag: tuple) -> str:
    kind, *idx = tag
    if kind in ("Z+", "Z-"):
        return f"{kind}_{{{idx[0]},{idx[1]}}}"
    return f"{kind}_{idx[0]}"


def named(A: PathAlgebra, tag: tuple | str, *idx) -> Module:
    """Named object by tag: ('IC',k) ('Delta',k) ('nabla',k) ('P',k) ('I',k) ('Z+',a,b) ('Z-',a,b)."""
    if isinstance(tag, str):
        tag = (tag,) + tuple(idx)
    kind, *idx = tag
    key = ("named",) + tuple(tag)
    with A.cache_lock:
        if key in A.cache:
            return A.cache[key]
    if kind == "IC":
        M = simple(A, idx[0])
    elif kind == "P":
        M = projective(A, idx[0])
    elif kind == "I":
        M = injective(A, idx[0])
    elif kind == "Delta":
        M = standard(A, idx[0])
    elif kind == "nabla":
        M = costandard(A, idx[0])
    elif kind in ("Z+", "Z-"):
        M = string_object(A, kind[1], idx[0], idx[1])
    else:
        raise ValueError(f"unknown object tag {tag!r}")
    with A.cache_lock:
        return A.cache.setdefault(key, M)


def census_tags(n: int) -> list[tuple]:
    """One tag per isomorphism class of indecomposable: P_k (k<n) and the strings."""
    tags = [("P", k) for k in range(n)]
    for a in range(n + 1):
        for b in range(a + 1):
            tags.append(("Z+", a, b))
            if a != b:
                tags.append(("Z-", a, b))
    return tags


def indecomposables(A: PathAlgebra) -> list[NamedObject]:
    n = A.num_vertices - 1
    return [NamedObject(t, named(A, t)) for t in census_tags(n)]
