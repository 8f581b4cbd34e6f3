"""Path algebras of finite quivers with homogeneous quadratic relations.

Conventions
-----------
Products are written right to left: ``p*q`` means "first q, then p".  A
path is stored in *traversal order* as ``(start_vertex, arrows)``, so the
written product ``a_1 b_1`` is the traversal ``(b_1, a_1)``.  Under this
convention ``e_l A e_k`` is spanned by paths from ``k`` to ``l``.

For ``A_n`` the relation family ``a_i b_i - b_{i-1} a_{i-1}`` is taken for
``2 <= i <= n`` only, so the length-two loop at vertex 0 survives and the
one at vertex ``n`` (``b_n a_n``) is zero.  This is the only reading that
reproduces the Cartan matrix of the Delta-flags (``P_n = Delta_n`` has
factors ``IC_{n-1}, IC_n``) and global dimension ``2n``.
"""
from __future__ import annotations

import json
import threading
from collections import defaultdict
from functools import cached_property
from itertools import product as iproduct
from typing import Sequence

from .linalg import QQ, _echelon, field_from_spec


class Quiver:
    def __init__(self, num_vertices: int, arrows: Sequence[tuple[str, int, int]]):
        names = [a[0] for a in arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be unique")
        for name, s, t in arrows:
            if not (0 <= s < num_vertices and 0 <= t < num_vertices):
                raise ValueError(f"arrow {name} has endpoint out of range")
        self.num_vertices = num_vertices
        self.arrows = [tuple(a) for a in arrows]
        self.index = {a[0]: i for i, a in enumerate(self.arrows)}

    def source(self, a: int) -> int:
        return self.arrows[a][1]

    def target(self, a: int) -> int:
        return self.arrows[a][2]

    def arrows_from(self, v: int) -> list[int]:
        return [i for i, a in enumerate(self.arrows) if a[1] == v]

    def arrows_to(self, v: int) -> list[int]:
        return [i for i, a in enumerate(self.arrows) if a[2] == v]

    def paths(self, length: int) -> list[tuple[int, tuple[int, ...]]]:
        """All paths of the given length, as (start, arrows-in-traversal-order)."""
        if length == 0:
            return [(v, ()) for v in range(self.num_vertices)]
        out = []
        for p in self.paths(length - 1):
            end = self.path_end(p)
            for a in self.arrows_from(end):
                out.append((p[0], p[1] + (a,)))
        return out

    def path_end(self, p) -> int:
        return self.target(p[1][-1]) if p[1] else p[0]


def _path_concat(p, q):
    """Traverse p, then q."""
    return (p[0], p[1] + q[1])


class PathAlgebra:
    """Quotient of a path algebra by homogeneous length-2 relations.

    ``relations`` are dicts mapping traversal-order paths to coefficients.
    The basis is a list of monomials; ``basis[i] = (source, target, length,
    path)``.  Elements of the algebra are sparse dicts ``{basis index: coeff}``.
    """

    def __init__(self, quiver: Quiver, relations: Sequence[dict], field=QQ, name: str = "",
                 involution: dict[int, int] | None = None):
        self.quiver = quiver
        self.field = field
        self.name = name
        # memo for derived objects (named modules, resolutions); guarded by cache_lock
        self.cache: dict = {}
        self.cache_lock = threading.RLock()
        self.relations = []
        for rel in relations:
            rel = {p: field(c) for p, c in rel.items() if c}
            ends = {(p[0], quiver.path_end(p), len(p[1])) for p in rel}
            if len(ends) != 1 or next(iter(ends))[2] != 2:
                raise ValueError("relations must be length-2 and share endpoints")
            self.relations.append(rel)
        self._build_basis()
        self._build_mult()
        self.involution = None
        if involution is not None:
            self._set_involution(involution)

    # -- construction -------------------------------------------------------
    def _build_basis(self):
        Q = self.quiver
        F = self.field
        self.basis: list[tuple[int, int, int, tuple]] = []
        self._nf: dict = {}
        length = 0
        while True:
            paths = Q.paths(length)
            if length >= 2:
                col = {p: i for i, p in enumerate(paths)}
                gens = []
                for rel in self.relations:
                    r0 = next(iter(rel))
                    s, t = r0[0], Q.path_end(r0)
                    for k in range(length - 1):
                        for pre in (p for p in Q.paths(k) if Q.path_end(p) == s):
                            for post in (p for p in Q.paths(length - 2 - k) if p[0] == t):
                                row = {}
                                for rp, c in rel.items():
                                    full = (pre[0], pre[1] + rp[1] + post[1])
                                    j = col[full]
                                    row[j] = row.get(j, 0) + c
                                gens.append(row)
                piv, pivcols = _echelon(gens, F)
            else:
                piv, pivcols = {}, []
            pivset = set(pivcols)
            local = {}
            for i, p in enumerate(paths):
                if i not in pivset:
                    local[i] = len(self.basis)
                    self.basis.append((p[0], Q.path_end(p), length, p))
            for i, p in enumerate(paths):
                if i in pivset:
                    self._nf[p] = {local[j]: -c for j, c in piv[i].items() if j != i}
                else:
                    self._nf[p] = {local[i]: F.one}
            if not local:
                self.max_length = length - 1
                break
            length += 1
            if length > 64:
                raise ValueError("algebra does not appear to be finite-dimensional")

    def _build_mult(self):
        self.mult: dict[tuple[int, int], dict[int, object]] = {}
        for i, (si, ti, li, pi) in enumerate(self.basis):
            for j, (sj, tj, lj, pj) in enumerate(self.basis):
                # b_i * b_j : first b_j then b_i
                if tj != si:
                    continue
                prod = self.reduce_path(_path_concat(pj, pi))
                if prod:
                    self.mult[(i, j)] = prod

    def reduce_path(self, p) -> dict:
        if len(p[1]) > self.max_length:
            return {}
        return dict(self._nf[p])

    # -- basic accessors -----------------------------------------------------
    @property
    def num_vertices(self) -> int:
        return self.quiver.num_vertices

    @property
    def dim(self) -> int:
        return len(self.basis)

    def idempotent(self, v: int) -> int:
        return self.by_endpoints[(v, v)][0]

    @cached_property
    def by_endpoints(self) -> dict[tuple[int, int], list[int]]:
        """(source, target) -> basis indices; i.e. e_target A e_source."""
        d = defaultdict(list)
        for i, (s, t, _, _) in enumerate(self.basis):
            d[(s, t)].append(i)
        return {k: v for k, v in d.items()}

    def paths_between(self, source: int, target: int) -> list[int]:
        """Basis of e_target A e_source."""
        return self.by_endpoints.get((source, target), [])

    @cached_property
    def slot(self) -> list[int]:
        """Position of each basis element inside its e_t A e_s block."""
        out = [0] * self.dim
        for idx in self.by_endpoints.values():
            for k, i in enumerate(idx):
                out[i] = k
        return out

    def source(self, i: int) -> int:
        return self.basis[i][0]

    def target(self, i: int) -> int:
        return self.basis[i][1]

    def degree(self, i: int) -> int:
        return self.basis[i][2]

    def arrow_element(self, name: str) -> dict:
        a = self.quiver.index[name]
        p = (self.quiver.source(a), (a,))
        return self.reduce_path(p)

    def basis_name(self, i: int) -> str:
        s, t, l, p = self.basis[i]
        if l == 0:
            return f"e{s}"
        return "*".join(self.quiver.arrows[a][0] for a in reversed(p[1]))

    # -- arithmetic ----------------------------------------------------------
    def mul(self, x: dict, y: dict) -> dict:
        """x*y (first y, then x)."""
        out: dict = {}
        mult = self.mult
        for i, a in x.items():
            for j, b in y.items():
                prod = mult.get((i, j))
                if prod:
                    ab = a * b
                    for k, c in prod.items():
                        v = out.get(k, 0) + ab * c
                        if v:
                            out[k] = v
                        else:
                            out.pop(k, None)
        return out

    def add(self, x: dict, y: dict, c=1) -> dict:
        out = dict(x)
        for k, v in y.items():
            w = out.get(k, 0) + c * v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return out

    def scale(self, x: dict, c) -> dict:
        if not c:
            return {}
        return {k: c * v for k, v in x.items()}

    def one(self) -> dict:
        return {self.idempotent(v): self.field.one for v in range(self.num_vertices)}

    def is_radical(self, x: dict) -> bool:
        return all(self.degree(i) > 0 for i in x)

    def unit_part(self, x: dict):
        """Coefficient of the idempotent in x (x assumed in some e_v A e_v)."""
        for i, c in x.items():
            if self.degree(i) == 0:
                return c
        return self.field.zero

    def inverse_local(self, x: dict) -> dict:
        """Inverse of a unit u = c e_v + r (r radical) inside e_v A e_v."""
        c = self.unit_part(x)
        if not c:
            raise ZeroDivisionError("element is not a unit")
        v = self.source(next(iter(x)))
        e = {self.idempotent(v): self.field.one}
        r = self.scale(self.add(x, e, -c), self.field.one / c)   # x/c - e, nilpotent
        inv = dict(e)
        term = dict(e)
        for _ in range(self.max_length + 1):
            term = self.scale(self.mul(r, term), -1)
            if not term:
                break
            inv = self.add(inv, term)
        return self.scale(inv, self.field.one / c)

    # -- involution ----------------------------------------------------------
    def _set_involution(self, perm: dict[int, int]):
        Q = self.quiver
        for a, b in perm.items():
            if perm.get(b) != a:
                raise ValueError("arrow permutation must be an involution")
            if Q.source(a) != Q.target(b) or Q.target(a) != Q.source(b):
                raise ValueError("involution must reverse arrows")
        self.involution = dict(perm)
        for rel in self.relations:
            img: dict = {}
            for p, c in rel.items():
                img = self.add(img, self.reduce_path(self._sigma_path(p)), c)
            if img:
                raise ValueError("involution does not preserve the relations")
        self._sigma = [self.reduce_path(self._sigma_path(b[3])) for b in self.basis]

    def _sigma_path(self, p):
        arrows = tuple(self.involution[a] for a in reversed(p[1]))
        return (self.quiver.path_end(p), arrows)

    def sigma(self, x: dict) -> dict:
        """Anti-involution (swap a_i <-> b_i and reverse paths)."""
        if self.involution is None:
            raise ValueError(f"{self.name or 'algebra'} has no anti-involution")
        out: dict = {}
        for i, c in x.items():
            out = self.add(out, self._sigma[i], c)
        return out

    # -- derived data ------------------------------------------------------------
    def cartan_matrix(self) -> list[list[int]]:
        return cartan_matrix(self)

    def to_json(self) -> dict:
        return algebra_to_json(self)

    def __repr__(self):
        return f"PathAlgebra({self.name or '?'}, dim={self.dim})"


def build_An(n: int, field=QQ) -> PathAlgebra:
    """The algebra A_n whose module category is Perv(P^n)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    arrows = []
    for i in range(1, n + 1):
        arrows.append((f"b{i}", i - 1, i))
        arrows.append((f"a{i}", i, i - 1))
    Q = Quiver(n + 1, arrows)
    ix = Q.index
    one = 1

    def tr(*names):
        # written right-to-left product -> traversal-order path
        seq = tuple(ix[x] for x in reversed(names))
        return (Q.source(seq[0]), seq)

    rels = []
    for i in range(2, n + 1):
        rels.append({tr(f"a{i-1}", f"a{i}"): one})
        rels.append({tr(f"a{i}", f"b{i}"): one, tr(f"b{i-1}", f"a{i-1}"): -one})
    for i in range(1, n):
        rels.append({tr(f"b{i+1}", f"b{i}"): one})
    if n >= 1:
        rels.append({tr(f"b{n}", f"a{n}"): one})
    inv = {}
    for i in range(1, n + 1):
        inv[ix[f"a{i}"]] = ix[f"b{i}"]
        inv[ix[f"b{i}"]] = ix[f"a{i}"]
    return PathAlgebra(Q, rels, field, name=f"A_{n}", involution=inv)


def build_En(n: int, field=QQ) -> PathAlgebra:
    """The graded algebra E_n (arrow degree 1) presenting the Ext algebra of the simples."""
    if n < 1:
        raise ValueError("n must be >= 1")
    arrows = []
    for k in range(n):
        arrows.append((f"e{k},{k+1}", k, k + 1))
        arrows.append((f"e{k+1},{k}", k + 1, k))
    Q = Quiver(n + 1, arrows)
    ix = Q.index

    def tr(*names):
        seq = tuple(ix[x] for x in reversed(names))
        return (Q.source(seq[0]), seq)

    rels = [{tr("e1,0", "e0,1"): 1}]
    for k in range(1, n):
        rels.append({tr(f"e{k+1},{k}", f"e{k},{k+1}"): 1, tr(f"e{k-1},{k}", f"e{k},{k-1}"): -1})
    inv = {}
    for k in range(n):
        inv[ix[f"e{k},{k+1}"]] = ix[f"e{k+1},{k}"]
        inv[ix[f"e{k+1},{k}"]] = ix[f"e{k},{k+1}"]
    return PathAlgebra(Q, rels, field, name=f"E_{n}", involution=inv)


def cartan_matrix(A: PathAlgebra) -> list[list[int]]:
    """Entry (l, k) = dim e_l A e_k = multiplicity of simple l in projective k."""
    N = A.num_vertices
    C = [[0] * N for _ in range(N)]
    for (s, t), idx in A.by_endpoints.items():
        C[t][s] = len(idx)
    return C


def graded_block_dims(A: PathAlgebra, source: int, target: int) -> list[int]:
    """Graded dimension of e_target A e_source, indexed by path length."""
    dims = [0] * (A.max_length + 1)
    for i in A.paths_between(source, target):
        dims[A.degree(i)] += 1
    return dims


def radical_power_basis(A: PathAlgebra, m: int) -> list[int]:
    """Basis indices spanning the span of reduced paths of length >= m."""
    return [i for i, b in enumerate(A.basis) if b[2] >= m]


def is_associative(A: PathAlgebra) -> bool:
    N = A.dim
    for i, j, k in iproduct(range(N), repeat=3):
        x, y, z = {i: A.field.one}, {j: A.field.one}, {k: A.field.one}
        if A.mul(A.mul(x, y), z) != A.mul(x, A.mul(y, z)):
            return False
    return True


def algebra_to_json(A: PathAlgebra) -> dict:
    F = A.field
    Q = A.quiver
    names = [a[0] for a in Q.arrows]
    return {
        "schema": "perv_pn.algebra/1",
        "name": A.name,
        "field": repr(F),
        "convention": "products written right-to-left; paths listed in traversal order",
        "vertices": Q.num_vertices,
        "arrows": [{"name": a[0], "source": a[1], "target": a[2]} for a in Q.arrows],
        "relations": [[{"path": [names[a] for a in p[1]], "coeff": F.to_json(c)}
                       for p, c in rel.items()] for rel in A.relations],
        "basis": [{"source": s, "target": t, "length": l, "path": [names[a] for a in p[1]]}
                  for (s, t, l, p) in A.basis],
        "mult": [[i, j, [[k, F.to_json(c)] for k, c in sorted(prod.items())]]
                 for (i, j), prod in sorted(A.mult.items())],
        "involution": None if A.involution is None else
        {names[a]: names[b] for a, b in sorted(A.involution.items())},
    }


def algebra_from_json(doc: dict | str) -> PathAlgebra:
    if isinstance(doc, str):
        doc = json.loads(doc)
    F = field_from_spec("rationals" if doc.get("field", "QQ") == "QQ"
                        else doc["field"].strip("GF()"))
    arrows = [(a["name"], a["source"], a["target"]) for a in doc["arrows"]]
    Q = Quiver(doc["vertices"], arrows)
    rels = []
    for rel in doc["relations"]:
        r = {}
        for term in rel:
            seq = tuple(Q.index[x] for x in term["path"])
            r[(Q.source(seq[0]), seq)] = F.from_json(term["coeff"])
        rels.append(r)
    inv = None
    if doc.get("involution"):
        inv = {Q.index[a]: Q.index[b] for a, b in doc["involution"].items()}
    return PathAlgebra(Q, rels, F, name=doc.get("name", ""), involution=inv)
