"""Exact linear algebra over the rationals and prime fields.

Matrices are stored as lists of sparse rows (``dict`` column -> entry) since
almost every system built by the rest of the package is very sparse.  All
arithmetic is exact; nothing here ever touches floating point.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2


class Rationals:
    """The field Q, backed by ``gmpy2.mpq`` (always-reduced fractions)."""

    char = 0

    def __init__(self):
        self.zero = gmpy2.mpq(0)
        self.one = gmpy2.mpq(1)

    def __call__(self, x):
        if isinstance(x, Fraction):
            return gmpy2.mpq(x.numerator, x.denominator)
        return gmpy2.mpq(x)

    def random_element(self, rng: random.Random, bound: int = 7):
        return gmpy2.mpq(rng.randint(-bound, bound))

    def to_json(self, x):
        x = gmpy2.mpq(x)
        if x.denominator == 1:
            return int(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def from_json(self, x):
        if isinstance(x, str):
            num, _, den = x.partition("/")
            return gmpy2.mpq(int(num), int(den or 1))
        return gmpy2.mpq(x)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class Mod:
    """Residue class modulo a prime; ``p`` is carried by each element."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            return other.v
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return int(other)

    def __add__(self, other):
        return Mod(self.v + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Mod(self.v - self._coerce(other), self.p)

    def __rsub__(self, other):
        return Mod(self._coerce(other) - self.v, self.p)

    def __mul__(self, other):
        return Mod(self.v * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other) % self.p
        if o == 0:
            raise ZeroDivisionError("division by zero mod p")
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Mod(self._coerce(other), self.p) / self

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e):
        return Mod(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.v == other.v
        return self.v == self._coerce(other) % self.p

    def __ne__(self, other):
        return not self.__eq__(other)

    def __bool__(self):
        return self.v != 0

    def __hash__(self):
        return hash(self.v)

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


class PrimeField:
    """The field GF(p)."""

    def __init__(self, p: int):
        if p < 2 or not gmpy2.is_prime(p):
            raise ValueError(f"{p} is not a prime")
        self.p = p
        self.char = p
        self.zero = Mod(0, p)
        self.one = Mod(1, p)

    def __call__(self, x):
        if isinstance(x, Mod):
            return Mod(x.v, self.p)
        if isinstance(x, Fraction) or type(x).__name__ == "mpq":
            return Mod(int(x.numerator), self.p) / int(x.denominator)
        return Mod(int(x), self.p)

    def random_element(self, rng: random.Random, bound: int = 7):
        return Mod(rng.randrange(self.p), self.p)

    def to_json(self, x):
        return int(x)

    def from_json(self, x):
        return Mod(int(x), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


def field_from_spec(spec: str | int | None):
    """``None``/``"rationals"``/``"QQ"`` -> QQ, ``"7"``/``7``/``"prime:7"`` -> GF(7)."""
    if spec is None:
        return QQ
    if isinstance(spec, int):
        return PrimeField(spec)
    s = str(spec).strip().lower()
    if s in ("rationals", "qq", "q", "0"):
        return QQ
    for prefix in ("prime:", "gf", "p="):
        if s.startswith(prefix):
            s = s[len(prefix):].strip("() ")
    return PrimeField(int(s))


class Matrix:
    """A matrix with exact entries, stored as sparse rows.

    Treated as immutable once built; helpers return new matrices.
    """

    __slots__ = ("nrows", "ncols", "rows", "field")

    def __init__(self, nrows: int, ncols: int, rows=None, field=QQ):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        if rows is None:
            rows = [dict() for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        self.rows = rows

    @classmethod
    def from_lists(cls, data: Sequence[Sequence], field=QQ, ncols: int | None = None):
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if nrows else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            rows.append({j: field(x) for j, x in enumerate(r) if x != 0})
        return cls(nrows, ncols, rows, field)

    @classmethod
    def zero(cls, nrows: int, ncols: int, field=QQ):
        return cls(nrows, ncols, None, field)

    @classmethod
    def identity(cls, n: int, field=QQ):
        return cls(n, n, [{i: field.one} for i in range(n)], field)

    @classmethod
    def from_columns(cls, cols: Sequence[dict], nrows: int, field=QQ):
        rows = [dict() for _ in range(nrows)]
        for j, c in enumerate(cols):
            for i, x in c.items():
                if x:
                    rows[i][j] = x
        return cls(nrows, len(cols), rows, field)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, self.field.zero)

    def to_lists(self):
        z = self.field.zero
        return [[r.get(j, z) for j in range(self.ncols)] for r in self.rows]

    def columns(self) -> list[dict]:
        cols = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, x in r.items():
                cols[j][i] = x
        return cols

    def transpose(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, self.columns(), self.field)

    T = property(transpose)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix) or self.shape != other.shape:
            return NotImplemented
        return all(_clean(a) == _clean(b) for a, b in zip(self.rows, other.rows))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        orows = other.rows
        for r in self.rows:
            acc: dict = {}
            for k, x in r.items():
                for j, y in orows[k].items():
                    acc[j] = acc.get(j, 0) + x * y
            out.append({j: v for j, v in acc.items() if v})
        return Matrix(self.nrows, other.ncols, out, self.field)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = []
        for a, b in zip(self.rows, other.rows):
            c = dict(a)
            for j, y in b.items():
                c[j] = c.get(j, 0) + y
            out.append({j: v for j, v in c.items() if v})
        return Matrix(self.nrows, self.ncols, out, self.field)

    def __neg__(self):
        return Matrix(self.nrows, self.ncols, [{j: -x for j, x in r.items()} for r in self.rows], self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Matrix":
        if not c:
            return Matrix.zero(self.nrows, self.ncols, self.field)
        return Matrix(self.nrows, self.ncols, [{j: c * x for j, x in r.items()} for r in self.rows], self.field)

    def apply(self, v: Sequence) -> list:
        """Matrix times a dense column vector."""
        z = self.field.zero
        return [sum((x * v[j] for j, x in r.items()), z) for r in self.rows]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        cmap = {c: k for k, c in enumerate(cols)}
        out = []
        for i in rows:
            out.append({cmap[j]: x for j, x in self.rows[i].items() if j in cmap})
        return Matrix(len(rows), len(cols), out, self.field)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("row mismatch")
        off = self.ncols
        out = []
        for a, b in zip(self.rows, other.rows):
            c = dict(a)
            c.update({off + j: x for j, x in b.items()})
            out.append(c)
        return Matrix(self.nrows, self.ncols + other.ncols, out, self.field)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise ValueError("column mismatch")
        return Matrix(self.nrows + other.nrows, self.ncols,
                      [dict(r) for r in self.rows] + [dict(r) for r in other.rows], self.field)

    def rank(self) -> int:
        return len(_echelon(self.rows, self.field)[1])

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("det of non-square matrix")
        return _det(self)

    def __repr__(self):
        return f"Matrix({self.to_lists()!r})"


def _clean(r: dict) -> dict:
    return {j: x for j, x in r.items() if x}


def _echelon(rows: Iterable[dict], field):
    """Incremental reduced echelon form.

    Returns (pivot_rows, pivots) where pivot_rows maps pivot column -> row with
    a 1 in that column and zeros in every other pivot column.
    """
    piv: dict[int, dict] = {}
    one = field.one
    for r0 in rows:
        r = {j: x for j, x in r0.items() if x}
        hit = [j for j in r if j in piv]
        for c in hit:
            x = r.get(c)
            if not x:
                continue
            for j, y in piv[c].items():
                v = r.get(j, 0) - x * y
                if v:
                    r[j] = v
                else:
                    r.pop(j, None)
        if not r:
            continue
        c = min(r)
        inv = one / r[c]
        if inv != one:
            r = {j: x * inv for j, x in r.items()}
        # keep earlier pivot rows reduced in the new pivot column
        for pc, pr in piv.items():
            x = pr.get(c)
            if x:
                for j, y in r.items():
                    v = pr.get(j, 0) - x * y
                    if v:
                        pr[j] = v
                    else:
                        pr.pop(j, None)
        piv[c] = r
    return piv, sorted(piv)


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form of M and the list of pivot columns."""
    piv, cols = _echelon(M.rows, M.field)
    rows = [dict(piv[c]) for c in cols]
    rows += [dict() for _ in range(M.nrows - len(rows))]
    return Matrix(M.nrows, M.ncols, rows, M.field), cols


def rank(M: Matrix) -> int:
    return M.rank()


def kernel_basis(M: Matrix) -> Matrix:
    """Matrix whose columns form a basis of the right null space of M."""
    piv, cols = _echelon(M.rows, M.field)
    pivset = set(cols)
    free = [j for j in range(M.ncols) if j not in pivset]
    basis = []
    one = M.field.one
    for f in free:
        v = {f: one}
        for c in cols:
            x = piv[c].get(f)
            if x:
                v[c] = -x
        basis.append(v)
    return Matrix.from_columns(basis, M.ncols, M.field)


def kernel_vectors(M: Matrix) -> list[dict]:
    """Kernel basis as a list of sparse vectors."""
    return kernel_basis(M).columns()


def left_kernel_vectors(M: Matrix) -> list[dict]:
    return kernel_vectors(M.transpose())


def solve(A: Matrix, b: Sequence) -> list | None:
    """A particular solution of A x = b, or None when b is not in the column span."""
    if len(b) != A.nrows:
        raise ValueError(f"solve: b has length {len(b)}, A has {A.nrows} rows")
    n = A.ncols
    rows = []
    for r, bi in zip(A.rows, b):
        rr = dict(r)
        if bi:
            rr[n] = A.field(bi) if not _is_elem(bi) else bi
        rows.append(rr)
    piv, cols = _echelon(rows, A.field)
    if n in piv:
        return None
    z = A.field.zero
    x = [z] * n
    for c in cols:
        x[c] = piv[c].get(n, z)
    return x


def solve_many(A: Matrix, B: Matrix) -> Matrix | None:
    """Solve A X = B for all columns of B at once; None if any column fails."""
    n = A.ncols
    rows = []
    for r, br in zip(A.rows, B.rows):
        rr = dict(r)
        rr.update({n + j: x for j, x in br.items()})
        rows.append(rr)
    piv, cols = _echelon(rows, A.field)
    if cols and cols[-1] >= n:
        return None
    out = [dict() for _ in range(n)]
    for c in cols:
        out[c] = {j - n: x for j, x in piv[c].items() if j >= n}
    return Matrix(n, B.ncols, out, A.field)


def _is_elem(x) -> bool:
    return isinstance(x, Mod) or type(x).__name__ == "mpq"


def column_space_basis(M: Matrix) -> list[dict]:
    """Basis (as sparse column vectors) of the column span of M."""
    piv, cols = _echelon(M.columns(), M.field)
    return [piv[c] for c in cols]


def _det(M: Matrix):
    F = M.field
    n = M.nrows
    rows = [dict(r) for r in M.rows]
    det = F.one
    for c in range(n):
        p = None
        for i in range(c, n):
            if rows[i].get(c):
                p = i
                break
        if p is None:
            return F.zero
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        pr = rows[c]
        pv = pr[c]
        det = det * pv
        for i in range(c + 1, n):
            x = rows[i].get(c)
            if not x:
                continue
            f = x / pv
            ri = rows[i]
            for j, y in pr.items():
                v = ri.get(j, 0) - f * y
                if v:
                    ri[j] = v
                else:
                    ri.pop(j, None)
    return det


class Subspace:
    """A subspace of F^n kept in reduced echelon form.

    Supports membership tests and coordinates relative to a complement, which
    is how quotients (cokernels, cohomology) are handled throughout.
    """

    def __init__(self, n: int, vectors: Iterable[dict] = (), field=QQ):
        self.n = n
        self.field = field
        self._piv: dict[int, dict] = {}
        self.add_all(vectors)

    def add_all(self, vectors: Iterable[dict]):
        piv, _ = _echelon(list(self._piv.values()) + [dict(v) for v in vectors], self.field)
        self._piv = piv

    @property
    def dim(self) -> int:
        return len(self._piv)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._piv)

    def basis(self) -> list[dict]:
        return [dict(self._piv[c]) for c in sorted(self._piv)]

    def reduce(self, v: dict) -> dict:
        """Normal form of v modulo the subspace (zero in all pivot columns)."""
        r = {j: x for j, x in v.items() if x}
        for c in [j for j in r if j in self._piv]:
            x = r.get(c)
            if not x:
                continue
            for j, y in self._piv[c].items():
                w = r.get(j, 0) - x * y
                if w:
                    r[j] = w
                else:
                    r.pop(j, None)
        return r

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def complement_coordinates(self) -> list[int]:
        """Standard basis indices spanning a complement of the subspace."""
        return [j for j in range(self.n) if j not in self._piv]


def vec_add(a: dict, b: dict, c=1) -> dict:
    """a + c*b for sparse vectors (new dict)."""
    out = dict(a)
    for j, y in b.items():
        v = out.get(j, 0) + c * y
        if v:
            out[j] = v
        else:
            out.pop(j, None)
    return out


def random_matrix(rng: random.Random, nrows: int, ncols: int, field=QQ, bound: int = 5,
                  density: float = 1.0) -> Matrix:
    data = [[field(rng.randint(-bound, bound)) if rng.random() < density else field.zero
             for _ in range(ncols)] for _ in range(nrows)]
    return Matrix.from_lists(data, field, ncols=ncols)
