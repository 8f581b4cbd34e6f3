"""Closed-form Hom tables for named objects of Perv(P^n).

Each case states dim Hom(X, Y[r]) for named objects X, Y.  The formulas are
transcribed from the published statements and are keyed by the statement
label they come from; nothing here computes anything.  ``r`` runs over
[-1, 2n + 1] so that vanishing just outside the nonzero range is checked too.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .modules import tag_label

STATEMENTS = (
    "maps_between_simples",
    "topIC_to_lower_nabla",
    "DeltaHoms",
    "mor_simple_stand",
    "proj_inj",
    "HomZZplusIC",
    "HomZZtopIC",
    "HomZZminusIC",
    "homdeltazigzag",
    "homzigzagdelta",
    "zigzaghoms",
)


@dataclass(frozen=True)
class HomCase:
    statement: str
    source: tuple
    target: tuple
    r: int
    expected: int

    @property
    def pair(self) -> str:
        return f"{tag_label(self.source)}->{tag_label(self.target)}"


def _even(r: int) -> bool:
    return r % 2 == 0


def simples(k: int, l: int, r: int) -> bool:
    m = r - abs(k - l)
    return 0 <= m <= 2 * min(k, l) and _even(m)


def delta_to_ic(k: int, l: int, r: int) -> bool:
    return l >= k and r == l - k


def delta_delta(k: int, l: int, r: int) -> bool:
    return (l > k and r in (l - k - 1, l - k)) or (l == k and r == 0)


def ic_to_delta(l: int, k: int, r: int) -> bool:
    return r == k + l or (r == k - l - 1 and l < k)


def ic_to_proj(l: int, k: int, r: int) -> bool:
    return l == k and r == 0


def zz_to_bottom_ic(a: int, b: int, r: int) -> bool:
    if (a - b) % 2:
        return False
    return 0 <= r <= 2 * b and _even(r)


def zz_to_top_ic(a: int, b: int, r: int) -> bool:
    if (a - b) % 2 == 0:
        return 0 <= r <= a + b and _even(r)
    return 0 <= r <= a - b - 1 and _even(r)


def bottom_ic_to_zz(a: int, b: int, r: int) -> bool:
    if (a - b) % 2 == 0:
        return a - b <= r <= a + b and _even(r)
    return ((0 <= r <= min(2 * b, a - b) and _even(r))
            or (max(2 * b, a - b) <= r <= a + b and not _even(r)))


def delta_to_zz(a: int, b: int, i: int, r: int) -> bool:
    return r == 2 * i


def zz_to_delta(a: int, b: int, r: int) -> bool:
    if (a - b) % 2 == 0:
        return r == a + b
    return r == a - b - 1


def zz_to_zz(a: int, b: int, i: int, r: int) -> bool:
    if (a - b) % 2 == 0:
        return 2 * i <= r <= a + b and _even(r)
    return 2 * i <= r <= a - b - 1 and _even(r)


def _pairs(n: int) -> Iterator[tuple[int, int]]:
    for a in range(n + 1):
        for b in range(a + 1):
            yield a, b


def _cases(n: int, statement: str, X: tuple, Y: tuple, rule: Callable[[int], bool]) -> Iterator[HomCase]:
    for r in range(-1, 2 * n + 2):
        yield HomCase(statement, X, Y, r, int(rule(r)))


def hom_table_cases(n: int, statements=STATEMENTS) -> list[HomCase]:
    """All expected Hom dimensions for A_n, one case per (statement, X, Y, r)."""
    out: list[HomCase] = []
    want = set(statements)
    V = range(n + 1)

    def add(statement, X, Y, rule):
        if statement in want:
            out.extend(_cases(n, statement, X, Y, rule))

    for k in V:
        for l in V:
            add("maps_between_simples", ("IC", k), ("IC", l), lambda r, k=k, l=l: simples(k, l, r))
            rule = lambda r, k=k, l=l: delta_to_ic(k, l, r)
            add("topIC_to_lower_nabla", ("Delta", k), ("IC", l), rule)
            add("topIC_to_lower_nabla", ("IC", l), ("nabla", k), rule)
            rule = lambda r, k=k, l=l: delta_delta(k, l, r)
            add("DeltaHoms", ("Delta", k), ("Delta", l), rule)
            add("DeltaHoms", ("nabla", l), ("nabla", k), rule)
            rule = lambda r, k=k, l=l: ic_to_delta(l, k, r)
            add("mor_simple_stand", ("IC", l), ("Delta", k), rule)
            add("mor_simple_stand", ("nabla", k), ("IC", l), rule)
            if k < n:
                add("proj_inj", ("IC", l), ("P", k), lambda r, k=k, l=l: ic_to_proj(l, k, r))

    for a, b in _pairs(n):
        zp, zm = ("Z+", a, b), ("Z-", a, b)
        rule = lambda r, a=a, b=b: zz_to_bottom_ic(a, b, r)
        add("HomZZplusIC", zp, ("IC", b), rule)
        add("HomZZplusIC", ("IC", b), zm, rule)
        rule = lambda r, a=a, b=b: zz_to_top_ic(a, b, r)
        add("HomZZtopIC", zp, ("IC", a), rule)
        add("HomZZtopIC", ("IC", a), zm, rule)
        for i in range(1, n - a + 1):
            add("HomZZtopIC", zp, ("IC", a + i), lambda r, a=a, b=b, i=i: zz_to_top_ic(a, b, r - i))
        rule = lambda r, a=a, b=b: bottom_ic_to_zz(a, b, r)
        add("HomZZminusIC", ("IC", b), zp, rule)
        add("HomZZminusIC", zm, ("IC", b), rule)
        for i in range(a - b + 1):
            if 2 * i >= a - b:
                break
            rule = lambda r, a=a, b=b, i=i: delta_to_zz(a, b, i, r)
            add("homdeltazigzag", ("Delta", a - 2 * i), zp, rule)
            add("homdeltazigzag", zm, ("nabla", a - 2 * i), rule)
        rule = lambda r, a=a, b=b: zz_to_delta(a, b, r)
        add("homzigzagdelta", zp, ("Delta", a), rule)
        add("homzigzagdelta", ("nabla", a), zm, rule)
        for i in range((a - b) // 2 + 1):
            rule = lambda r, a=a, b=b, i=i: zz_to_zz(a, b, i, r)
            add("zigzaghoms", ("Z+", a - 2 * i, b), zp, rule)
            add("zigzaghoms", zm, ("Z-", a - 2 * i, b), rule)
    return out
