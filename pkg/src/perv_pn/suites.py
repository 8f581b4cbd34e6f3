"""Verification suites: each returns a SuiteReport of expected-vs-computed rows.

Every row carries the label of the statement it checks.  Cases run through a
thread pool whose size comes from ``PERV_PN_WORKERS`` (default 1); rows are
reassembled in case order so reports do not depend on scheduling.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field
from typing import Callable, Iterable

from .ext import ext_basis, ext_dim, ext_dims, graded_end_ring_profile, yoneda_compose
from .functors import cy_check, is_zero_spherical, verify_serre_equals_ptwist
from .modules import census_tags, is_indecomposable, is_isomorphic, named, tag_label
from .quiver import PathAlgebra, build_En, graded_block_dims
from .tables import STATEMENTS, hom_table_cases

SUITES = ("homtables", "extalgebra", "strings", "cy", "serre", "census")


@dataclass
class Row:
    statement: str
    case: str
    expected: object
    computed: object
    status: str                     # pass | fail | inconclusive
    seed: int | None = None
    detail: str = ""


@dataclass
class SuiteReport:
    suite: str
    n: int
    rows: list[Row] = dc_field(default_factory=list)
    seconds: float = 0.0

    def count(self, status: str) -> int:
        return sum(r.status == status for r in self.rows)

    def ok(self, allow_inconclusive: bool = False) -> bool:
        bad = {"fail"} if allow_inconclusive else {"fail", "inconclusive"}
        return not any(r.status in bad for r in self.rows)

    def to_json(self) -> dict:
        return {"suite": self.suite, "n": self.n, "seconds": round(self.seconds, 3),
                "passed": self.count("pass"), "failed": self.count("fail"),
                "inconclusive": self.count("inconclusive"),
                "rows": [asdict(r) for r in self.rows]}


def workers() -> int:
    try:
        return max(1, int(os.environ.get("PERV_PN_WORKERS", "1")))
    except ValueError:
        return 1


def pmap(fn: Callable, items: Iterable) -> list:
    items = list(items)
    w = workers()
    if w == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=w) as pool:
        return list(pool.map(fn, items))


def _row(statement: str, case: str, expected, computed, seed=None, detail="") -> Row:
    return Row(statement, case, expected, computed, "pass" if expected == computed else "fail",
               seed, detail)


# -- suites ------------------------------------------------------------------------------------


def homtables(A: PathAlgebra, seed: int = 0, statements=STATEMENTS) -> SuiteReport:
    n = A.num_vertices - 1
    cases = hom_table_cases(n, statements)

    def one(c):
        got = ext_dim(named(A, c.source), named(A, c.target), c.r)
        return _row(c.statement, f"{c.pair} r={c.r}", c.expected, got)

    return SuiteReport("homtables", n, pmap(one, cases))


def extalgebra(A: PathAlgebra, seed: int = 0) -> SuiteReport:
    n = A.num_vertices - 1
    E = build_En(n, A.field)
    rep = SuiteReport("extalgebra", n)
    for k in range(n + 1):
        for l in range(n + 1):
            got = ext_dims(named(A, "IC", k), named(A, "IC", l), 2 * n)
            want = graded_block_dims(E, k, l)
            want = (want + [0] * (2 * n + 1))[:2 * n + 1]
            rep.rows.append(_row("ICextalgebra", f"IC_{k}->IC_{l} graded dims", want, got))

    def loop(k: int, via: int) -> bool:
        f = ext_basis(named(A, "IC", k), named(A, "IC", via), 1)[0]
        g = ext_basis(named(A, "IC", via), named(A, "IC", k), 1)[0]
        return not yoneda_compose(g, f).is_zero()

    rep.rows.append(_row("ICextalgebra", "composite 0->1->0 in degree 2", False, loop(0, 1)))
    for k in range(1, n):
        for via in (k - 1, k + 1):
            rep.rows.append(_row("ICextalgebra", f"loop {k}->{via}->{k} in degree 2", True,
                                 loop(k, via)))
    rep.rows.append(_row("ICextalgebra", f"loop {n}->{n - 1}->{n} in degree 2", True,
                         loop(n, n - 1)))
    return rep


def expected_p_like(tag: tuple) -> int | None:
    kind, *idx = tag
    if kind == "P":
        return None
    a, b = idx
    return (a + b) // 2 if (a - b) % 2 == 0 else (a - b - 1) // 2


def strings(A: PathAlgebra, seed: int = 0) -> SuiteReport:
    n = A.num_vertices - 1
    tags = [t for t in census_tags(n) if t[0] != "P"]

    def one(tag):
        prof = graded_end_ring_profile(named(A, tag))
        k = expected_p_like(tag)
        return _row("stringsplike", f"{tag_label(tag)} is P^{k}-like", k, prof.p_like,
                    detail=f"dims={prof.dims} t-power={prof.power}")

    return SuiteReport("strings", n, pmap(one, tags))


def cy_expected(tag: tuple, d: int, n: int) -> bool:
    if tag[0] == "P":
        return d == 0
    a, b = tag[1:]
    return a == b == n and d == 2 * n


def cy(A: PathAlgebra, seed: int = 0) -> SuiteReport:
    n = A.num_vertices - 1
    cases = [(t, d) for t in census_tags(n) for d in range(2 * n + 1)]

    def one(case):
        tag, d = case
        try:
            res = cy_check(named(A, tag), d, seed)
        except RuntimeError as e:
            return Row("CY_objects", f"{tag_label(tag)} {d}-CY", cy_expected(tag, d, n), None,
                       "inconclusive", seed, str(e))
        return _row("CY_objects", f"{tag_label(tag)} {d}-CY", cy_expected(tag, d, n),
                    res.value, seed, res.method)

    return SuiteReport("cy", n, pmap(one, cases))


def serre(A: PathAlgebra, seed: int = 0) -> SuiteReport:
    n = A.num_vertices - 1
    rep = SuiteReport("serre", n)
    out = verify_serre_equals_ptwist(A, seed, mapper=pmap)
    for r in out.rows:
        status = {"certified": "pass", "refuted": "fail"}.get(r.status, "inconclusive")
        rep.rows.append(Row("serrefunctortwist", f"p_twist({r.label}) = inverse_serre({r.label})",
                            "certified", r.status, status, r.seed,
                            f"sizes {r.twist_size}/{r.serre_size} {r.reason}".strip()))
    for label, st in out.anchors:
        status = {"certified": "pass", "refuted": "fail"}.get(st, "inconclusive")
        rep.rows.append(Row("Ptwistdef", label, "certified", st, status, seed))
    for label, ok in out.t_exact:
        rep.rows.append(_row("serrefunctorcharacterization",
                             f"p_twist({label}) in D>=0", True, ok))
    return rep


def census(A: PathAlgebra, seed: int = 0) -> SuiteReport:
    n = A.num_vertices - 1
    rep = SuiteReport("census", n)
    tags = census_tags(n)
    mods = {t: named(A, t) for t in tags}

    indec = pmap(lambda t: is_indecomposable(mods[t]), tags)
    rep.rows.append(_row("otherperspectives", "number of classes", n + (n + 1) ** 2, len(tags)))
    rep.rows.append(_row("otherperspectives", "all indecomposable", True, all(indec)))
    pairs = [(s, t) for i, s in enumerate(tags) for t in tags[i + 1:]
             if mods[s].dims == mods[t].dims]
    clash = [p for p, iso in zip(pairs, pmap(lambda p: is_isomorphic(mods[p[0]], mods[p[1]]), pairs))
             if iso]
    rep.rows.append(_row("otherperspectives", "pairwise non-isomorphic", [],
                         [f"{tag_label(s)}~{tag_label(t)}" for s, t in clash]))

    profiles = dict(zip(tags, pmap(lambda t: graded_end_ring_profile(mods[t]), tags)))
    zero_sph = {t: is_zero_spherical(mods[t]) for t in tags if t[0] == "P"}
    for t in tags:
        kind = "P-like" if profiles[t].p_like is not None else (
            "0-spherical" if zero_sph.get(t) else "neither")
        want = "0-spherical" if t[0] == "P" else "P-like"
        rep.rows.append(_row("onlyPlikes", tag_label(t), want, kind))

    for t in tags:
        if t[0] == "P":
            continue
        a, b = t[1:]
        want = a - b == 3 or (a, b) == (2, 0) or a == b == 1
        rep.rows.append(_row("sphericalexceptionals", f"{tag_label(t)} 2-spherelike", want,
                             profiles[t].p_like == 1))
    spherical = [tag_label(t) for t in tags
                 if profiles[t].p_like == 1 and cy_check(mods[t], 2, seed).value]
    rep.rows.append(_row("sphericalexceptionals", "2-spherical strings",
                         ["Z+_{1,1}"] if n == 1 else [], spherical))

    exceptional = [t for t in tags if profiles[t].p_like == 0]
    flagged = []
    for t in tags:
        hits = [f"{kind}_{k}" for kind in ("Delta", "nabla") for k in range(n + 1)
                if mods[t].dims == named(A, kind, k).dims and is_isomorphic(mods[t], named(A, kind, k))]
        if hits:
            flagged.append(t)
    rep.rows.append(_row("sphericalexceptionals", "exceptional = standards and costandards",
                         sorted(tag_label(t) for t in flagged),
                         sorted(tag_label(t) for t in exceptional)))
    return rep


RUNNERS: dict[str, Callable[..., SuiteReport]] = {
    "homtables": homtables,
    "extalgebra": extalgebra,
    "strings": strings,
    "cy": cy,
    "serre": serre,
    "census": census,
}


def run_suite(name: str, A: PathAlgebra, seed: int = 0) -> SuiteReport:
    t0 = time.perf_counter()
    rep = RUNNERS[name](A, seed)
    rep.seconds = time.perf_counter() - t0
    return rep
