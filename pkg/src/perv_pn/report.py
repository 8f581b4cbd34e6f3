"""Report assembly and rendering (json, tsv, text)."""
from __future__ import annotations

import json

from .suites import SuiteReport

SCHEMA = "perv_pn.report/1"


def build_report(suites: list[SuiteReport], *, n: int, field: str, seed: int,
                 allow_inconclusive: bool = False) -> dict:
    ok = all(s.ok(allow_inconclusive) for s in suites)
    return {
        "schema": SCHEMA,
        "n": n,
        "field": field,
        "seed": seed,
        "advisory": field != "rationals",
        "allow_inconclusive": allow_inconclusive,
        "status": "pass" if ok else "fail",
        "suites": [s.to_json() for s in suites],
    }


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, default=str) + "\n"


def _homtable_tsv(suite: dict) -> list[str]:
    """One block per statement: rows are r, columns are the (X, Y) pairs.

    A cell is the computed dimension, or ``computed!expected`` on mismatch.
    """
    out = []
    blocks: dict[str, dict] = {}
    for row in suite["rows"]:
        pair, r = row["case"].rsplit(" r=", 1)
        cell = str(row["computed"]) if row["status"] == "pass" else f"{row['computed']}!{row['expected']}"
        blocks.setdefault(row["statement"], {}).setdefault(pair, {})[int(r)] = cell
    for statement, cols in blocks.items():
        pairs = list(cols)
        rs = sorted({r for c in cols.values() for r in c})
        out.append(f"# {statement}")
        out.append("\t".join(["r"] + pairs))
        for r in rs:
            out.append("\t".join([str(r)] + [cols[p].get(r, "") for p in pairs]))
        out.append("")
    return out


def render_tsv(report: dict) -> str:
    lines = [f"# {SCHEMA}\tn={report['n']}\tfield={report['field']}\tseed={report['seed']}"
             f"\tstatus={report['status']}" + ("\tadvisory" if report["advisory"] else "")]
    for s in report["suites"]:
        lines.append(f"## suite={s['suite']}\tpassed={s['passed']}\tfailed={s['failed']}"
                     f"\tinconclusive={s['inconclusive']}")
        if s["suite"] == "homtables":
            lines.extend(_homtable_tsv(s))
            continue
        lines.append("statement\tcase\texpected\tcomputed\tstatus\tseed\tdetail")
        for row in s["rows"]:
            lines.append("\t".join(str(row[k]) if row[k] is not None else ""
                                   for k in ("statement", "case", "expected", "computed",
                                             "status", "seed", "detail")))
        lines.append("")
    return "\n".join(lines) + "\n"


def render_text(report: dict) -> str:
    lines = [f"n={report['n']} field={report['field']} seed={report['seed']}"
             + (" (advisory: positive characteristic)" if report["advisory"] else "")]
    for s in report["suites"]:
        lines.append(f"[{s['suite']}] {s['passed']} passed, {s['failed']} failed, "
                     f"{s['inconclusive']} inconclusive ({s['seconds']}s)")
        by_statement: dict[str, list] = {}
        for row in s["rows"]:
            by_statement.setdefault(row["statement"], []).append(row)
        for statement, rows in by_statement.items():
            bad = [r for r in rows if r["status"] != "pass"]
            lines.append(f"  {'ok  ' if not bad else 'FAIL'} {statement}: {len(rows) - len(bad)}/{len(rows)}")
            for r in bad:
                lines.append(f"       {r['status']}: {r['case']} expected {r['expected']!r} "
                             f"computed {r['computed']!r}" + (f" seed {r['seed']}" if r["seed"] is not None else ""))
    lines.append(f"status: {report['status']}")
    return "\n".join(lines) + "\n"


RENDERERS = {"json": render_json, "tsv": render_tsv, "text": render_text}
