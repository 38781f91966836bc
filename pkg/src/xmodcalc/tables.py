"""Reproduce the two tables of induced crossed modules from bundled expectations."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .ident import are_isomorphic, automorphism_order, fingerprint, identify
from .induced import induce_subgroups
from .perm import Perm, PermGroup
from .tasks import TaskOptions, resolve_elements, resolve_group
from .xmod import CheckOptions

DATA_PATH = Path(__file__).with_name("data") / "tables.json"


def load_table_data(path: str | Path | None = None) -> dict:
    return json.loads(Path(path or DATA_PATH).read_text())


def table_rows(which: str | int, data: dict | None = None) -> list[dict]:
    data = data or load_table_data()
    key = str(which)
    if key not in data["tables"]:
        raise KeyError(f"no table {which!r}; choose from {sorted(data['tables'])}")
    return data["tables"][key]["rows"]


@dataclass
class RowResult:
    id: str
    status: str  # PASS, FAIL or FLAGGED
    checks: dict[str, bool]
    computed: dict
    printed: dict
    row: dict
    seconds: float
    messages: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("row")
        return d


def _expected_group(desc) -> PermGroup:
    return resolve_group(desc)


def run_row(row: dict, options: TaskOptions | None = None) -> RowResult:
    opts = options or TaskOptions()
    t0 = time.perf_counter()
    Q = resolve_group(row["Q"])
    P = resolve_elements(Q, row["P"])
    M = resolve_elements(Q, row["M"])
    checks_opts = CheckOptions(mode=opts.checks, seed=opts.seed)
    r = induce_subgroups(Q, P, M, max_cosets=opts.max_cosets, checks=checks_opts)
    G = r.group
    exp = row["expected"]
    checks: dict[str, bool] = {"axioms": r.report.ok}
    messages: list[str] = []
    checks["order"] = G.order == exp["order"]
    checks["kernel"] = list(r.report.kernel_invariants) == list(exp["kernel_invariants"])
    if "iso" in exp:
        H = _expected_group(exp["iso"])
        checks["iso"] = are_isomorphic(H, G) is not None
    aut = None
    if "aut_order" in exp:
        if G.order <= opts.aut_budget:
            aut = automorphism_order(G, budget=opts.aut_budget)
            checks["aut"] = aut == exp["aut_order"]
        else:
            messages.append(f"Aut skipped: order {G.order} exceeds budget {opts.aut_budget}")
    computed = {
        "order": G.order,
        "kernel_invariants": list(r.report.kernel_invariants),
        "label": identify(G),
        "aut_order": aut,
        "fingerprint": fingerprint(G).to_json(),
        "degree": G.degree,
        "gens": [str(g) for g in G.gens],
        "image_order": r.report.image_order,
    }
    if row.get("flag"):
        messages.append(f"FLAGGED: printed {row['printed'].get('induced')}; {row['flag']}")
    ok = all(checks.values())
    status = "FAIL" if not ok else ("FLAGGED" if row.get("flag") else "PASS")
    return RowResult(row["id"], status, checks, computed, dict(row["printed"]), row, time.perf_counter() - t0, messages)


def _group_of(computed: dict) -> PermGroup:
    deg = computed["degree"]
    return PermGroup(deg, [Perm.parse(g, deg) for g in computed["gens"]])


def _cross_checks(results: list[RowResult]) -> None:
    by_id = {r.id: r for r in results}
    for r in results:
        other = r.row["expected"].get("same_as")
        if other and other in by_id:
            o = by_id[other]
            same = are_isomorphic(_group_of(r.computed), _group_of(o.computed)) is not None
            r.checks["same_as"] = same
            r.messages.append(f"isomorphic to row {other}: {same}")
            if not same:
                r.status = "FAIL"


def run_table(which: str | int, options: TaskOptions | None = None, jobs: int = 1, data: dict | None = None) -> list[RowResult]:
    rows = table_rows(which, data)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_row, rows, [options] * len(rows)))
    else:
        results = [run_row(row, options) for row in rows]
    _cross_checks(results)
    return results


def format_table(which: str | int, results: list[RowResult], data: dict | None = None) -> str:
    data = data or load_table_data()
    key = str(which)
    head = ["id"]
    if key == "1":
        head += ["Q", "M", "P", "induced (printed)", "computed", "ker", "status"]
    else:
        head += ["M", "P", "induced (printed)", "computed", "ker", "Aut", "status"]
    lines = []
    for r in results:
        row = r.row
        ker = "[" + ",".join(map(str, r.computed["kernel_invariants"])) + "]"
        comp = f"{r.computed['label']} ({r.computed['order']})"
        if key == "1":
            cells = [r.id, row["Q_label"], row["M_label"], row["P_label"], r.printed["induced"], comp, ker, r.status]
        else:
            aut = "-" if r.computed["aut_order"] is None else str(r.computed["aut_order"])
            cells = [r.id, row["M_label"], row["P_label"], r.printed["induced"], comp, ker, aut, r.status]
        lines.append(cells)
    widths = [max(len(str(c)) for c in col) for col in zip(head, *lines)]
    out = ["  ".join(str(c).ljust(w) for c, w in zip(head, widths))]
    out.append("  ".join("-" * w for w in widths))
    out += ["  ".join(str(c).ljust(w) for c, w in zip(cells, widths)) for cells in lines]
    for r in results:
        for m in r.messages:
            out.append(f"{r.id}: {m}")
    counts = {s: sum(r.status == s for r in results) for s in ("PASS", "FLAGGED", "FAIL")}
    out.append(f"{len(results)} rows: {counts['PASS']} PASS, {counts['FLAGGED']} FLAGGED, {counts['FAIL']} FAIL")
    return "\n".join(out)
