"""Exhaustive and sampled verification sweeps, reports, and persistence.

A sweep walks parameter pairs (a, b) over GF(q^2)* x GF(q^2)*, classifies
each pair (permutation verdict, closed-form conditions, GCD degree) through
the vectorised engine, and aggregates a ScanReport.  Any disagreement
between the verdict and the closed-form criterion is collected as an
equivalence violation, never silently dropped.

Parallelism contract: the a-axis is split into contiguous index ranges,
workers own disjoint ranges and produce sorted partial results, and the
merge happens in range order.  Output is therefore byte-identical for any
thread count.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from random import Random

import numpy as np

from .bipoly import conic_witnesses, count_points_off_diag, build_curves, four_line_witness, gcd_degree
from .conds import ConditionReport, condition_report
from .engine import ScanEngine
from .ff import FieldTower, make_field
from .perm import TrinomialParams, Verdict, is_pp_mu

__all__ = [
    "CSV_COLUMNS",
    "DEFAULT_BUDGET_Q",
    "BUDGET_ENV_VAR",
    "BudgetExceededError",
    "PairRecord",
    "ScanReport",
    "classify_pair",
    "exhaustive_scan",
    "sampled_scan",
    "emit_report",
    "to_csv_text",
    "to_json_text",
    "report_from_json",
]

CSV_COLUMNS = (
    "q",
    "a_idx",
    "b_idx",
    "is_pp",
    "prima",
    "seconda",
    "prima_bis",
    "seconda_bis",
    "seconda_tris",
    "gcd_deg",
    "main_predicate",
)

# Exhaustion is refused above this q unless overridden (argument first,
# then the environment variable).
DEFAULT_BUDGET_Q = 31
BUDGET_ENV_VAR = "TRINOMIAL_BUDGET_Q"

_ROW_FIELDS = CSV_COLUMNS[1:]  # rows store everything but the constant q
_CHUNK_CELLS = 1 << 20


class BudgetExceededError(ValueError):
    """Raised when an exhaustive sweep would exceed the configured budget."""


@dataclass(frozen=True)
class PairRecord:
    """Per-pair classification through the per-pair module path."""

    q: int
    a_idx: int
    b_idx: int
    verdict: Verdict
    conditions: ConditionReport
    gcd_deg: int
    points_off_diag: int | None = None
    four_line: dict | None = None
    conic: dict | None = None

    def to_json(self) -> dict:
        out = {
            "q": self.q,
            "a_idx": self.a_idx,
            "b_idx": self.b_idx,
            "verdict": self.verdict.to_json(),
            "conditions": self.conditions.to_json(),
            "gcd_deg": self.gcd_deg,
        }
        if self.points_off_diag is not None:
            out["points_off_diag"] = self.points_off_diag
        if self.four_line is not None:
            out["four_line"] = self.four_line
        if self.conic is not None:
            out["conic"] = self.conic
        return out


def classify_pair(params: TrinomialParams, diagnostics: bool = False) -> PairRecord:
    """One classification row; with diagnostics, permutation instances also
    get the curve point count and the factorisation-pattern witnesses."""
    verdict = is_pp_mu(params)
    points = four_line = conic = None
    if diagnostics and verdict.is_pp:
        if params.tower.p != 2:
            points = count_points_off_diag(build_curves(params))
        four_line = four_line_witness(params).to_json()
        conic = conic_witnesses(params).to_json()
    return PairRecord(
        q=params.q,
        a_idx=params.a.i,
        b_idx=params.b.i,
        verdict=verdict,
        conditions=condition_report(params),
        gcd_deg=gcd_degree(params),
        points_off_diag=points,
        four_line=four_line,
        conic=conic,
    )


@dataclass(eq=False)
class ScanReport:
    """Aggregate outcome of one sweep.

    `rows` (full mode only) is an int32 matrix with one line per pair in
    (a_idx, b_idx) order, columns as in CSV_COLUMNS[1:], -1 marking
    conditions that do not apply to the characteristic.
    """

    q: int
    p: int
    h: int
    mode: str  # "exhaustive" | "sampled"
    pair_count: int
    pp_count: int
    attribution: dict[str, int]
    gcd_histogram: dict[int, int]
    equivalence_violations: list[tuple[int, int, bool, bool]]
    set_equalities: dict[str, bool] | None
    wall_time: float
    samples: int | None = None
    seed: int | None = None
    rows: np.ndarray | None = None
    diagnostics: list[dict] | None = None

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "p": self.p,
            "h": self.h,
            "mode": self.mode,
            "pair_count": self.pair_count,
            "pp_count": self.pp_count,
            "attribution": self.attribution,
            "gcd_histogram": {str(k): v for k, v in self.gcd_histogram.items()},
            "equivalence_violations": [list(v) for v in self.equivalence_violations],
            "set_equalities": self.set_equalities,
            "wall_time": self.wall_time,
            "samples": self.samples,
            "seed": self.seed,
            "rows": None if self.rows is None else self.rows.tolist(),
            "diagnostics": self.diagnostics,
        }


def report_from_json(text: str) -> ScanReport:
    d = json.loads(text)
    return ScanReport(
        q=d["q"],
        p=d["p"],
        h=d["h"],
        mode=d["mode"],
        pair_count=d["pair_count"],
        pp_count=d["pp_count"],
        attribution=d["attribution"],
        gcd_histogram={int(k): v for k, v in d["gcd_histogram"].items()},
        equivalence_violations=[tuple(v) for v in d["equivalence_violations"]],
        set_equalities=d["set_equalities"],
        wall_time=d["wall_time"],
        samples=d["samples"],
        seed=d["seed"],
        rows=None if d["rows"] is None else np.array(d["rows"], dtype=np.int32),
        diagnostics=d["diagnostics"],
    )


def _effective_budget(max_q: int | None) -> int:
    if max_q is not None:
        return max_q
    env = os.environ.get(BUDGET_ENV_VAR)
    return int(env) if env else DEFAULT_BUDGET_Q


def _classify_range(engine: ScanEngine, pairs_a: np.ndarray, pairs_b: np.ndarray, keep_rows: bool) -> dict:
    """Classify a pre-sorted block of pairs; returns partial aggregates."""
    p = engine.p
    chunk = max(1, _CHUNK_CELLS // (engine.q + 1))
    out = {
        "pp_count": 0,
        "attribution": {},
        "gcd_histogram": {},
        "violations": [],
        "pp_pairs": [],
        "eq_mismatch": {"prima": False, "seconda": False},
        "rows": [] if keep_rows else None,
    }
    for lo in range(0, len(pairs_a), chunk):
        a = pairs_a[lo : lo + chunk]
        b = pairs_b[lo : lo + chunk]
        cols = engine.classify_bulk(a, b)
        pp = cols["is_pp"]
        main = cols["main"]
        gcd = cols["gcd_deg"]
        out["pp_count"] += int(pp.sum())
        bad = pp != main
        if bad.any():
            for i in np.flatnonzero(bad):
                out["violations"].append((int(a[i]), int(b[i]), bool(pp[i]), bool(main[i])))
        for (ai, bi) in zip(a[pp].tolist(), b[pp].tolist()):
            out["pp_pairs"].append((ai, bi))
        vals, counts = np.unique(gcd[pp], return_counts=True)
        for v, c in zip(vals.tolist(), counts.tolist()):
            out["gcd_histogram"][int(v)] = out["gcd_histogram"].get(int(v), 0) + int(c)
        if p > 3:
            pr, se = cols["prima"], cols["seconda"]
            for key, arr in (
                ("prima_only", pp & pr & ~se),
                ("seconda_only", pp & se & ~pr),
                ("both", pp & pr & se),
            ):
                out["attribution"][key] = out["attribution"].get(key, 0) + int(arr.sum())
            if (pr != cols["prima_bis"]).any():
                out["eq_mismatch"]["prima"] = True
            if (se != cols["seconda_bis"]).any():
                out["eq_mismatch"]["seconda"] = True
        else:
            key = "char2" if p == 2 else "char3"
            out["attribution"][key] = out["attribution"].get(key, 0) + int(pp.sum())
        if keep_rows:
            na = np.full(len(a), -1, dtype=np.int32)
            block = np.column_stack(
                [
                    a.astype(np.int32),
                    b.astype(np.int32),
                    pp.astype(np.int32),
                    cols["prima"].astype(np.int32) if p > 3 else na,
                    cols["seconda"].astype(np.int32) if p > 3 else na,
                    cols["prima_bis"].astype(np.int32) if p > 3 else na,
                    cols["seconda_bis"].astype(np.int32) if p > 3 else na,
                    cols["seconda_tris"].astype(np.int32) if p > 3 else na,
                    gcd.astype(np.int32),
                    main.astype(np.int32),
                ]
            )
            out["rows"].append(block)
    return out


def _merge_parts(parts: list[dict], keep_rows: bool) -> dict:
    merged = {
        "pp_count": 0,
        "attribution": {},
        "gcd_histogram": {},
        "violations": [],
        "pp_pairs": [],
        "eq_mismatch": {"prima": False, "seconda": False},
        "rows": [] if keep_rows else None,
    }
    for part in parts:  # parts arrive in range order
        merged["pp_count"] += part["pp_count"]
        merged["violations"].extend(part["violations"])
        merged["pp_pairs"].extend(part["pp_pairs"])
        for k, v in part["attribution"].items():
            merged["attribution"][k] = merged["attribution"].get(k, 0) + v
        for k, v in part["gcd_histogram"].items():
            merged["gcd_histogram"][k] = merged["gcd_histogram"].get(k, 0) + v
        for k in ("prima", "seconda"):
            merged["eq_mismatch"][k] |= part["eq_mismatch"][k]
        if keep_rows:
            merged["rows"].extend(part["rows"])
    return merged


def _run_pairs(
    tower: FieldTower,
    pair_blocks: list[tuple[np.ndarray, np.ndarray]],
    threads: int,
    keep_rows: bool,
) -> dict:
    engine = ScanEngine(tower)
    if threads <= 1:
        parts = [_classify_range(engine, a, b, keep_rows) for a, b in pair_blocks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_classify_range, engine, a, b, keep_rows) for a, b in pair_blocks]
            parts = [f.result() for f in futures]
    return _merge_parts(parts, keep_rows)


def _finish_report(tower, mode, merged, pair_count, keep_rows, t0, *, samples=None, seed=None, diagnostics=False):
    p = tower.p
    set_eq = None
    if p > 3:
        set_eq = {
            "prima_eq_prima_bis": not merged["eq_mismatch"]["prima"],
            "seconda_eq_seconda_bis": not merged["eq_mismatch"]["seconda"],
        }
    rows = None
    if keep_rows:
        rows = (
            np.concatenate(merged["rows"])
            if merged["rows"]
            else np.empty((0, len(_ROW_FIELDS)), dtype=np.int32)
        )
    diag = None
    if diagnostics:
        diag = []
        for a_idx, b_idx in merged["pp_pairs"]:
            params = TrinomialParams.from_indices(tower, a_idx, b_idx)
            entry = {"a_idx": a_idx, "b_idx": b_idx}
            if p != 2:
                entry["points_off_diag"] = count_points_off_diag(build_curves(params))
            entry["four_line"] = four_line_witness(params).to_json()
            entry["conic"] = conic_witnesses(params).to_json()
            diag.append(entry)
    return ScanReport(
        q=tower.q,
        p=p,
        h=tower.h,
        mode=mode,
        pair_count=pair_count,
        pp_count=merged["pp_count"],
        attribution=merged["attribution"],
        gcd_histogram=merged["gcd_histogram"],
        equivalence_violations=merged["violations"],
        set_equalities=set_eq,
        wall_time=time.perf_counter() - t0,
        samples=samples,
        seed=seed,
        rows=rows,
        diagnostics=diag,
    )


def exhaustive_scan(
    p: int,
    h: int,
    *,
    threads: int = 1,
    summary_only: bool = False,
    diagnostics: bool = False,
    max_q: int | None = None,
) -> ScanReport:
    """Classify every pair (a, b) in GF(q^2)* x GF(q^2)*.

    Refuses to run when q exceeds the exhaustion budget (argument, else the
    TRINOMIAL_BUDGET_Q environment variable, else 31); use sampled_scan
    beyond that.
    """
    t0 = time.perf_counter()
    tower = make_field(p, h)
    budget = _effective_budget(max_q)
    if tower.q > budget:
        raise BudgetExceededError(
            f"q = {tower.q} exceeds the exhaustion budget {budget}; "
            "use sampled_scan (or raise the budget)"
        )
    n = tower.fq2.order
    threads = max(1, threads)
    bounds = np.linspace(1, n, threads + 1).astype(int)
    blocks = []
    for t in range(threads):
        lo, hi = bounds[t], bounds[t + 1]
        if lo >= hi:
            continue
        a_vals = np.arange(lo, hi, dtype=np.int64)
        blocks.append(
            (np.repeat(a_vals, n - 1), np.tile(np.arange(1, n, dtype=np.int64), hi - lo))
        )
    merged = _run_pairs(tower, blocks, threads, keep_rows=not summary_only)
    return _finish_report(
        tower, "exhaustive", merged, (n - 1) ** 2, not summary_only, t0, diagnostics=diagnostics
    )


def sampled_scan(
    p: int,
    h: int,
    samples: int,
    seed: int,
    *,
    threads: int = 1,
    summary_only: bool = False,
    diagnostics: bool = False,
) -> ScanReport:
    """Classify a seeded pseudo-random sample of pairs (with replacement).

    Rows are sorted by (a_idx, b_idx) regardless of draw order, so a fixed
    seed reproduces the report byte for byte.
    """
    t0 = time.perf_counter()
    tower = make_field(p, h)
    n = tower.fq2.order
    rng = Random(seed)
    pairs = sorted((rng.randrange(1, n), rng.randrange(1, n)) for _ in range(samples))
    a_all = np.array([x for x, _ in pairs], dtype=np.int64)
    b_all = np.array([y for _, y in pairs], dtype=np.int64)
    threads = max(1, threads)
    bounds = np.linspace(0, samples, threads + 1).astype(int)
    blocks = [
        (a_all[bounds[t] : bounds[t + 1]], b_all[bounds[t] : bounds[t + 1]])
        for t in range(threads)
        if bounds[t] < bounds[t + 1]
    ]
    merged = _run_pairs(tower, blocks, threads, keep_rows=not summary_only)
    return _finish_report(
        tower,
        "sampled",
        merged,
        samples,
        not summary_only,
        t0,
        samples=samples,
        seed=seed,
        diagnostics=diagnostics,
    )


def to_csv_text(report: ScanReport) -> str:
    """Full-row CSV (header only when the report carries no rows).

    Booleans are 0/1; conditions that do not apply to the characteristic
    are left empty.
    """
    lines = [",".join(CSV_COLUMNS)]
    if report.rows is not None:
        q = str(report.q)
        for row in report.rows.tolist():
            cells = [q]
            cells.extend("" if v == -1 else str(v) for v in row)
            lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def to_json_text(report: ScanReport) -> str:
    return json.dumps(report.to_json(), sort_keys=True, separators=(",", ": "))


def emit_report(report: ScanReport, fmt: str, path) -> Path:
    """Serialise the report to `path` as csv or json."""
    if fmt == "csv":
        text = to_csv_text(report)
    elif fmt == "json":
        text = to_json_text(report)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    path = Path(path)
    with open(path, "w", newline="") as fh:
        fh.write(text)
    return path
