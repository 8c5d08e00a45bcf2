"""Parameter sweeps over the classical families and their table output."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

from .classify import SOBlockSpec, is_symmetric_so_pair
from .geometry import DEFAULT_CAP
from .report import run_check
from .weights import SL, SO, PairSpec, SLBlocks, SOBlocks, SOinSL

FAMILIES = ("sl-blocks", "so-in-sl", "so-blocks")

COLUMNS = {
    "sl-blocks": ["n", "blocks", "dim_a", "test_rays", "tempered", "strict", "square_integrable",
                  "condition", "disc_G", "disc_GH"],
    "so-in-sl": ["n", "p", "q", "dim_a", "test_rays", "tempered", "strict", "square_integrable",
                 "disc_G", "disc_GH"],
    "so-blocks": ["p", "q", "blocks", "dim_a", "test_rays", "tempered", "strict", "square_integrable",
                  "condition", "symmetric", "disc_G", "disc_GH_inclusion", "disc_GH", "justification"],
}


def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` as non-increasing tuples, in lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(1, min(n, largest) + 1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def so_block_lists(p: int, q: int) -> list[tuple[tuple[int, int], ...]]:
    """Every multiset of nonempty blocks ``(p_k, q_k)`` with sums at most ``(p, q)``.

    Each multiset appears once, blocks listed by decreasing ``p_k+q_k`` then
    ``p_k``; the result is sorted lexicographically.
    """
    kinds = sorted(
        ((a, b) for a in range(p + 1) for b in range(q + 1) if a + b > 0),
        key=lambda blk: (-(blk[0] + blk[1]), -blk[0]),
    )
    out: list[tuple[tuple[int, int], ...]] = []

    def rec(start: int, rp: int, rq: int, cur: list) -> None:
        out.append(tuple(cur))
        for i in range(start, len(kinds)):
            a, b = kinds[i]
            if a <= rp and b <= rq:
                cur.append((a, b))
                rec(i, rp - a, rq - b, cur)
                cur.pop()

    rec(0, p, q, [])
    return sorted(out)


def sl_blocks_condition(n: int, parts: Sequence[int]) -> bool:
    """``2 n_1 <= n`` and ``n_1 + n_2 < n`` for a partition with at least two parts."""
    parts = sorted(parts, reverse=True)
    return len(parts) >= 2 and 2 * parts[0] <= n and parts[0] + parts[1] < n


def so_blocks_condition(p: int, q: int, blocks: Sequence[Sequence[int]]) -> bool:
    """``2 max_{p_k q_k != 0} (p_k + q_k) <= p + q + 1``, the max of nothing being 0."""
    sizes = [a + b for a, b in blocks if a * b != 0]
    return 2 * max(sizes, default=0) <= p + q + 1


@dataclass(frozen=True)
class Point:
    family: str
    params: tuple

    def spec(self) -> PairSpec:
        if self.family == "sl-blocks":
            n, parts = self.params
            return PairSpec(SL(n), SLBlocks(parts))
        if self.family == "so-in-sl":
            n, p, q = self.params
            return PairSpec(SL(n), SOinSL(p, q))
        p, q, blocks = self.params
        return PairSpec(SO(p, q), SOBlocks(blocks))


def sweep_points(
    family: str,
    n_min: int | None = None,
    n_max: int | None = None,
    pq_min: int = 3,
    pq_max: int | None = None,
    p: int | None = None,
    q: int | None = None,
) -> list[Point]:
    """Parameter points of a family, in lexicographic parameter order."""
    if family == "sl-blocks":
        lo, hi = n_min or 1, n_max or n_min
        return [Point(family, (n, part)) for n in range(lo, hi + 1) for part in partitions(n)]
    if family == "so-in-sl":
        lo, hi = n_min or pq_min, n_max or n_min
        pts = [
            Point(family, (n, a, b))
            for n in range(lo, hi + 1)
            for a in range(1, n + 1)
            for b in range(1, n + 1)
            if pq_min <= a + b <= n
        ]
        return pts
    if family == "so-blocks":
        pts = []
        if p is not None and q is not None:
            pairs = [(p, q)]
        else:
            top = pq_max if pq_max is not None else 0
            pairs = [(a, b) for a in range(top + 1) for b in range(top + 1 - a)]
        for a, b in sorted(pairs):
            pts.extend(Point(family, (a, b, bl)) for bl in so_block_lists(a, b))
        return pts
    raise ValueError(f"unknown family {family!r}")


def _blocks_str(blocks) -> str:
    return "+".join(f"({a},{b})" for a, b in blocks) if blocks else "-"


def evaluate_point(point: Point, cap: int = DEFAULT_CAP) -> dict:
    """One table row for a parameter point."""
    report = run_check(point.spec(), cap)
    row: dict = {}
    if point.family == "sl-blocks":
        n, parts = point.params
        row.update(n=n, blocks="+".join(map(str, parts)))
    elif point.family == "so-in-sl":
        n, a, b = point.params
        row.update(n=n, p=a, q=b)
    else:
        a, b, blocks = point.params
        row.update(p=a, q=b, blocks=_blocks_str(blocks))
    row.update(
        dim_a=report.data.dim_a,
        test_rays=report.strict.ray_count,
        tempered=report.tempered.status.value,
        strict=report.strict.status.value,
        square_integrable=report.square_integrable,
    )
    if point.family == "sl-blocks":
        row["condition"] = sl_blocks_condition(*point.params)
    elif point.family == "so-blocks":
        a, b, blocks = point.params
        row["condition"] = so_blocks_condition(a, b, blocks)
        row["symmetric"] = is_symmetric_so_pair(SOBlockSpec.normalized(a, b, blocks))
    row["disc_G"] = report.corollary.disc_G.value
    if point.family == "so-blocks":
        row["disc_GH_inclusion"] = report.corollary.disc_GH.value
        row["disc_GH"] = report.classifier.disc_GH.value
        row["justification"] = report.classifier.justification
    else:
        row["disc_GH"] = report.corollary.disc_GH.value
    return row


def _evaluate_star(args) -> dict:
    return evaluate_point(*args)


def run_sweep(points: Sequence[Point], cap: int = DEFAULT_CAP, jobs: int = 1) -> list[dict]:
    """Evaluate every point; rows come back in the order of ``points``."""
    if jobs <= 1:
        return [evaluate_point(pt, cap) for pt in points]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_evaluate_star, [(pt, cap) for pt in points], chunksize=16))


def format_rows(rows: Sequence[dict], family: str, fmt: str) -> str:
    cols = COLUMNS[family]
    if fmt == "json":
        return json.dumps([{c: r[c] for c in cols} for r in rows], indent=2) + "\n"
    cells = [[_cell(r[c]) for c in cols] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        writer.writerows(cells)
        return buf.getvalue()
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    for row in cells:
        lines.append("  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _cell(x) -> str:
    if isinstance(x, bool):
        return "yes" if x else "no"
    return str(x)


@dataclass
class ConditionAudit:
    rows: int
    condition_true: int
    violations: list[dict]
    converse_gaps: list[dict]

    def lines(self, family: str) -> list[str]:
        out = [
            f"{family}: {self.rows} rows, sufficient condition true in {self.condition_true}",
            f"{family}: condition true but strict fails: {len(self.violations)}",
            f"{family}: strict holds but condition false (informational): {len(self.converse_gaps)}",
        ]
        return out


def audit_rows(rows: Sequence[dict]) -> ConditionAudit | None:
    """Post-pass: the family's sufficient condition must imply a strict verdict of holds."""
    if not rows or "condition" not in rows[0]:
        return None
    cond = [r for r in rows if r["condition"]]
    violations = [r for r in cond if r["strict"] != "holds"]
    converse = [r for r in rows if not r["condition"] and r["strict"] == "holds"]
    return ConditionAudit(len(rows), len(cond), violations, converse)


ATLAS_BOUNDS = {
    "sl-blocks": dict(n_min=1, n_max=8),
    "so-in-sl": dict(n_min=3, n_max=7),
    "so-blocks": dict(pq_max=8),
}


def run_atlas(out_dir: Path, cap: int = DEFAULT_CAP, jobs: int = 1) -> str:
    """Run the three family sweeps at fixed bounds, write CSV tables and a summary."""
    out_dir.mkdir(parents=True, exist_ok=True)
    summary = []
    for family in FAMILIES:
        points = sweep_points(family, **ATLAS_BOUNDS[family])
        rows = run_sweep(points, cap, jobs)
        name = family.replace("-", "_")
        (out_dir / f"{name}.csv").write_text(format_rows(rows, family, "csv"))
        held = sum(r["strict"] == "holds" for r in rows)
        bounds = ", ".join(f"{k}={v}" for k, v in ATLAS_BOUNDS[family].items())
        summary.append(f"{family} ({bounds}): {len(rows)} rows, strict holds in {held}")
        audit = audit_rows(rows)
        if audit:
            summary.extend(audit.lines(family))
        if family == "so-blocks":
            clash = [
                r for r in rows if r["disc_GH_inclusion"] == "empty" and r["disc_GH"] == "nonempty"
            ]
            summary.append(f"{family}: inclusion/classification disagreements: {len(clash)}")
    text = "\n".join(summary) + "\n"
    (out_dir / "summary.txt").write_text(text)
    return text
