"""Synthetic decision tables and side-by-side comparison of the generators."""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .algorithms import PruneMode, RunStats, run_algorithm
from .decision_table import DecisionTable, build_table, merge_indiscernible
from .rules import RuleSet

PRNG_NAME = "splitmix64"
_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 (Steele, Lea, Flood 2014); tiny and portable, so seeded
    outputs can be reproduced outside Python."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        # multiply-shift; bias is at most bound / 2**64
        return (self.next_u64() * bound) >> 64


@dataclass(frozen=True)
class GenParams:
    rows: int
    features: int
    values: int = 2
    classes: int = 2
    seed: int = 0
    consistent: bool = True

    def __post_init__(self) -> None:
        if self.rows < 1 or self.features < 1:
            raise ValueError("rows and features must be >= 1")
        if self.values < 2 or self.classes < 2:
            raise ValueError("values and classes must be >= 2")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must fit in 64 unsigned bits")


def gen_table(params: GenParams) -> DecisionTable:
    """Draw a random categorical table.

    All feature values are drawn first (row-major, uniform over
    ``params.values`` codes), then decisions.  When ``consistent`` is set,
    one decision is drawn per distinct feature vector (first-seen order)
    and the result is merged; otherwise one decision per row and the raw,
    possibly conflicting, table is returned.
    """
    rng = SplitMix64(params.seed)
    records = [
        [str(rng.below(params.values)) for _ in range(params.features)]
        for _ in range(params.rows)
    ]
    if params.consistent:
        by_vector: dict[tuple[str, ...], str] = {}
        for rec in records:
            key = tuple(rec)
            if key not in by_vector:
                by_vector[key] = str(rng.below(params.classes))
        decisions = [by_vector[tuple(rec)] for rec in records]
    else:
        decisions = [str(rng.below(params.classes)) for _ in records]
    names = [f"F{k + 1}" for k in range(params.features)]
    table = build_table(names, records, decisions, decision_name="d")
    return merge_indiscernible(table) if params.consistent else table


def iter_tables(
    count: int, max_rows: int, max_features: int, max_values: int, max_classes: int, seed: int = 0
) -> Iterator[tuple[GenParams, DecisionTable]]:
    """``count`` consistent tables with shapes also drawn from ``seed``."""
    rng = SplitMix64(seed)
    for _ in range(count):
        params = GenParams(
            rows=1 + rng.below(max_rows),
            features=1 + rng.below(max_features),
            values=2 + rng.below(max_values - 1),
            classes=2 + rng.below(max_classes - 1),
            seed=rng.next_u64(),
        )
        yield params, gen_table(params)


def fingerprint(table: DecisionTable) -> str:
    return hashlib.sha256(table.to_csv().encode("utf-8")).hexdigest()


@dataclass
class AlgorithmResult:
    ruleset: RuleSet
    stats: RunStats

    @property
    def counts_by_size(self) -> dict[int, int]:
        return self.ruleset.by_size()


@dataclass
class ComparisonReport:
    fingerprint: str
    n: int
    m: int
    results: dict[str, AlgorithmResult] = field(default_factory=dict)
    agreement: dict[str, dict[str, bool]] = field(default_factory=dict)
    prng: str = PRNG_NAME

    def to_dict(self) -> dict:
        return {
            "table": {"sha256": self.fingerprint, "n": self.n, "m": self.m, "prng": self.prng},
            "algorithms": {
                name: {
                    "rules": len(res.ruleset),
                    "rules_by_size": {str(k): v for k, v in res.counts_by_size.items()},
                    **res.stats.totals(),
                    "wall_clock_s": res.stats.wall_clock,
                }
                for name, res in self.results.items()
            },
            "agreement": self.agreement,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def metrics(self) -> Iterator[tuple[str, str, object]]:
        for name, res in self.results.items():
            yield name, "rules", len(res.ruleset)
            for size, count in res.counts_by_size.items():
                yield name, f"rules_size_{size}", count
            for metric, value in res.stats.totals().items():
                yield name, metric, value
            yield name, "wall_clock_s", f"{res.stats.wall_clock:.6f}"

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["algorithm", "metric", "value"])
        writer.writerows(self.metrics())
        return out.getvalue()

    def to_text(self) -> str:
        names = list(self.results)
        cols = ["rules", "raw", "evals", "visited", "pruned", "candidates", "time_ms"]
        rows = []
        for name in names:
            res = self.results[name]
            t = res.stats.totals()
            rows.append([
                name, len(res.ruleset), t["rules_emitted_raw"], t["predicate_evaluations"],
                t["nodes_visited"], t["nodes_pruned"], t["candidates_generated"],
                f"{res.stats.wall_clock * 1000:.2f}",
            ])
        lines = [f"table sha256={self.fingerprint[:16]} n={self.n} m={self.m}", ""]
        lines += _aligned([["algorithm", *cols], *rows])
        lines += ["", "agreement"]
        lines += _aligned([["", *names]] + [
            [a, *("yes" if self.agreement[a][b] else "no" for b in names)] for a in names
        ])
        return "\n".join(lines) + "\n"


def _aligned(rows: Sequence[Sequence[object]]) -> list[str]:
    cells = [[str(c) for c in row] for row in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(cells[0]))]
    return ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]


def compare(
    table: DecisionTable,
    algorithms: Sequence[str] = ("rg", "mrg", "prg", "oracle"),
    mode: PruneMode | str = PruneMode.SUPERSET,
) -> ComparisonReport:
    """Run each named algorithm on ``table`` and cross-check the outputs.

    ``prg`` runs in ``mode`` and is reported as ``prg-literal`` when that
    mode is literal.
    """
    mode = PruneMode(mode)
    report = ComparisonReport(fingerprint(table), table.n, table.m)
    for name in algorithms:
        label = "prg-literal" if name == "prg" and mode is PruneMode.LITERAL else name
        ruleset, stats = run_algorithm(name, table, mode)
        report.results[label] = AlgorithmResult(ruleset, stats)
    for a, ra in report.results.items():
        report.agreement[a] = {b: ra.ruleset == rb.ruleset for b, rb in report.results.items()}
    return report
