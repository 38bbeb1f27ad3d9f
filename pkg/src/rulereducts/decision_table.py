"""Categorical decision tables: parsing, encoding, partitions and merging.

Every cell is an opaque string.  Each column gets its own dense integer
coding in first-seen order, so two cells are "equal" exactly when their
codes are equal.  All algorithms downstream work on the codes.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

FeatureSubset = tuple[int, ...]


class TableError(ValueError):
    """Malformed input table (ragged rows, empty cells, bad column)."""


class ConflictError(TableError):
    """Objects agree on every feature but carry different decisions."""

    def __init__(self, report: ConflictReport, message: str | None = None):
        self.report = report
        groups = "; ".join(
            "{" + ",".join(str(i) for i in sorted(g)) + "}" for g in report.groups
        )
        super().__init__(message or f"inconsistent table, conflicting rows: {groups}")


@dataclass(frozen=True)
class ConflictReport:
    groups: tuple[frozenset[int], ...] = ()

    def __bool__(self) -> bool:
        return bool(self.groups)


@dataclass(frozen=True)
class Partition:
    blocks: tuple[frozenset[int], ...]
    basis: FeatureSubset


@dataclass(frozen=True)
class DecisionTable:
    """An encoded decision table.

    ``rows[i]`` holds the feature codes of object ``i`` and
    ``decisions[i]`` its decision code.  ``object_ids[i]`` is the tuple of
    original object labels folded into row ``i`` (one label unless the table
    was merged).
    """

    feature_names: tuple[str, ...]
    value_dictionaries: tuple[dict[str, int], ...]
    decision_dictionary: dict[str, int]
    rows: tuple[tuple[int, ...], ...]
    decisions: tuple[int, ...]
    object_ids: tuple[tuple[str, ...], ...]
    decision_name: str = "Decision"
    id_column: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        m = len(self.feature_names)
        if m < 1:
            raise TableError("table needs at least one feature column")
        if not self.rows:
            raise TableError("table needs at least one object row")
        if len(self.decisions) != len(self.rows) or len(self.object_ids) != len(self.rows):
            raise TableError("rows, decisions and object ids differ in length")
        for i, row in enumerate(self.rows):
            if len(row) != m:
                raise TableError(f"row {i} has {len(row)} feature codes, expected {m}")
            for k, code in enumerate(row):
                if not 0 <= code < len(self.value_dictionaries[k]):
                    raise TableError(f"row {i}, column {self.feature_names[k]}: code {code} out of range")
            if not 0 <= self.decisions[i] < len(self.decision_dictionary):
                raise TableError(f"row {i}: decision code out of range")
        seen: set[str] = set()
        for ids in self.object_ids:
            if not ids or seen.intersection(ids):
                raise TableError(f"object ids must be non-empty and disjoint, got {ids}")
            seen.update(ids)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.feature_names)

    @cached_property
    def value_names(self) -> tuple[tuple[str, ...], ...]:
        """Per feature, code -> original text."""
        return tuple(_invert(d) for d in self.value_dictionaries)

    @cached_property
    def decision_names(self) -> tuple[str, ...]:
        return _invert(self.decision_dictionary)

    @cached_property
    def agreement_masks(self) -> tuple[tuple[int, ...], ...]:
        """``agreement_masks[k][v]``: bit set of rows whose feature ``k`` is ``v``."""
        masks = []
        for k, values in enumerate(self.value_dictionaries):
            col = [0] * len(values)
            for i, row in enumerate(self.rows):
                col[row[k]] |= 1 << i
            masks.append(tuple(col))
        return tuple(masks)

    @cached_property
    def decision_masks(self) -> tuple[int, ...]:
        masks = [0] * len(self.decision_dictionary)
        for i, d in enumerate(self.decisions):
            masks[d] |= 1 << i
        return tuple(masks)

    @cached_property
    def is_distinct(self) -> bool:
        return len(set(self.rows)) == len(self.rows)

    def decode_row(self, i: int) -> list[str]:
        """Original text of row ``i``: features followed by the decision."""
        cells = [self.value_names[k][c] for k, c in enumerate(self.rows[i])]
        cells.append(self.decision_names[self.decisions[i]])
        return cells

    def row_label(self, i: int) -> str:
        return "+".join(self.object_ids[i])

    def check_features(self, subset: Iterable[int]) -> None:
        for k in subset:
            if not 0 <= k < self.m:
                raise IndexError(f"feature index {k} out of range for m={self.m}")

    def to_csv(self) -> str:
        """Serialise back to CSV.  An id column is written first if the
        table was read with one or has merged rows."""
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        with_ids = self.id_column is not None or any(len(ids) > 1 for ids in self.object_ids)
        header = list(self.feature_names) + [self.decision_name]
        if with_ids:
            header.insert(0, self.id_column or "object")
        writer.writerow(header)
        for i in range(self.n):
            cells = self.decode_row(i)
            if with_ids:
                cells.insert(0, self.row_label(i))
            writer.writerow(cells)
        return out.getvalue()


def _invert(mapping: dict[str, int]) -> tuple[str, ...]:
    names = [""] * len(mapping)
    for text, code in mapping.items():
        names[code] = text
    return tuple(names)


def build_table(
    feature_names: Sequence[str],
    records: Sequence[Sequence[str]],
    decisions: Sequence[str],
    object_ids: Sequence[Sequence[str]] | None = None,
    decision_name: str = "Decision",
    id_column: str | None = None,
) -> DecisionTable:
    """Encode raw string records into a :class:`DecisionTable`."""
    m = len(feature_names)
    value_dicts: list[dict[str, int]] = [{} for _ in range(m)]
    decision_dict: dict[str, int] = {}
    rows = []
    for rec in records:
        if len(rec) != m:
            raise TableError(f"record {list(rec)} has {len(rec)} values, expected {m}")
        rows.append(tuple(value_dicts[k].setdefault(v, len(value_dicts[k])) for k, v in enumerate(rec)))
    codes = tuple(decision_dict.setdefault(d, len(decision_dict)) for d in decisions)
    if object_ids is None:
        object_ids = [(str(i + 1),) for i in range(len(rows))]
    return DecisionTable(
        feature_names=tuple(feature_names),
        value_dictionaries=tuple(value_dicts),
        decision_dictionary=decision_dict,
        rows=tuple(rows),
        decisions=codes,
        object_ids=tuple(tuple(ids) for ids in object_ids),
        decision_name=decision_name,
        id_column=id_column,
    )


def parse_table(text: str, decision: str = "last", id_column: str | None = None) -> DecisionTable:
    """Parse comma-separated text with a header row.

    ``decision`` names the decision column, or ``"last"``.  ``id_column``
    optionally names a column holding object labels; a label may list
    several merged objects joined by ``+``.  Without it, objects are
    labelled ``1..n`` in input order.
    """
    reader = csv.reader(io.StringIO(text))
    lines = [(lineno, row) for lineno, row in enumerate(reader, start=1) if row]
    if not lines:
        raise TableError("empty input: header row required")
    _, header = lines[0]
    header = [h.strip() for h in header]
    body = lines[1:]
    if not body:
        raise TableError("table has a header but no object rows")

    if id_column is not None and id_column not in header:
        raise TableError(f"id column {id_column!r} not in header {header}")
    id_pos = header.index(id_column) if id_column is not None else None
    if decision == "last":
        dec_pos = len(header) - 1
    elif decision in header:
        dec_pos = header.index(decision)
    else:
        raise TableError(f"decision column {decision!r} not in header {header}")
    if dec_pos == id_pos:
        raise TableError("decision column and id column must differ")
    feat_pos = [p for p in range(len(header)) if p not in (dec_pos, id_pos)]
    if not feat_pos:
        raise TableError("table needs at least one feature column")

    records, decisions, ids = [], [], []
    for lineno, row in body:
        if len(row) != len(header):
            raise TableError(f"row {lineno}: expected {len(header)} cells, got {len(row)}")
        row = [c.strip() for c in row]
        for p, cell in enumerate(row):
            if cell == "":
                raise TableError(f"row {lineno}, column {header[p]!r}: empty cell (missing values unsupported)")
        records.append([row[p] for p in feat_pos])
        decisions.append(row[dec_pos])
        if id_pos is not None:
            ids.append(tuple(row[id_pos].split("+")))
    if id_pos is None:
        ids = [(str(i + 1),) for i in range(len(records))]
    seen: set[str] = set()
    for row_ids, (lineno, _) in zip(ids, body):
        if seen.intersection(row_ids):
            raise TableError(f"row {lineno}: duplicate object id {'+'.join(row_ids)!r}")
        seen.update(row_ids)
    return build_table(
        [header[p] for p in feat_pos], records, decisions, ids,
        decision_name=header[dec_pos], id_column=id_column,
    )


def read_table(path: str, decision: str = "last", id_column: str | None = None) -> DecisionTable:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_table(fh.read(), decision, id_column)


def _blocks(table: DecisionTable, subset: FeatureSubset) -> dict[tuple[int, ...], list[int]]:
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, row in enumerate(table.rows):
        groups.setdefault(tuple(row[k] for k in subset), []).append(i)
    return groups


def indiscernibility_partition(table: DecisionTable, subset: Iterable[int]) -> Partition:
    """Equivalence classes of objects agreeing on every feature in ``subset``.

    An empty subset gives a single block with every object.  Blocks are
    ordered by their first member.
    """
    basis = tuple(sorted(set(subset)))
    table.check_features(basis)
    blocks = tuple(frozenset(b) for b in _blocks(table, basis).values())
    return Partition(blocks=blocks, basis=basis)


def find_conflicts(table: DecisionTable) -> ConflictReport:
    everything = tuple(range(table.m))
    groups = [
        frozenset(members)
        for members in _blocks(table, everything).values()
        if len({table.decisions[i] for i in members}) > 1
    ]
    return ConflictReport(tuple(groups))


def drop_conflicts(table: DecisionTable) -> DecisionTable:
    """Remove every row belonging to a conflicting group."""
    report = find_conflicts(table)
    doomed = set().union(*report.groups) if report else set()
    keep = [i for i in range(table.n) if i not in doomed]
    if not keep:
        raise ConflictError(report, "every row is in a conflicting group; nothing left")
    return _select(table, [[i] for i in keep])


def merge_indiscernible(table: DecisionTable) -> DecisionTable:
    """Collapse objects with identical feature vectors into one row.

    Rows keep first-occurrence order and value codes are unchanged.
    Raises :class:`ConflictError` if any merged class mixes decisions.
    """
    report = find_conflicts(table)
    if report:
        raise ConflictError(report)
    groups = list(_blocks(table, tuple(range(table.m))).values())
    return _select(table, groups)


def _select(table: DecisionTable, groups: list[list[int]]) -> DecisionTable:
    return DecisionTable(
        feature_names=table.feature_names,
        value_dictionaries=table.value_dictionaries,
        decision_dictionary=table.decision_dictionary,
        rows=tuple(table.rows[g[0]] for g in groups),
        decisions=tuple(table.decisions[g[0]] for g in groups),
        object_ids=tuple(tuple(oid for i in g for oid in table.object_ids[i]) for g in groups),
        decision_name=table.decision_name,
        id_column=table.id_column,
    )


class NotMergedError(TableError):
    """An algorithm was handed a table with repeated feature vectors."""


def require_merged(table: DecisionTable) -> None:
    if table.is_distinct:
        return
    report = find_conflicts(table)
    if report:
        raise ConflictError(report)
    dupes = [sorted(b) for b in _blocks(table, tuple(range(table.m))).values() if len(b) > 1]
    raise NotMergedError(f"table has indiscernible rows {dupes}; merge it first")
