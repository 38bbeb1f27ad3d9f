"""Rule set serialisation.  Codes are decoded back to the input text."""

from __future__ import annotations

import csv
import io
import json

from .algorithms import RunStats
from .decision_table import DecisionTable
from .rules import Rule, RuleSet

MISSING = "NaN"


def rule_to_dict(table: DecisionTable, rule: Rule) -> dict:
    return {
        "conditions": {table.feature_names[k]: table.value_names[k][v] for k, v in rule.conditions},
        "decision": table.decision_names[rule.decision],
        "support": [oid for i in sorted(rule.support) for oid in table.object_ids[i]],
        "size": rule.size,
        "origin": table.row_label(rule.origin),
    }


def ruleset_to_json(table: DecisionTable, ruleset: RuleSet, trace: dict | None = None) -> str:
    doc: dict = {"rules": [rule_to_dict(table, r) for r in ruleset]}
    if trace is not None:
        doc["trace"] = trace
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False)


def ruleset_from_json(table: DecisionTable, text: str | dict) -> RuleSet:
    """Rebuild a rule set emitted by :func:`ruleset_to_json` for ``table``."""
    doc = json.loads(text) if isinstance(text, str) else text
    feature_pos = {name: k for k, name in enumerate(table.feature_names)}
    row_of = {}
    for i, ids in enumerate(table.object_ids):
        row_of[table.row_label(i)] = i
        for oid in ids:
            row_of[oid] = i
    rules = []
    for entry in doc["rules"]:
        try:
            conds = sorted(
                (feature_pos[f], table.value_dictionaries[feature_pos[f]][v])
                for f, v in entry["conditions"].items()
            )
            decision = table.decision_dictionary[entry["decision"]]
            support = frozenset(row_of[oid] for oid in entry["support"])
            origin = row_of[entry["origin"]] if "origin" in entry else min(support)
        except KeyError as exc:
            raise ValueError(f"rule {entry} does not fit this table: unknown {exc}") from None
        rules.append(Rule(tuple(conds), decision, support, origin))
    return RuleSet(tuple(rules))


def _cells(table: DecisionTable, rule: Rule) -> list[str]:
    cells = [MISSING] * table.m
    for k, v in rule.conditions:
        cells[k] = table.value_names[k][v]
    return cells


def rule_to_text(table: DecisionTable, rule: Rule) -> str:
    """One rule as ``v1 v2 ... | decision | origin``, ``NaN`` where unset."""
    return " ".join(_cells(table, rule)) + f" | {table.decision_names[rule.decision]} | {table.row_label(rule.origin)}"


def ruleset_to_text(table: DecisionTable, ruleset: RuleSet) -> str:
    lines = [" ".join(table.feature_names) + f" | {table.decision_name} | obj"]
    lines += [rule_to_text(table, r) for r in ruleset]
    return "\n".join(lines) + "\n"


def ruleset_to_csv(table: DecisionTable, ruleset: RuleSet) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([*table.feature_names, table.decision_name, "obj"])
    for r in ruleset:
        writer.writerow([*_cells(table, r), table.decision_names[r.decision], table.row_label(r.origin)])
    return out.getvalue()


def trace_to_dict(table: DecisionTable, stats: RunStats) -> dict:
    return {
        table.row_label(i): [
            [",".join(table.feature_names[k] for k in subset), verdict] for subset, verdict in steps
        ]
        for i, steps in sorted(stats.traces.items())
    }


def trace_to_text(table: DecisionTable, stats: RunStats) -> str:
    lines = []
    for i, steps in sorted(stats.traces.items()):
        lines.append(f"object {table.row_label(i)}")
        for subset, verdict in steps:
            lines.append(f"  {','.join(table.feature_names[k] for k in subset)} {verdict}")
    return "\n".join(lines) + "\n"
