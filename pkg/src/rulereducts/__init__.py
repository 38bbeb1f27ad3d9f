"""Minimal rule-reduct generation over categorical decision tables."""

from .algorithms import PruneMode, RunStats, run_mrg, run_oracle, run_prg, run_rg
from .decision_table import (
    ConflictError,
    DecisionTable,
    TableError,
    find_conflicts,
    indiscernibility_partition,
    merge_indiscernible,
    parse_table,
)
from .rules import Rule, RuleSet, canonicalize, is_minimal, is_rule_reduct, validate_ruleset

__all__ = [
    "ConflictError", "DecisionTable", "PruneMode", "Rule", "RuleSet", "RunStats", "TableError",
    "canonicalize", "find_conflicts", "indiscernibility_partition", "is_minimal", "is_rule_reduct",
    "merge_indiscernible", "parse_table", "run_mrg", "run_oracle", "run_prg", "run_rg",
    "validate_ruleset",
]
