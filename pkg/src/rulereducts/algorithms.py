"""Rule-reduct generators: exhaustive (RG), level-wise (MRG), tree pruning
(PRG), and a brute-force oracle for the minimal rule set.

All generators require a merged table (pairwise-distinct feature vectors)
and return a canonical :class:`RuleSet` plus :class:`RunStats`.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from itertools import combinations

from .decision_table import DecisionTable, FeatureSubset, require_merged
from .rules import (
    Rule,
    RuleSet,
    canonicalize,
    is_rule_reduct,
    is_rule_reduct_by_matching,
    make_rule,
    mask_subset,
    matches,
    subset_mask,
)
from .subset_tree import SubsetTree


class PruneMode(str, enum.Enum):
    SUPERSET = "superset"
    LITERAL = "literal"


REDUCT, NO, PRUNED = "reduct", "no", "pruned"


@dataclass
class ObjectStats:
    predicate_evaluations: int = 0
    nodes_visited: int = 0
    nodes_pruned: int = 0
    candidates_generated: int = 0
    rules_emitted_raw: int = 0
    rules_retracted: int = 0


@dataclass
class RunStats:
    algorithm: str
    per_object: list[ObjectStats]
    wall_clock: float = 0.0
    # (object, subset) for every reduct reported, before deduplication
    raw: list[tuple[int, FeatureSubset]] = field(default_factory=list)
    # object -> [(subset, verdict)], filled only when tracing
    traces: dict[int, list[tuple[FeatureSubset, str]]] = field(default_factory=dict)

    def _total(self, name: str) -> int:
        return sum(getattr(s, name) for s in self.per_object)

    @property
    def predicate_evaluations(self) -> int:
        return self._total("predicate_evaluations")

    @property
    def nodes_visited(self) -> int:
        return self._total("nodes_visited")

    @property
    def nodes_pruned(self) -> int:
        return self._total("nodes_pruned")

    @property
    def candidates_generated(self) -> int:
        return self._total("candidates_generated")

    @property
    def rules_emitted_raw(self) -> int:
        return self._total("rules_emitted_raw")

    @property
    def rules_retracted(self) -> int:
        return self._total("rules_retracted")

    def totals(self) -> dict[str, int]:
        return {
            name: self._total(name)
            for name in ("predicate_evaluations", "nodes_visited", "nodes_pruned",
                         "candidates_generated", "rules_emitted_raw", "rules_retracted")
        }


def _new_stats(name: str, table: DecisionTable) -> RunStats:
    return RunStats(algorithm=name, per_object=[ObjectStats() for _ in range(table.n)])


def run_rg(table: DecisionTable, trace: bool = False) -> tuple[RuleSet, RunStats]:
    """Test every (object, subset) pair with 1 <= |subset| <= m-1.

    Each reduct found is reported, redundant or not; ``stats.raw`` keeps
    them all, the returned set is their canonical union.
    """
    require_merged(table)
    stats = _new_stats("rg", table)
    start = time.perf_counter()
    found: list[Rule] = []
    for r in range(1, table.m):
        for i in range(table.n):
            st = stats.per_object[i]
            for subset in combinations(range(table.m), r):
                st.candidates_generated += 1
                st.predicate_evaluations += 1
                ok = is_rule_reduct(table, i, subset)
                if trace:
                    stats.traces.setdefault(i, []).append((subset, REDUCT if ok else NO))
                if ok:
                    st.rules_emitted_raw += 1
                    stats.raw.append((i, subset))
                    found.append(make_rule(table, i, subset))
    ruleset = canonicalize(found)
    stats.wall_clock = time.perf_counter() - start
    return ruleset, stats


def run_mrg(table: DecisionTable, trace: bool = False) -> tuple[RuleSet, RunStats]:
    """Level-wise search for minimal reducts.

    At level ``r`` every ``r``-subset of each object is a candidate.  A
    candidate is skipped when a rule already found (for any object) matches
    this object and uses a subset of the candidate's features; otherwise
    it is tested.  Search stops once a whole level is skipped, or after
    level ``m``.
    """
    require_merged(table)
    stats = _new_stats("mrg", table)
    start = time.perf_counter()
    # objects in decision order; stable so ties keep input order
    order = sorted(range(table.n), key=lambda i: table.decisions[i])
    applicable: list[list[int]] = [[] for _ in range(table.n)]
    found: list[Rule] = []
    for r in range(1, table.m + 1):
        evaluated = 0
        for i in order:
            st = stats.per_object[i]
            for subset in combinations(range(table.m), r):
                st.candidates_generated += 1
                mask = subset_mask(subset)
                if any(prior & mask == prior for prior in applicable[i]):
                    if trace:
                        stats.traces.setdefault(i, []).append((subset, PRUNED))
                    continue
                st.predicate_evaluations += 1
                evaluated += 1
                ok = is_rule_reduct(table, i, subset)
                if trace:
                    stats.traces.setdefault(i, []).append((subset, REDUCT if ok else NO))
                if ok:
                    rule = make_rule(table, i, subset)
                    found.append(rule)
                    st.rules_emitted_raw += 1
                    stats.raw.append((i, subset))
                    for j in rule.support:
                        applicable[j].append(mask)
        if not evaluated:
            break
    ruleset = canonicalize(found)
    stats.wall_clock = time.perf_counter() - start
    return ruleset, stats


def run_prg(
    table: DecisionTable,
    mode: PruneMode | str = PruneMode.SUPERSET,
    trace: bool = False,
) -> tuple[RuleSet, RunStats]:
    """Pre-order walk of the subset tree per object, pruning supersets of
    every reduct found so they are never evaluated.

    Pre-order can reach a set before one of its subsets (``{0,1,2}`` comes
    before ``{0,2}``), so in ``superset`` mode a reduct found later also
    retracts any superset already reported for the same object.  Every
    minimal reduct is still evaluated, since only strict supersets of
    reducts are ever pruned.

    In ``literal`` mode there is no retraction, and a node whose key is
    set (reported or pruned) has its whole right subtree skipped.  That can
    lose minimal rules and report non-minimal ones.
    """
    mode = PruneMode(mode)
    require_merged(table)
    stats = _new_stats("prg" if mode is PruneMode.SUPERSET else "prg-literal", table)
    start = time.perf_counter()
    tree = SubsetTree(table.m)
    keys = tree.keys
    found: list[Rule] = []
    for i in range(table.n):
        tree.reset_keys()
        st = stats.per_object[i]
        log = stats.traces.setdefault(i, []) if trace else None
        reported: dict[int, FeatureSubset] = {}
        stack = [tree.root]
        while stack:
            node = stack.pop()
            st.nodes_visited += 1
            if keys[node]:
                verdict = PRUNED
            else:
                subset = mask_subset(node)
                st.predicate_evaluations += 1
                if is_rule_reduct(table, i, subset):
                    verdict = REDUCT
                    keys[node] = 1
                    st.nodes_pruned += tree.prune_supersets(node)
                    if mode is PruneMode.SUPERSET:
                        stale = [m for m in reported if m & node == node]
                        for m in stale:
                            del reported[m]
                        st.rules_retracted += len(stale)
                    reported[node] = subset
                else:
                    verdict = NO
            if log is not None:
                log.append((mask_subset(node), verdict))
            right, left = tree.right(node), tree.left(node)
            if right is not None and (mode is PruneMode.SUPERSET or not keys[node]):
                stack.append(right)
            if left is not None:
                stack.append(left)
        for subset in reported.values():
            st.rules_emitted_raw += 1
            stats.raw.append((i, subset))
            found.append(make_rule(table, i, subset))
    ruleset = canonicalize(found)
    stats.wall_clock = time.perf_counter() - start
    return ruleset, stats


def run_oracle(table: DecisionTable) -> RuleSet:
    """Brute force: per object, every subset by increasing size, kept when
    it is a reduct and contains no subset already kept for that object.

    Uses only row scans and Python sets so it shares nothing with the
    bit-set paths it is meant to check.  Exponential in ``m``.
    """
    return canonicalize(_oracle_rules(table))


def _oracle_rules(table: DecisionTable) -> list[Rule]:
    require_merged(table)
    rules = []
    for i in range(table.n):
        kept: list[set[int]] = []
        for r in range(1, table.m + 1):
            for subset in combinations(range(table.m), r):
                if any(k <= set(subset) for k in kept):
                    continue
                if is_rule_reduct_by_matching(table, i, subset):
                    kept.append(set(subset))
                    conds = tuple((k, table.rows[i][k]) for k in subset)
                    support = frozenset(j for j in range(table.n) if matches(table, j, conds))
                    rules.append(Rule(conds, table.decisions[i], support, i))
    return rules


ALGORITHMS = ("rg", "mrg", "prg", "oracle")


def run_algorithm(
    name: str,
    table: DecisionTable,
    mode: PruneMode | str = PruneMode.SUPERSET,
    trace: bool = False,
) -> tuple[RuleSet, RunStats]:
    """Dispatch by name.  ``prg-literal`` / ``prg-superset`` pin the mode."""
    if name == "rg":
        return run_rg(table, trace)
    if name == "mrg":
        return run_mrg(table, trace)
    if name == "prg":
        return run_prg(table, mode, trace)
    if name.startswith("prg-"):
        return run_prg(table, name[4:], trace)
    if name == "oracle":
        start = time.perf_counter()
        raw = _oracle_rules(table)
        stats = _new_stats("oracle", table)
        for r in raw:
            stats.raw.append((r.origin, r.features))
            stats.per_object[r.origin].rules_emitted_raw += 1
        rs = canonicalize(raw)
        stats.wall_clock = time.perf_counter() - start
        return rs, stats
    raise ValueError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")
