"""Rule reducts, canonical rule sets and coverage checks."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .decision_table import DecisionTable, FeatureSubset

Conditions = tuple[tuple[int, int], ...]


def subset_mask(subset: Iterable[int]) -> int:
    mask = 0
    for k in subset:
        mask |= 1 << k
    return mask


def mask_subset(mask: int) -> FeatureSubset:
    return tuple(k for k in range(mask.bit_length()) if mask >> k & 1)


def matches(table: DecisionTable, i: int, conditions: Mapping[int, int] | Conditions) -> bool:
    """True iff object ``i`` carries every (feature, code) in ``conditions``."""
    items = conditions.items() if isinstance(conditions, Mapping) else conditions
    row = table.rows[i]
    return all(row[k] == v for k, v in items)


def conditions_of(table: DecisionTable, i: int, subset: Iterable[int]) -> Conditions:
    row = table.rows[i]
    return tuple((k, row[k]) for k in sorted(subset))


def support_mask(table: DecisionTable, i: int, subset: Iterable[int]) -> int:
    """Bit set of objects agreeing with object ``i`` on every feature in ``subset``."""
    masks = table.agreement_masks
    row = table.rows[i]
    acc = (1 << table.n) - 1
    for k in subset:
        acc &= masks[k][row[k]]
    return acc


def is_rule_reduct(table: DecisionTable, i: int, subset: Iterable[int]) -> bool:
    """Whether object ``i``'s values on ``subset`` determine its decision.

    Every other object must either differ from ``i`` on some feature of the
    subset or share ``i``'s decision.
    """
    agree = support_mask(table, i, subset)
    return agree & ~table.decision_masks[table.decisions[i]] == 0


def is_rule_reduct_by_matching(table: DecisionTable, i: int, subset: Iterable[int]) -> bool:
    """Row-scan formulation of :func:`is_rule_reduct`, kept independent of
    the bit-set path so the two can be checked against each other."""
    conds = conditions_of(table, i, subset)
    d = table.decisions[i]
    return all(table.decisions[j] == d for j in range(table.n) if matches(table, j, conds))


def is_minimal(table: DecisionTable, i: int, subset: Iterable[int]) -> bool:
    """No non-empty proper subset of ``subset`` is a rule reduct for ``i``.

    By monotonicity it is enough to drop one feature at a time.
    """
    subset = tuple(sorted(subset))
    if len(subset) <= 1:
        return True
    return not any(
        is_rule_reduct(table, i, sub) for sub in combinations(subset, len(subset) - 1)
    )


@dataclass(frozen=True)
class Rule:
    """``conditions`` -> ``decision``, held as value codes.

    ``support`` is every object matching the conditions and ``origin`` the
    (smallest) object the rule was generated from.
    """

    conditions: Conditions
    decision: int
    support: frozenset[int]
    origin: int

    def __post_init__(self) -> None:
        if not self.conditions:
            raise ValueError("a rule needs at least one condition")
        if self.origin not in self.support:
            raise ValueError(f"origin {self.origin} not in support {sorted(self.support)}")

    @property
    def features(self) -> FeatureSubset:
        return tuple(k for k, _ in self.conditions)

    @property
    def size(self) -> int:
        return len(self.conditions)

    @property
    def key(self) -> tuple[Conditions, int]:
        return self.conditions, self.decision

    def sort_key(self) -> tuple:
        return (len(self.conditions), self.conditions, self.decision)


def make_rule(table: DecisionTable, i: int, subset: Iterable[int]) -> Rule:
    """The rule object ``i`` induces on ``subset``; support taken from the table."""
    subset = tuple(sorted(subset))
    agree = support_mask(table, i, subset)
    return Rule(
        conditions=conditions_of(table, i, subset),
        decision=table.decisions[i],
        support=frozenset(mask_subset(agree)),
        origin=i,
    )


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[Rule, ...] = ()

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, Rule):
            return item in self.rules
        return item in {r.key for r in self.rules}

    def keys(self) -> set[tuple[Conditions, int]]:
        return {r.key for r in self.rules}

    def by_size(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for r in self.rules:
            counts[r.size] = counts.get(r.size, 0) + 1
        return dict(sorted(counts.items()))


def canonicalize(rules: Iterable[Rule]) -> RuleSet:
    """Merge rules equal on (conditions, decision) and sort canonically.

    Supports are unioned and the smallest origin kept.  Order is by rule
    size, then (feature, value) pairs, then decision.
    """
    merged: dict[tuple[Conditions, int], Rule] = {}
    for r in rules:
        prev = merged.get(r.key)
        if prev is None:
            merged[r.key] = r
        else:
            merged[r.key] = Rule(r.conditions, r.decision, prev.support | r.support, min(prev.origin, r.origin))
    return RuleSet(tuple(sorted(merged.values(), key=Rule.sort_key)))


@dataclass(frozen=True)
class CoverageReport:
    matched: tuple[int, ...]
    agrees: tuple[bool, ...]

    @property
    def complete(self) -> bool:
        return all(c > 0 for c in self.matched)

    @property
    def consistent(self) -> bool:
        return all(self.agrees)

    def unmatched(self) -> list[int]:
        return [i for i, c in enumerate(self.matched) if c == 0]


def validate_ruleset(table: DecisionTable, ruleset: Iterable[Rule]) -> CoverageReport:
    rules = list(ruleset)
    matched, agrees = [], []
    for i in range(table.n):
        hits = [r for r in rules if matches(table, i, r.conditions)]
        matched.append(len(hits))
        agrees.append(all(r.decision == table.decisions[i] for r in hits))
    return CoverageReport(tuple(matched), tuple(agrees))
