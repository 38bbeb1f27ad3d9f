import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from rulereducts.bench import GenParams, gen_table
from rulereducts.rules import (
    Rule,
    RuleSet,
    canonicalize,
    is_minimal,
    is_rule_reduct,
    is_rule_reduct_by_matching,
    make_rule,
    matches,
    validate_ruleset,
)

from conftest import named


def code(table, feature, text):
    return table.value_dictionaries[feature][text]


def test_matches(sample):
    assert matches(sample, 1, {3: code(sample, 3, "1")})
    assert not matches(sample, 0, {3: code(sample, 3, "1")})
    assert matches(sample, 2, {})


@pytest.mark.parametrize("obj, subset, expected", [
    (0, [3], True),          # F4=3 -> 0
    (0, [0], False),         # x2 shares F1=0 with decision 1
    (2, [0, 1, 2, 3], True),
])
def test_is_rule_reduct_sample(sample, obj, subset, expected):
    assert is_rule_reduct(sample, obj, subset) is expected
    assert is_rule_reduct_by_matching(sample, obj, subset) is expected


def test_is_rule_reduct_jobs(jobs):
    # Diploma=MCE -> Reject, read from x3
    assert is_rule_reduct(jobs, 2, [0])


@pytest.mark.parametrize("obj, subset, expected", [
    (0, [1, 2], True),
    (0, [2, 3], False),   # F4 alone already decides x1
    (2, [0], True),
])
def test_is_minimal(sample, obj, subset, expected):
    assert is_minimal(sample, obj, subset) is expected


def test_canonicalize_merges_duplicates(sample):
    a = make_rule(sample, 3, [2])
    b = make_rule(sample, 4, [2])
    rs = canonicalize([b, a])
    assert len(rs) == 1
    (rule,) = rs
    assert rule.support == {3, 4} and rule.origin == 3


def test_canonicalize_empty():
    assert canonicalize([]) == RuleSet(())


def test_canonical_order(sample):
    rules = [make_rule(sample, i, c) for i in range(5) for c in [(1, 2), (3,), (0,)]]
    rs = canonicalize(rules)
    keys = [r.sort_key() for r in rs]
    assert keys == sorted(keys)
    assert canonicalize(rs) == rs


@given(st.randoms(use_true_random=False))
def test_canonicalize_order_insensitive(rnd):
    t = gen_table(GenParams(rows=12, features=4, values=3, classes=2, seed=3))
    rules = [make_rule(t, i, c) for i in range(t.n) for c in [(0,), (1, 2), (0, 3)]]
    shuffled = rules[:]
    rnd.shuffle(shuffled)
    assert canonicalize(shuffled) == canonicalize(rules)


def test_rule_invariants():
    with pytest.raises(ValueError):
        Rule((), 0, frozenset({0}), 0)
    with pytest.raises(ValueError):
        Rule(((0, 0),), 0, frozenset({1}), 0)


def test_validate_ruleset_minimal_set(sample):
    rules = [make_rule(sample, i, c) for i, c in
             [(0, (3,)), (2, (0,)), (2, (1,)), (2, (2,)), (2, (3,)), (3, (2,)), (3, (3,)),
              (0, (1, 2)), (1, (1, 2)), (1, (1, 3)), (1, (2, 3)), (4, (1, 3))]]
    rs = canonicalize(rules)
    assert len(rs) == 12
    report = validate_ruleset(sample, rs)
    assert report.complete and report.consistent


def test_validate_ruleset_empty(sample):
    report = validate_ruleset(sample, RuleSet())
    assert not report.complete and report.consistent


def test_validate_single_rule(sample):
    rs = canonicalize([make_rule(sample, 0, (3,))])
    assert named(sample, rs) == {(frozenset({("F4", "3")}), "0")}
    report = validate_ruleset(sample, rs)
    assert report.matched == (1, 0, 0, 0, 0)
    assert report.unmatched() == [1, 2, 3, 4]


def _tables(count=60):
    for seed in range(count):
        rnd = random.Random(seed)
        yield gen_table(GenParams(
            rows=rnd.randint(1, 25), features=rnd.randint(1, 6),
            values=rnd.randint(2, 4), classes=rnd.randint(2, 3), seed=seed,
        ))


def test_formulations_agree():
    for t in _tables():
        for i in range(t.n):
            for r in range(1, t.m + 1):
                for c in combinations(range(t.m), r):
                    assert is_rule_reduct(t, i, c) == is_rule_reduct_by_matching(t, i, c)


def test_monotonic_and_full_set():
    for t in _tables():
        full = tuple(range(t.m))
        for i in range(t.n):
            assert is_rule_reduct(t, i, full)
            for r in range(1, t.m):
                for c in combinations(range(t.m), r):
                    if is_rule_reduct(t, i, c):
                        for extra in set(full) - set(c):
                            assert is_rule_reduct(t, i, sorted({*c, extra}))


@settings(max_examples=50)
@given(st.integers(0, 2**32), st.data())
def test_reduct_rules_are_consistent(seed, data):
    t = gen_table(GenParams(rows=15, features=4, values=3, classes=3, seed=seed))
    rules = []
    for i in range(t.n):
        c = data.draw(st.sets(st.integers(0, 3), min_size=1))
        if is_rule_reduct(t, i, c):
            rules.append(make_rule(t, i, c))
    assert validate_ruleset(t, canonicalize(rules)).consistent
