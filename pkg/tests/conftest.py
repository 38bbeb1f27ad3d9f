from pathlib import Path

import pytest

from rulereducts.decision_table import DecisionTable, read_table
from rulereducts.rules import Rule

DATA = Path(__file__).parent / "data"


def load(name: str, id_column: str | None = None) -> DecisionTable:
    return read_table(str(DATA / name), id_column=id_column)


@pytest.fixture
def sample() -> DecisionTable:
    return load("sample.csv")


@pytest.fixture
def jobs() -> DecisionTable:
    return load("jobs.csv", id_column="Person")


@pytest.fixture
def duplicates() -> DecisionTable:
    return load("duplicates.csv", id_column="Object")


def named(table: DecisionTable, rules) -> set[tuple[frozenset, str]]:
    """Rules as ({(feature, value text)}, decision text), for comparing
    against hand-written expectations."""
    return {named_rule(table, r) for r in rules}


def named_rule(table: DecisionTable, rule: Rule) -> tuple[frozenset, str]:
    conds = frozenset((table.feature_names[k], table.value_names[k][v]) for k, v in rule.conditions)
    return conds, table.decision_names[rule.decision]


def R(decision: str, **conds: str) -> tuple[frozenset, str]:
    return frozenset(conds.items()), decision


# Minimal rule set for sample.csv: seven one-feature and five
# two-feature rules.
SAMPLE_LEVEL1 = {
    R("0", F4="3"), R("1", F1="1"), R("1", F2="2"), R("1", F3="2"),
    R("1", F4="0"), R("2", F3="0"), R("2", F4="2"),
}
SAMPLE_LEVEL2 = {
    R("0", F2="0", F3="1"), R("1", F2="1", F3="1"), R("1", F2="1", F4="1"),
    R("1", F3="1", F4="1"), R("2", F2="0", F4="1"),
}
SAMPLE_MINIMAL = SAMPLE_LEVEL1 | SAMPLE_LEVEL2


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: exit criterion")


_criteria: list[tuple[str, str]] = []
_docs: dict[str, str] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        doc = getattr(getattr(item, "function", None), "__doc__", None)
        if doc:
            _docs[item.nodeid] = doc.strip().splitlines()[0]


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.failed):
        if "acceptance" in report.keywords:
            _criteria.append((report.nodeid, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in _criteria:
        terminalreporter.write_line(f"{outcome}  {_docs.get(nodeid, nodeid.split('::')[-1])}")
