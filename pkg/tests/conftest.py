import random

import pytest

from pathmin.oracle import CompOrder, IntWeightOracle
from pathmin.reference import BruteForceModel
from pathmin.shapes import random_parents_with_height, random_weights, relabel
from pathmin.tree import RootedTree, build_tree

# T1: node values 1:5 2:3 3:4 4:1 5:2 6:6, depths (0,1,2,3,4,2,3)
T1_EDGES = [(0, 1, 5), (1, 2, 3), (2, 3, 4), (3, 4, 1), (1, 5, 2), (5, 6, 6)]


@pytest.fixture
def t1():
    return build_tree(T1_EDGES, 0)


@pytest.fixture
def t1_model(t1):
    tree, oracle = t1
    return BruteForceModel(tree, CompOrder(oracle, tree.root))


def random_instance(rng, n, h=None, spread=None):
    """Random relabelled tree (exact height ``h`` if given) with tie-heavy weights."""
    if h is None:
        h = rng.randint(0, n - 1)
    parents, root = relabel(random_parents_with_height(n, h, rng), 0, rng)
    tree = RootedTree.from_parents(parents, root)
    return tree, IntWeightOracle(random_weights(n, rng, spread=spread))


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report_criterion():
    """Record one pass/fail line per acceptance criterion; printed after the run."""
    def record(label, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
