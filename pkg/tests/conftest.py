import random
from pathlib import Path

import pytest

import treeloc
from treeloc import build_tree, parse_tree

FIXTURES = Path(treeloc.__file__).parent / "fixtures"


@pytest.fixture
def t6():
    return parse_tree((FIXTURES / "t6.tree").read_text())


@pytest.fixture
def t6b():
    return parse_tree((FIXTURES / "t6b.tree").read_text())


def random_int_tree(rng: random.Random, n: int):
    """Random recursive tree with integer weights, service times, and
    lengths drawn from [1, 5]."""
    edges = [(rng.randint(1, i - 1), i) for i in range(2, n + 1)]
    lengths = [rng.randint(1, 5) for _ in range(n - 1)]
    w = [rng.randint(1, 5) for _ in range(n)]
    t = [rng.randint(1, 5) for _ in range(n)]
    return build_tree(n, edges, lengths, w, t)


def random_int_path(rng: random.Random, n: int):
    edges = [(i, i + 1) for i in range(1, n)]
    lengths = [rng.randint(1, 5) for _ in range(n - 1)]
    w = [rng.randint(1, 5) for _ in range(n)]
    t = [rng.randint(1, 5) for _ in range(n)]
    return build_tree(n, edges, lengths, w, t)
