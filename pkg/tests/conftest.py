import random
from functools import lru_cache

import pytest

from ovalis.forms import QuadraticForm
from ovalis.schemes import (
    MINUS,
    OVAL,
    PLUS,
    Node,
    Scheme,
    is_even_curve,
    is_odd_curve,
    signings,
    unsigned_forests,
)

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    def log(criterion: str, passed: bool, detail: str = "") -> None:
        status = "PASS" if passed else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] {criterion}" + (f" -- {detail}" if detail else ""))

    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_scheme(rng: random.Random, max_ovals: int, signed: bool = True) -> Scheme:
    """Random forest built from a random parent array."""
    n = rng.randint(0, max_ovals)
    children: list[list[int]] = [[] for _ in range(n)]
    roots = []
    for i in range(n):
        parent = rng.randrange(-1, i)
        (roots if parent < 0 else children[parent]).append(i)
    signs = [rng.choice((PLUS, MINUS)) if signed else 0 for _ in range(n)]

    def build(i: int) -> Node:
        return Node(OVAL, signs[i], tuple(build(c) for c in children[i]))

    return Scheme(tuple(build(r) for r in roots))


def random_form(rng: random.Random, max_dim: int) -> QuadraticForm:
    n = rng.randint(0, max_dim)
    pairing = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            pairing[i][j] = pairing[j][i] = rng.randint(0, 1)
    q = [pairing[i][i] + 2 * rng.randint(0, 1) for i in range(n)]
    return QuadraticForm(n, pairing, q)


@lru_cache(maxsize=None)
def signed_schemes_upto(n_max: int) -> tuple[Scheme, ...]:
    """Every signed scheme with at most n_max ovals, up to sibling order."""
    out = []
    for n in range(n_max + 1):
        for shape in unsigned_forests(n):
            out.extend(signings(shape))
    return tuple(out)


@lru_cache(maxsize=None)
def proper_signed_schemes_upto(n_max: int) -> tuple[Scheme, ...]:
    out = []
    for n in range(n_max + 1):
        for shape in unsigned_forests(n):
            if is_odd_curve(shape) or is_even_curve(shape):
                out.extend(signings(shape))
    return tuple(out)


@pytest.fixture
def rng():
    return random.Random(20051107)
