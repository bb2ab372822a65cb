import random
from contextlib import contextmanager
from fractions import Fraction
from time import perf_counter

import pytest
from hypothesis import HealthCheck, settings

from prg.exactlinalg import Matrix
from prg.forms import MLForm

settings.register_profile(
    "prg", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("prg")

ANTISYM = [[0, 1], [-1, 0]]
SYMMETRIC = [[1, 0], [0, 1]]
QPLANE_Q2 = [[0, 1], [Fraction(-1, 2), 0]]
JORDAN = [[0, 1], [-1, 1]]
SINGULAR = [[1, 0], [0, 0]]


@pytest.fixture
def antisym():
    return MLForm.from_matrix(ANTISYM)


@pytest.fixture
def jordan():
    return MLForm.from_matrix(JORDAN)


@pytest.fixture
def qplane():
    return MLForm.from_matrix(QPLANE_Q2)


@pytest.fixture
def rng():
    return random.Random(0)


def random_invertible(n, rng, lo=-3, hi=3):
    while True:
        M = Matrix.from_rows([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])
        if M.is_invertible():
            return M



# -- acceptance bookkeeping ---------------------------------------------------

ACCEPTANCE: dict[int, tuple[bool, float, str]] = {}


@contextmanager
def criterion(number: int, title: str, limit: float | None = None):
    """Time the block; record and print one PASS/FAIL line."""
    start = perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        took = perf_counter() - start
        in_time = limit is None or took < limit
        passed = ok and in_time
        ACCEPTANCE[number] = (passed, took, title)
        budget = f", limit {limit:g} s" if limit is not None else ""
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'} {title} ({took:.2f} s{budget})")
    assert in_time, f"criterion {number} took {took:.2f} s, limit {limit} s"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, took, title = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'} {title} ({took:.2f} s)")
