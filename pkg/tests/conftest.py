import random

import pytest

from t2hilbert.weights import WeightMatrix, classify, faithfulness

_ACCEPTANCE_LINES: list[str] = []


def random_generic(rng: random.Random, n: int, bottom: int) -> WeightMatrix:
    """A faithful generic matrix with first row in [1, 6] and second row in [-bottom, bottom]."""
    while True:
        top = [rng.randint(1, 6) for _ in range(n)]
        low = [rng.randint(-bottom, bottom) for _ in range(n)]
        A = WeightMatrix.from_rows([top, low])
        if faithfulness(A).faithful and classify(A).is_generic:
            return A


def make_battery(seed: int = 20240601, size: int = 36) -> list[WeightMatrix]:
    rng = random.Random(seed)
    out = []
    for k in range(size):
        n = 3 if k % 2 == 0 else 4
        out.append(random_generic(rng, n, 4 if k < size // 2 else 6))
    return out


@pytest.fixture(scope="session")
def battery() -> list[WeightMatrix]:
    return make_battery()


@pytest.fixture
def record_criterion():
    """Log a PASS/FAIL line for an acceptance criterion, then assert it."""

    def record(number: int, title: str, ok: bool, detail: str = "", *, hard: bool = True):
        status = "PASS" if ok else ("FAIL" if hard else "NOTE")
        line = f"criterion {number:>2} {status}: {title}" + (f" [{detail}]" if detail else "")
        _ACCEPTANCE_LINES.append(line)
        print(line)
        if hard:
            assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
