from fractions import Fraction

import pytest

from qmatspec import ScalarBackend, TensorOp, drinfeld_jimbo, hecke_symmetry
from qmatspec.tensor import inverse, kron


@pytest.fixture(scope="session")
def dj2():
    return drinfeld_jimbo(2)


@pytest.fixture(scope="session")
def dj3_sampled():
    return drinfeld_jimbo(3, ScalarBackend.sampled(Fraction(5, 3)))


def twisted(backend: ScalarBackend, N: int = 2):
    """``(g (x) g) R (g (x) g)^{-1}`` for a fixed non-orthogonal ``g``: a non-symmetric Hecke symmetry."""
    base = drinfeld_jimbo(N, backend)
    dense = [[(2 if i == j else 1) if j >= i else (1 if i - j == 1 else 0) for j in range(N)] for i in range(N)]
    g = TensorOp.from_dense(dense, N).map(backend.convert)
    G = kron(g, g)
    return hecke_symmetry(G @ base.R @ inverse(G, backend.one), backend)


@pytest.fixture(scope="session")
def twisted2():
    return twisted(ScalarBackend.sampled(Fraction(3, 2)))


_ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def acceptance():
    """Record one criterion outcome; a summary line per criterion is printed at the end of the run."""

    def record(number: int, title: str, failures: list[str]):
        ok = not failures
        detail = "" if ok else f" ({len(failures)} failure(s); first: {failures[0]})"
        _ACCEPTANCE[number] = (title, ok, detail)
        print(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}{detail}")
        assert ok, failures[:5]

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}{detail}")
