import sys
from fractions import Fraction
from pathlib import Path

import pytest

from precourant import BracketContext, PolyScalar, TractorConnection, WeylStructure, build_sl

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(Path(__file__).parent))  # matrix_oracle


@pytest.fixture(scope="session")
def sl2():
    return build_sl(2)


@pytest.fixture(scope="session")
def sl3():
    return build_sl(3)


def curved_weyl():
    # Gamma^1_{22} = x^1
    return WeylStructure.from_entries(2, christoffel={(0, 1, 1): PolyScalar.variable(0, 2)})


@pytest.fixture(scope="session")
def flat_ctx(sl3):
    return BracketContext(TractorConnection(*sl3, WeylStructure.flat(2)))


@pytest.fixture(scope="session")
def curved_ctx(sl3):
    return BracketContext(TractorConnection(*sl3, curved_weyl()))


@pytest.fixture(scope="session")
def wild_ctx(sl3):
    """Torsion and a nonzero Rho term, for identities that hold regardless."""
    x, y = PolyScalar.variable(0, 2), PolyScalar.variable(1, 2)
    weyl = WeylStructure.from_entries(
        2,
        christoffel={(0, 0, 1): x * y, (1, 1, 0): x - 1, (0, 1, 1): y * y},
        rho={(0, 1): x, (1, 0): PolyScalar.constant(Fraction(1, 2), 2), (1, 1): y},
    )
    return BracketContext(TractorConnection(*sl3, weyl))


POINTS = [(Fraction(1), Fraction(1)), (Fraction(-1, 2), Fraction(3, 4)), (Fraction(2), Fraction(-3, 2))]


# criterion number -> (title, passed); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}")
