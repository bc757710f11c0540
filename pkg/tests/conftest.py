import os

import pytest
import sympy
from hypothesis import settings

from bmw.laurent import LaurentPoly
from bmw.rational import RationalFn

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SQ, SR = sympy.symbols("q r")


def to_sympy(v):
    """Independent view of a LaurentPoly / RationalFn as a sympy expression."""
    if isinstance(v, RationalFn):
        return to_sympy(v.num) / to_sympy(v.den)
    if isinstance(v, LaurentPoly):
        return sum((c * SQ ** eq * SR ** er for (eq, er), c in v.items()), sympy.Integer(0))
    return sympy.sympify(v)


def sym_equal(a, b) -> bool:
    return sympy.simplify(sympy.together(a - b)) == 0


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("BMW_CACHE_DIR", str(tmp_path / "cache"))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
