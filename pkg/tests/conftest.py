"""Shared hypothesis strategies and fixtures."""
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from dp9.lattice import DIM, CohClass, H2Class
from dp9.verify import DEFAULT_SEED

small_ints = st.integers(min_value=-5, max_value=5)
rationals = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 12))

integral_h2 = st.lists(small_ints, min_size=DIM, max_size=DIM).map(
    lambda cs: H2Class(tuple(cs)))
rational_h2 = st.lists(rationals, min_size=DIM, max_size=DIM).map(
    lambda cs: H2Class(tuple(cs)))
coh_classes = st.builds(CohClass, rationals, rational_h2, rationals)


@pytest.fixture
def seed():
    return DEFAULT_SEED


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    rows = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            if getattr(rep, "when", "call") != "call" and key != "error":
                continue
            name = rep.nodeid.rpartition("::")[2]
            if "test_acceptance.py" in rep.nodeid and name.startswith("test_criterion_"):
                rows[name] = "PASS" if key == "passed" else "FAIL"
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(rows):
        num = int(name.split("_")[2])
        terminalreporter.write_line(f"criterion {num:2d}: {rows[name]}  {name[len('test_criterion_00_'):]}")
