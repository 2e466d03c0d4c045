import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from epp5 import codec  # noqa: E402
from epp5.gates import BXOR, By, GateSequence, SxBx, Sz  # noqa: E402

import golden  # noqa: E402

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"

settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("dev", max_examples=50, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

# one line per acceptance criterion, filled in by tests/test_acceptance.py
CRITERIA: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(CRITERIA, key=lambda k: (int(k.rstrip("abcd")), k)):
        ok, detail = CRITERIA[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def mv():
    return codec.parse_designation(golden.BASE)


@pytest.fixture(scope="session")
def mv_rowsum():
    return codec.parse_designation(golden.ROWSUM)


@pytest.fixture(scope="session")
def eq40():
    return codec.parse_mat10(golden.MW_A1ALPHA1)


@pytest.fixture(scope="session")
def eq43():
    return codec.parse_mat10(golden.MW_C1BETA1)


pairs = st.integers(1, 5)


@st.composite
def gates(draw, include_sz=False):
    kinds = ["BXOR", "By", "SxBx"] + (["Sz"] if include_sz else [])
    kind = draw(st.sampled_from(kinds))
    if kind == "BXOR":
        s = draw(pairs)
        t = draw(pairs.filter(lambda p: p != s))
        return BXOR(s, t)
    return {"By": By, "SxBx": SxBx, "Sz": Sz}[kind](draw(pairs))


def sequences(max_size=12, include_sz=False):
    return st.lists(gates(include_sz), max_size=max_size).map(lambda g: GateSequence(tuple(g)))


words10 = st.integers(0, 1023)
mat10s = st.lists(words10, min_size=10, max_size=10)
