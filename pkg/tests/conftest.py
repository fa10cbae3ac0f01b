import os
import random
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from fungal.formats import parse_panels
from fungal.scheme import UpdateScheme, is_primitive, normalize

FIXTURES = Path(__file__).parent / "fixtures"
Z1 = "HVVHHHV"

settings.register_profile(
    "default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def load_panels(name):
    return parse_panels((FIXTURES / name).read_text())


def rand_scheme(rng, kmax=10, normal=True):
    """Random primitive word with at least two H and two V.  With ``normal``
    the word already starts with H and ends with V."""
    while True:
        k = rng.randint(4, kmax)
        w = "".join(rng.choice("HV") for _ in range(k))
        if w.count("H") < 2 or w.count("V") < 2 or not is_primitive(w):
            continue
        n = normalize(w)
        if normal and (n.wait_steps or n.rotated):
            continue
        return UpdateScheme(w)


@st.composite
def schemes(draw, kmax=10, normal=True):
    seed = draw(st.integers(0, 2**32 - 1))
    return rand_scheme(random.Random(seed), kmax, normal)


@st.composite
def words(draw, min_size=1, max_size=12):
    return draw(st.text(alphabet="HV", min_size=min_size, max_size=max_size))


@pytest.fixture
def z1():
    return UpdateScheme(Z1)


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance")
        for line in RESULTS:
            terminalreporter.write_line(line)
