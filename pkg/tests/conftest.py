import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from entexchange import grouped, to_grouped, parse_spectrum


def spectrum_from_weights(weights):
    total = sum(weights)
    return to_grouped(parse_spectrum([Fraction(w, total) for w in weights]))


def random_spectrum(rng: random.Random, min_len=1, max_len=4, max_weight=12):
    n = rng.randint(min_len, max_len)
    return spectrum_from_weights([rng.randint(1, max_weight) for _ in range(n)])


weights = st.lists(st.integers(min_value=1, max_value=12), min_size=1, max_size=4)
entangled_weights = st.lists(st.integers(min_value=1, max_value=12), min_size=2, max_size=4)
spectra = weights.map(spectrum_from_weights)
entangled_spectra = entangled_weights.map(spectrum_from_weights)


@pytest.fixture
def ex2():
    return (grouped(["0.40", "0.36", "0.14", "0.10"]), grouped(["0.50", "0.25", "0.25"]))


@pytest.fixture
def ex3():
    return (grouped(["40/101", "40/101", "10/101", "10/101", "1/101"]),
            grouped(["50/101", "25/101", "20/101", "5/101", "1/101"]))


@pytest.fixture
def ex4():
    return (grouped(["0.4", "0.4", "0.2"]), grouped(["0.5", "0.25", "0.25"]))


@pytest.fixture
def phi():
    return grouped(["0.6", "0.4"])


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when == "call" and "test_acceptance.py::test_criterion" in rep.nodeid:
                lines.append((rep.nodeid.split("::")[-1], outcome))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, outcome in sorted(lines):
            terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
