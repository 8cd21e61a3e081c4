import itertools
import math

import hypothesis.strategies as st
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")


def brute_min(points):
    """Independent oracle: plain double loop over all unordered pairs."""
    best = math.inf
    for (ax, ay), (bx, by) in itertools.combinations([tuple(map(float, p)) for p in points], 2):
        best = min(best, math.sqrt((ax - bx) ** 2 + (ay - by) ** 2))
    return best


def rel_err(got, want):
    return abs(got - want) / max(want, 1e-300)


unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, allow_infinity=False)
# coarse lattice coordinates produce shared x/y values, duplicates and exact ties
lattice = st.integers(min_value=0, max_value=8).map(lambda k: k / 8)


@st.composite
def point_sets(draw, min_size=2, max_size=60):
    coord = draw(st.sampled_from([unit, lattice]))
    return draw(st.lists(st.tuples(coord, coord), min_size=min_size, max_size=max_size))


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def acceptance_log(request):
    lines = request.config.acceptance_lines

    def log(number, title, passed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {title}"
        if detail:
            line += f" -- {detail}"
        lines.append(line)
        print(line)

    return log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)


# subnormals, neighbouring doubles and values near 0 and 1
extreme = st.one_of(
    st.sampled_from([0.0, 1.0, 5e-324, 1.4e-45, 1e-300, 1e-17, 1e-8, 0.5,
                     math.nextafter(0.5, 1.0), math.nextafter(1.0, 0.0)]),
    st.floats(min_value=0.0, max_value=1e-10),
    unit,
)
