import numpy as np
import pytest
from hypothesis import strategies as st

from bridge_transforms.path_core import Path


@pytest.fixture
def zigzag():
    # values [0, 1, -1, 2] on [0, 3]
    return Path(np.array([0.0, 1.0, 2.0, 3.0]), np.array([0.0, 1.0, -1.0, 2.0]))


@st.composite
def pl_paths(draw, min_points=2, max_points=40, start_zero=False, horizon=None):
    """Random PL path with unequal spacings; values on a coarse grid to provoke ties."""
    n = draw(st.integers(min_points, max_points))
    gaps = draw(st.lists(st.floats(0.05, 3.0), min_size=n - 1, max_size=n - 1))
    ts = np.concatenate([[0.0], np.cumsum(gaps)])
    if horizon is not None:
        ts = ts * (horizon / ts[-1])
        ts[-1] = horizon
    ints = draw(st.booleans())
    if ints:
        vs = np.array(draw(st.lists(st.integers(-4, 4), min_size=n, max_size=n)), dtype=float)
    else:
        vs = np.array(draw(st.lists(st.floats(-5, 5, allow_nan=False), min_size=n, max_size=n)))
    if start_zero:
        vs[0] = 0.0
    return Path(ts, vs)


# acceptance lines, printed after the run
ACCEPTANCE: list[tuple[str, bool, str]] = []


def record(criterion, ok: bool, detail: str) -> None:
    ACCEPTANCE.append((str(criterion), bool(ok), detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'}  {detail}")
