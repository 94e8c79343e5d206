import pytest
from hypothesis import settings, strategies as st

from hkbott.bott import BottMatrix, upper_positions

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

# dimension-4 examples identified by their entries
M12 = BottMatrix.from_ones(4, [(1, 2), (2, 3), (3, 4)])
M6 = BottMatrix.from_ones(4, [(1, 4), (2, 3), (3, 4)])
KLEIN = BottMatrix.from_ones(2, [(1, 2)])
CIRCLE = BottMatrix.zero(1)


@st.composite
def bott_matrices(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    positions = upper_positions(n)
    bits = draw(st.lists(st.booleans(), min_size=len(positions), max_size=len(positions)))
    return BottMatrix.from_ones(n, [p for p, b in zip(positions, bits) if b])


@pytest.fixture
def m12():
    return M12


@pytest.fixture
def m6():
    return M6


@pytest.fixture
def klein():
    return KLEIN


# -- acceptance reporting -----------------------------------------------------------

_CRITERIA: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[number] = (title, "PASS" if report.passed else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, verdict, seconds = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:>2}  {verdict}  {title}  ({seconds:.2f} s)")
