import pytest
from hypothesis import settings

from reeb_spectra.qlinear import BasisRegistry

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

# Square roots of distinct squarefree integers are linearly independent over Q,
# so this registry's independence claim is actually true.
ROOTS = {
    "r2": "1.41421356237309504880168872421",
    "r3": "1.73205080756887729352744634151",
    "r5": "2.23606797749978969640917366873",
    "r7": "2.64575131106459059050161575364",
    "r11": "3.31662479035539984911493273667",
    "r13": "3.60555127546398929311922126747",
}


@pytest.fixture(scope="session")
def roots():
    return BasisRegistry.of(*((name, approx, 15) for name, approx in ROOTS.items()))


@pytest.fixture(scope="session")
def sqrt2():
    """The registry used in worked examples: one symbol s ~ sqrt(2)."""
    return BasisRegistry.of(("s", "1.4142135623730951", 15))


# -- acceptance reporting ---------------------------------------------------

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call" and not report.failed:
        return
    number, title = marker.args
    prev = _ACCEPTANCE.get(number, (title, True))
    _ACCEPTANCE[number] = (title, prev[1] and report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}")
