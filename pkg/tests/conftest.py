import numpy as np
import pytest

from dftstego.pnm import PnmImage

STANDARD_IMAGES = ("camera", "moon", "brick", "grass", "gravel")

_criteria = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria.append((marker.args[0], marker.args[1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome in sorted(_criteria):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")


def standard_image(name):
    data = pytest.importorskip("skimage.data")
    return PnmImage.gray(getattr(data, name)())


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def camera():
    return standard_image("camera")


@pytest.fixture(scope="session")
def earth_payload():
    """A natural 270x270 gray image used as the authenticating payload."""
    data = pytest.importorskip("skimage.data")
    return PnmImage.gray(data.coins()[:270, :270])
