import pytest
from hypothesis import settings

from affdemazure import demazure as dz

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: dict = {}


@pytest.fixture(autouse=True)
def _no_disk_cache():
    dz.set_disk_cache(None)
    yield
    dz.set_disk_cache(None)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
