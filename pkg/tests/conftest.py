import pytest

from hasse_dmod import make_field

FIELDS = [make_field(0), make_field(2), make_field(3), make_field(5)]


@pytest.fixture(params=FIELDS, ids=str)
def k(request):
    return request.param


@pytest.fixture
def QQ():
    return make_field(0)


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    """Collects one summary line per acceptance criterion."""
    return request.config.stash.setdefault(ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
