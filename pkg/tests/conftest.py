import pytest

from overlaysim import OverlayNetwork, ResourceDescription

_ACCEPTANCE_LINES = []


def build_net(descs, edges, max_connections=15):
    """Network with hand-picked descriptions and links."""
    net = OverlayNetwork([ResourceDescription(*d) for d in descs], max_connections)
    for a, b in edges:
        assert net.add_link(a, b), (a, b)
    return net


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
