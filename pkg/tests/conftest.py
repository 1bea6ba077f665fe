import itertools

import pytest

from steinerauth.designs import Design
from steinerauth.tables import FANO_BLOCKS, TABLE_II


@pytest.fixture
def fano():
    return Design(2, 7, 3, 1, tuple(tuple(x - 1 for x in B) for B in FANO_BLOCKS))


@pytest.fixture
def table2_design():
    return Design(3, 10, 4, 1, TABLE_II.rows)


@pytest.fixture
def sts9():
    """The affine plane AG(2,3): lines of Z_3^2, a 2-(9,3,1) design with r = 4."""
    pts = list(itertools.product(range(3), repeat=2))
    idx = {p: i for i, p in enumerate(pts)}
    lines = set()
    for p, q in itertools.combinations(pts, 2):
        d = ((q[0] - p[0]) % 3, (q[1] - p[1]) % 3)
        lines.add(tuple(sorted(idx[((p[0] + s * d[0]) % 3, (p[1] + s * d[1]) % 3)] for s in range(3))))
    return Design(2, 9, 3, 1, tuple(lines))


# acceptance summary lines, filled by test_acceptance.py
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
