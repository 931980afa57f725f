"""Independent oracles shared by the test modules.

None of these call into the package's product or bracket code.
"""
import itertools

import numpy as np
import pytest

# Levi-Civita symbol by explicit permutation parity.
EPS = np.zeros((3, 3, 3))
for _p in itertools.permutations(range(3)):
    EPS[_p] = 1.0 if _p in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1.0


def cofactor_det(a, b, c) -> float:
    """Determinant of the rows (a, b, c) by first-row cofactor expansion."""
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def structure_cross(signs, u, v):
    """Bracket from structure constants ``c^i_jk = s_i eps_ijk``."""
    C = np.asarray(signs, dtype=float)[:, None, None] * EPS
    return np.einsum("ijk,...j,...k->...i", C, u, v)


def naive_bracket(signs, scale=1.0):
    return lambda u, v: scale * structure_cross(signs, u, v)


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)


# -- acceptance reporting ----------------------------------------------------

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line[1])
