import numpy as np
import pytest


def rand_herm(rng, m, complex_entries=True):
    a = rng.standard_normal((m, m))
    if complex_entries:
        a = a + 1j * rng.standard_normal((m, m))
    return 0.5 * (a + a.conj().T)


def rand_posdef(rng, m):
    g = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    return g @ g.conj().T + 0.1 * np.eye(m)


def scan_index(a, b, ts):
    """Brute-force index of A + tB at every t in ts."""
    mats = a[None] + ts[:, None, None] * b[None]
    return np.sum(np.linalg.eigvalsh(mats) < 0, axis=1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
