import sys

import numpy as np
import pytest

from erasurefft.erasure import GridPartition
from erasurefft.spectral import TrigPolynomial


def direct_dft(v):
    """O(N^2) reference DFT built from explicit loops."""
    n = len(v)
    out = []
    for k in range(n):
        acc = 0j
        for m in range(n):
            acc += v[m] * np.exp(-2j * np.pi * m * k / n)
        out.append(acc)
    return np.array(out)


def direct_cyclic(a, b):
    n = len(a)
    return np.array([sum(a[p] * b[(k - p) % n] for p in range(n)) for k in range(n)])


def rel_err(got, want):
    got, want = np.asarray(got), np.asarray(want)
    scale = np.max(np.abs(want))
    return np.max(np.abs(got - want)) / (scale if scale else 1.0)


def random_complex(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def random_grid(rng, n, n_known=None):
    if n_known is None:
        n_known = int(rng.integers(1, n + 1))
    return GridPartition.from_known(n, np.sort(rng.choice(n, n_known, replace=False)))


def jittered_instance(rng, n, a=8):
    """(grid, true samples) for a jittered grid; built without the package's generators."""
    p = n // a
    known = a * np.arange(p) + rng.integers(0, a, p)
    coeffs = rng.uniform(-1, 1, p) + 1j * rng.uniform(-1, 1, p)
    t = np.arange(n)
    truth = np.exp(2j * np.pi * np.outer(t, np.arange(p)) / n) @ coeffs
    return GridPartition.from_known(n, known), truth, coeffs


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def poly16(rng):
    return TrigPolynomial(random_complex(rng, 16), 16)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.VERDICTS:
        terminalreporter.write_line(line)
