"""Built-in identity checks run by ``erasurefft selfcheck``."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .erasure import (
    GridPartition,
    build_alpha_table,
    erasure_phi_direct,
    erasure_phi_prime_direct,
    erasure_weights,
    phi_direct_at,
)
from .recovery import KnownSamples, recover
from .spectral import dft, idft


def _alpha_sum() -> str:
    worst = 0.0
    for n in range(1, 513):
        err = abs(build_alpha_table(n).values.sum() - math.log(n))
        if err > 1e-12 * n:
            raise AssertionError(f"N={n}: |sum(alpha) - log N| = {err:.3e}")
        worst = max(worst, err / n)
    return f"N=1..512, worst err/N {worst:.1e}"


def _round_trip() -> str:
    rng = np.random.default_rng(0)
    worst = 0.0
    for n in range(1, 65):
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        worst = max(worst, np.max(np.abs(idft(dft(v)) - v)) / np.max(np.abs(v)))
    if worst > 1e-12:
        raise AssertionError(f"relative error {worst:.3e}")
    return f"N=1..64, worst rel err {worst:.1e}"


def _product_identity() -> str:
    rng = np.random.default_rng(1)
    n = 48
    grid = GridPartition.from_known(n, np.sort(rng.choice(n, 12, replace=False)))
    worst = 0.0
    for k in range(n):
        t = k + 0.5
        lhs = phi_direct_at(grid, t) * phi_direct_at(grid, t, over=grid.known)
        rhs = np.exp(2j * np.pi * t) - 1
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    if worst > 1e-9:
        raise AssertionError(f"relative error {worst:.3e}")
    return f"N={n}, worst rel err {worst:.1e}"


def _fast_weights() -> str:
    rng = np.random.default_rng(2)
    n = 64
    grid = GridPartition.from_known(n, np.sort(rng.choice(n, 20, replace=False)))
    w = erasure_weights(grid)
    phi = np.array([erasure_phi_direct(grid, k) for k in grid.known])
    inv = 1 / np.array([erasure_phi_prime_direct(grid, k) for k in grid.missing])
    worst = max(np.max(np.abs(w.phi_known - phi) / np.abs(phi)),
                np.max(np.abs(w.inv_dphi_missing - inv) / np.abs(inv)))
    if worst > 1e-9:
        raise AssertionError(f"relative error {worst:.3e}")
    return f"N={n}, worst rel err {worst:.1e}"


def _traced_recovery() -> str:
    c = 0.75 - 0.5j
    known = KnownSamples.from_mapping(2, {0: c})
    for method in ("proposed", "ber", "pinv"):
        got = recover(known, method).full_samples
        if np.max(np.abs(got - c)) > 1e-12:
            raise AssertionError(f"{method}: got {got.tolist()}")
    return "N=2, constant signal, all three solvers"


CHECKS: list[tuple[str, Callable[[], str]]] = [
    ("alpha-sum", _alpha_sum),
    ("dft-round-trip", _round_trip),
    ("product-identity", _product_identity),
    ("fast-vs-direct-weights", _fast_weights),
    ("n2-traced-recovery", _traced_recovery),
]


def run_selfcheck(echo: Callable[[str], None] = print) -> bool:
    ok = True
    for name, check in CHECKS:
        try:
            detail = check()
        except AssertionError as exc:
            echo(f"FAIL {name}: {exc}")
            ok = False
        else:
            echo(f"PASS {name}: {detail}")
    return ok
