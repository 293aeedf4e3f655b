"""Erasure-polynomial weights.

For a set of missing grid positions ``J^c`` the erasure polynomial is

    phi(t) = prod_{k in J^c} (exp(2j*pi*t/N) - exp(2j*pi*k/N)),

which vanishes exactly on ``J^c``. The recovery solver needs ``phi(n)`` on the
known positions and ``1/phi'(n)`` on the missing ones. The fast route builds
both from one cyclic convolution of the missing-set indicator with a fixed
log-factor table ``alpha`` and one complex exponential per sample, in
O(N log N). The ``*_direct`` functions evaluate the products literally and
serve as oracles.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import InvalidArgumentError, NumericOverflowError
from .spectral import dft, idft

__all__ = [
    "AlphaTable",
    "ErasureWeights",
    "GridPartition",
    "alpha_table",
    "beta",
    "build_alpha_table",
    "erasure_phi_direct",
    "erasure_phi_prime_direct",
    "erasure_weights",
    "erasure_weights_fast",
    "phi_direct_at",
    "phi_prime_direct_at",
    "phi_samples_direct",
    "weights_from_json",
    "weights_to_json",
]


def _index_array(indices: Iterable[int]) -> np.ndarray:
    arr = np.asarray(list(indices))
    if arr.size == 0:
        return np.zeros(0, dtype=np.int64)
    if arr.ndim != 1 or not np.issubdtype(arr.dtype, np.integer):
        raise InvalidArgumentError("indices must be a flat sequence of integers")
    return arr.astype(np.int64)


@dataclass(frozen=True)
class GridPartition:
    """Split of the grid ``0..N-1`` into known (J) and missing (J^c) indices.

    Use :meth:`from_known` or :meth:`from_missing` rather than the raw
    constructor; both validate and sort.
    """

    n_total: int
    known: tuple[int, ...]
    missing: tuple[int, ...]

    def __post_init__(self):
        n = self.n_total
        if int(n) != n or n < 1:
            raise InvalidArgumentError(f"N must be a positive integer, got {n}")
        if len(self.known) < 1:
            raise InvalidArgumentError("at least one known sample is required")
        known = set(self.known)
        missing = set(self.missing)
        if len(known) != len(self.known) or len(missing) != len(self.missing):
            raise InvalidArgumentError("duplicate indices in grid")
        if known & missing:
            raise InvalidArgumentError(
                f"indices both known and missing: {sorted(known & missing)}"
            )
        if known | missing != set(range(n)):
            raise InvalidArgumentError("known and missing indices must cover 0..N-1")

    @classmethod
    def from_known(cls, n_total: int, known: Iterable[int]) -> GridPartition:
        idx = _index_array(known)
        _check_range(idx, n_total)
        dup = _first_duplicate(idx)
        if dup is not None:
            raise InvalidArgumentError(f"duplicate known index {dup}")
        k = tuple(int(i) for i in np.sort(idx))
        m = tuple(sorted(set(range(n_total)) - set(k)))
        return cls(int(n_total), k, m)

    @classmethod
    def from_missing(cls, n_total: int, missing: Iterable[int]) -> GridPartition:
        idx = _index_array(missing)
        _check_range(idx, n_total)
        dup = _first_duplicate(idx)
        if dup is not None:
            raise InvalidArgumentError(f"duplicate missing index {dup}")
        m = tuple(int(i) for i in np.sort(idx))
        k = tuple(sorted(set(range(n_total)) - set(m)))
        return cls(int(n_total), k, m)

    @property
    def n_known(self) -> int:
        return len(self.known)

    @property
    def n_missing(self) -> int:
        return len(self.missing)

    @functools.cached_property
    def known_array(self) -> np.ndarray:
        return np.array(self.known, dtype=np.int64)

    @functools.cached_property
    def missing_array(self) -> np.ndarray:
        return np.array(self.missing, dtype=np.int64)

    def known_indicator(self) -> np.ndarray:
        ind = np.zeros(self.n_total)
        ind[self.known_array] = 1.0
        return ind

    def missing_indicator(self) -> np.ndarray:
        ind = np.zeros(self.n_total)
        ind[self.missing_array] = 1.0
        return ind


def _check_range(idx: np.ndarray, n_total: int) -> None:
    if int(n_total) != n_total or n_total < 1:
        raise InvalidArgumentError(f"N must be a positive integer, got {n_total}")
    bad = idx[(idx < 0) | (idx >= n_total)]
    if bad.size:
        raise InvalidArgumentError(f"index {int(bad[0])} out of range 0..{n_total - 1}")


def _first_duplicate(idx: np.ndarray):
    seen = set()
    for i in idx.tolist():
        if i in seen:
            return i
        seen.add(i)
    return None


@dataclass(frozen=True, eq=False)
class AlphaTable:
    """``alpha(n) = log(1 - exp(-2j*pi*n/N))`` with ``alpha(0) = 0``, and its DFT."""

    n_total: int
    values: np.ndarray = field(repr=False)
    alpha_dft: np.ndarray = field(repr=False)


def build_alpha_table(n_total: int) -> AlphaTable:
    """Build the log-factor table for period ``n_total``.

    The principal branch of the logarithm is used, so ``exp(alpha(n))``
    reproduces ``1 - exp(-2j*pi*n/N)`` exactly and alpha(n), alpha(N-n) are
    complex conjugates.
    """
    if int(n_total) != n_total or n_total < 1:
        raise InvalidArgumentError(f"N must be a positive integer, got {n_total}")
    n_total = int(n_total)
    n = np.arange(1, n_total)
    values = np.zeros(n_total, dtype=np.complex128)
    # 1 - exp(-j*theta) = 2 sin(theta/2) * exp(j*(pi - theta)/2) for theta in (0, 2pi);
    # the closed form avoids cancellation in 1 - exp(...) near n = 0 and n = N.
    theta = 2 * np.pi * n / n_total
    values[1:] = np.log(2 * np.sin(theta / 2)) + 1j * (np.pi - theta) / 2
    values.setflags(write=False)
    alpha_dft = dft(values)
    alpha_dft.setflags(write=False)
    return AlphaTable(n_total, values, alpha_dft)


@functools.lru_cache(maxsize=64)
def alpha_table(n_total: int) -> AlphaTable:
    """Cached :func:`build_alpha_table`; tables are immutable so sharing is safe."""
    return build_alpha_table(n_total)


def beta(grid: GridPartition, alpha: AlphaTable) -> np.ndarray:
    """Cyclic convolution of the missing-set indicator with ``alpha``.

    Only the indicator is transformed; the DFT of ``alpha`` is taken from the
    table.
    """
    if alpha.n_total != grid.n_total:
        raise InvalidArgumentError(
            f"alpha table built for N={alpha.n_total}, grid has N={grid.n_total}"
        )
    return idft(dft(grid.missing_indicator()) * alpha.alpha_dft)


@dataclass(frozen=True, eq=False)
class ErasureWeights:
    """Sampling-scheme weights for the recovery solver.

    ``phi_known[i]`` is phi at ``grid.known[i]`` and ``inv_dphi_missing[i]``
    is ``1/phi'`` at ``grid.missing[i]``.
    """

    grid: GridPartition
    phi_known: np.ndarray = field(repr=False)
    inv_dphi_missing: np.ndarray = field(repr=False)

    def __post_init__(self):
        phi = np.asarray(self.phi_known, dtype=np.complex128)
        inv = np.asarray(self.inv_dphi_missing, dtype=np.complex128)
        if phi.shape != (self.grid.n_known,) or inv.shape != (self.grid.n_missing,):
            raise InvalidArgumentError("weight arrays do not match the grid index sets")
        for name, arr in (("phi", phi), ("1/phi'", inv)):
            if not np.all(np.isfinite(arr)):
                raise NumericOverflowError(f"non-finite {name} weight")
            if np.any(arr == 0):
                raise InvalidArgumentError(f"zero {name} weight")
        phi.setflags(write=False)
        inv.setflags(write=False)
        object.__setattr__(self, "phi_known", phi)
        object.__setattr__(self, "inv_dphi_missing", inv)

    def phi(self) -> dict[int, complex]:
        return dict(zip(self.grid.known, self.phi_known.tolist()))

    def inv_dphi(self) -> dict[int, complex]:
        return dict(zip(self.grid.missing, self.inv_dphi_missing.tolist()))


def erasure_weights_fast(grid: GridPartition, alpha: AlphaTable) -> ErasureWeights:
    """phi on J and 1/phi' on J^c in O(N log N).

    phi(n)    = exp(-2j*pi*n*P/N + beta(n)),            n in J
    1/phi'(n) = N/(2j*pi) * exp(2j*pi*n*P/N - beta(n)), n in J^c
    """
    n_total, n_known = grid.n_total, grid.n_known
    b = beta(grid, alpha)
    # reduce n*P modulo N in integers before forming the phase
    phase = 2 * np.pi * ((np.arange(n_total) * n_known) % n_total) / n_total
    known, missing = grid.known_array, grid.missing_array
    with np.errstate(over="ignore", invalid="ignore"):
        phi = np.exp(b[known] - 1j * phase[known])
        inv_dphi = n_total / (2j * np.pi) * np.exp(1j * phase[missing] - b[missing])
    if not (np.all(np.isfinite(phi)) and np.all(np.isfinite(inv_dphi))):
        raise NumericOverflowError(
            f"erasure weights overflow for N={n_total}, P={n_known}"
        )
    return ErasureWeights(grid, phi, inv_dphi)


def erasure_weights(grid: GridPartition) -> ErasureWeights:
    """:func:`erasure_weights_fast` with the cached alpha table for ``grid.n_total``."""
    return erasure_weights_fast(grid, alpha_table(grid.n_total))


def _roots(grid: GridPartition, indices) -> np.ndarray:
    return np.exp(2j * np.pi * np.asarray(indices, dtype=np.float64) / grid.n_total)


def phi_direct_at(grid: GridPartition, t: float, over=None) -> complex:
    """Literal product over ``over`` (default J^c) at real ``t``.

    Passing ``over=grid.known`` gives the complementary product used in the
    derivation of the derivative weights.
    """
    idx = grid.missing if over is None else over
    z = np.exp(2j * np.pi * t / grid.n_total)
    return complex(np.prod(z - _roots(grid, idx)))


def phi_prime_direct_at(grid: GridPartition, t: float) -> complex:
    """Derivative of the erasure polynomial at real ``t`` as a sum of
    leave-one-out products."""
    z = np.exp(2j * np.pi * t / grid.n_total)
    factors = z - _roots(grid, grid.missing)
    m = factors.size
    if m == 0:
        return 0j
    # prefix[k] = prod(factors[:k]), suffix[k] = prod(factors[k+1:])
    prefix = np.ones(m, dtype=np.complex128)
    suffix = np.ones(m, dtype=np.complex128)
    prefix[1:] = np.cumprod(factors[:-1])
    suffix[:-1] = np.cumprod(factors[::-1][:-1])[::-1]
    return complex(2j * np.pi / grid.n_total * z * np.sum(prefix * suffix))


def _check_index(grid: GridPartition, n) -> int:
    if int(n) != n or not 0 <= n < grid.n_total:
        raise InvalidArgumentError(f"index {n} out of range 0..{grid.n_total - 1}")
    return int(n)


def erasure_phi_direct(grid: GridPartition, n: int) -> complex:
    """phi(n) by the literal product; exactly 0 for n in J^c."""
    return phi_direct_at(grid, _check_index(grid, n))


def erasure_phi_prime_direct(grid: GridPartition, n: int) -> complex:
    """phi'(n) by the literal derivative formula."""
    return phi_prime_direct_at(grid, _check_index(grid, n))


def phi_samples_direct(grid: GridPartition) -> np.ndarray:
    """phi(n) for all n in 0..N-1 by the literal product, zero on J^c."""
    out = np.zeros(grid.n_total, dtype=np.complex128)
    if grid.n_missing == 0:
        out[:] = 1.0
        return out
    roots = _roots(grid, grid.missing)
    known = grid.known_array
    z = _roots(grid, known)
    out[known] = np.prod(z[:, None] - roots[None, :], axis=1)
    return out


def weights_to_json(weights: ErasureWeights) -> dict:
    return {
        "n": weights.grid.n_total,
        "known": [
            {"index": int(n), "phi_re": float(v.real), "phi_im": float(v.imag)}
            for n, v in zip(weights.grid.known, weights.phi_known)
        ],
        "missing": [
            {"index": int(n), "inv_dphi_re": float(v.real), "inv_dphi_im": float(v.imag)}
            for n, v in zip(weights.grid.missing, weights.inv_dphi_missing)
        ],
    }


def weights_from_json(doc: dict) -> ErasureWeights:
    """Inverse of :func:`weights_to_json`. Entries may appear in any order."""
    try:
        n_total = doc["n"]
        known = {int(e["index"]): complex(e["phi_re"], e["phi_im"]) for e in doc["known"]}
        missing = {
            int(e["index"]): complex(e["inv_dphi_re"], e["inv_dphi_im"])
            for e in doc["missing"]
        }
        if len(known) != len(doc["known"]) or len(missing) != len(doc["missing"]):
            raise InvalidArgumentError("duplicate index in weights file")
    except (KeyError, TypeError) as exc:
        raise InvalidArgumentError(f"malformed weights document: {exc!r}") from exc
    grid = GridPartition.from_known(n_total, known)
    if set(grid.missing) != set(missing):
        raise InvalidArgumentError("missing indices do not complement known indices")
    return ErasureWeights(
        grid,
        np.array([known[n] for n in grid.known]),
        np.array([missing[n] for n in grid.missing]),
    )
