"""Missing-sample solvers.

Three ways to recover ``s(n), n in J^c`` for ``s(t) = sum_{p<P} S_p
exp(2j*pi*p*t/N)`` given ``s(n), n in J`` with ``|J| = P``:

``recover_proposed``
    Two FFTs on the erasure-weighted, zero-filled samples; O(N log N) once
    the erasure weights are known.
``recover_ber``
    Burst error recovery: a backwards recursion on the DFT coefficients of
    the zero-filled samples, O(NP).
``recover_pinv``
    Truncated-SVD least squares on the P x P Vandermonde-like system.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .erasure import ErasureWeights, GridPartition, erasure_weights, phi_samples_direct
from .errors import ConsistencyError, InvalidArgumentError
from .spectral import TrigPolynomial, dft, eval_trig, idft, spectral_derivative

__all__ = [
    "KnownSamples",
    "Method",
    "RecoveryResult",
    "ber_coefficients",
    "extract_coefficients",
    "recover",
    "recover_ber",
    "recover_pinv",
    "recover_proposed",
    "smallest_divisor_at_least",
]

MONIC_TOLERANCE = 1e-6


class Method(str, enum.Enum):
    PROPOSED = "proposed"
    BER = "ber"
    PINV = "pinv"


@dataclass(frozen=True, eq=False)
class KnownSamples:
    """Sample values on the known index set of ``grid``.

    ``values[i]`` is ``s(grid.known[i])``.
    """

    grid: GridPartition
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != (self.grid.n_known,):
            raise InvalidArgumentError(
                f"expected {self.grid.n_known} known values, got shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise InvalidArgumentError("known samples contain NaN or Inf")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_mapping(cls, n_total: int, samples: Mapping[int, complex]) -> KnownSamples:
        grid = GridPartition.from_known(n_total, samples.keys())
        return cls(grid, np.array([samples[n] for n in grid.known], dtype=np.complex128))

    @classmethod
    def from_full(cls, grid: GridPartition, full_samples) -> KnownSamples:
        """Take the known entries out of a length-N sample vector."""
        full = np.asarray(full_samples, dtype=np.complex128)
        return cls(grid, full[grid.known_array])

    def zero_filled(self) -> np.ndarray:
        out = np.zeros(self.grid.n_total, dtype=np.complex128)
        out[self.grid.known_array] = self.values
        return out


@dataclass(frozen=True, eq=False)
class RecoveryResult:
    full_samples: np.ndarray = field(repr=False)
    method: Method
    coefficients: np.ndarray | None = field(default=None, repr=False)


def _finish(known: KnownSamples, filled: np.ndarray, method: Method,
            coefficients=None) -> RecoveryResult:
    # known samples are passed through untouched
    filled[known.grid.known_array] = known.values
    filled.setflags(write=False)
    return RecoveryResult(filled, method, coefficients)


def recover_proposed(known: KnownSamples, weights: ErasureWeights | None = None) -> RecoveryResult:
    """Recover the missing samples from the derivative of ``s(t) phi(t)``.

    ``s(t) phi(t)`` lies in F_N and is known on the whole grid (it vanishes on
    J^c), so its derivative follows from one DFT/IDFT pair. At a missing
    position phi vanishes and the product rule leaves ``s(n) phi'(n)``.

    If ``weights`` is None they are computed with the cached alpha table.
    """
    grid = known.grid
    if weights is None:
        weights = erasure_weights(grid)
    elif weights.grid != grid:
        raise InvalidArgumentError("erasure weights were built for a different grid")

    s_phi = np.zeros(grid.n_total, dtype=np.complex128)
    s_phi[grid.known_array] = known.values * weights.phi_known
    ds_phi = spectral_derivative(s_phi)

    out = np.zeros(grid.n_total, dtype=np.complex128)
    out[grid.missing_array] = ds_phi[grid.missing_array] * weights.inv_dphi_missing
    return _finish(known, out, Method.PROPOSED)


def ber_coefficients(known: KnownSamples) -> tuple[np.ndarray, np.ndarray]:
    """Fourier coefficients of the missing-sample signal ``s_{J^c}``.

    Returns ``(S_missing, phi_coeffs)``, both length N, where
    ``s_{J^c}(n) = sum_p S_missing[p] exp(2j*pi*p*n/N)`` and ``phi_coeffs`` are
    the coefficients of the erasure polynomial (monic, degree N - P).
    """
    grid = known.grid
    n_total, n_known = grid.n_total, grid.n_known
    n_missing = n_total - n_known

    phi_coeffs = dft(phi_samples_direct(grid)) / n_total
    if abs(phi_coeffs[n_missing] - 1) > MONIC_TOLERANCE:
        raise ConsistencyError(
            f"erasure polynomial is not monic: leading coefficient {phi_coeffs[n_missing]}"
        )

    s_known_coeffs = dft(known.zero_filled()) / n_total
    S = np.zeros(n_total, dtype=np.complex128)
    S[n_known:] = -s_known_coeffs[n_known:]

    # S[q] = -sum_{p=1}^{N-P} phi_{N-P-p} S[q+p], periodic in q
    taps = phi_coeffs[n_missing - 1::-1] if n_missing else phi_coeffs[:0]
    offsets = np.arange(1, n_missing + 1)
    for q in range(n_known - 1, -1, -1):
        S[q] = -np.dot(taps, S[(q + offsets) % n_total])
    return S, phi_coeffs


def recover_ber(known: KnownSamples) -> RecoveryResult:
    """Burst-error-recovery solver (phi from the literal product)."""
    grid = known.grid
    S, _ = ber_coefficients(known)
    s_missing = grid.n_total * idft(S)
    out = np.zeros(grid.n_total, dtype=np.complex128)
    out[grid.missing_array] = s_missing[grid.missing_array]
    return _finish(known, out, Method.BER)


def recover_pinv(known: KnownSamples) -> RecoveryResult:
    """Minimum-norm truncated-SVD solve for the coefficients, then evaluate.

    Singular values below ``eps * sigma_max * P`` are discarded.
    """
    grid = known.grid
    n_total, n_known = grid.n_total, grid.n_known
    p = np.arange(n_known)
    # integer phase reduction keeps the matrix entries accurate for large N
    phase = (np.multiply.outer(grid.known_array, p) % n_total) / n_total
    E = np.exp(2j * np.pi * phase)
    rcond = np.finfo(np.float64).eps * n_known
    coeffs, *_ = np.linalg.lstsq(E, known.values, rcond=rcond)

    out = np.zeros(n_total, dtype=np.complex128)
    if grid.n_missing:
        poly = TrigPolynomial(coeffs, n_total)
        out[grid.missing_array] = eval_trig(poly, grid.missing_array)
    return _finish(known, out, Method.PINV, coeffs)


def smallest_divisor_at_least(n: int, lower: int) -> int:
    for q in range(max(lower, 1), n + 1):
        if n % q == 0:
            return q
    raise InvalidArgumentError(f"no divisor of {n} is >= {lower}")


def extract_coefficients(full_samples, n_coeffs: int) -> np.ndarray:
    """S_p, p < P, from the N samples of a signal with P coefficients.

    Decimates to the smallest divisor Q of N with Q >= P, then one size-Q DFT.
    """
    full = np.asarray(full_samples, dtype=np.complex128)
    n_total = full.size
    if not 1 <= n_coeffs <= n_total:
        raise InvalidArgumentError(f"need 1 <= P <= N, got P={n_coeffs}, N={n_total}")
    q = smallest_divisor_at_least(n_total, n_coeffs)
    return dft(full[:: n_total // q])[:n_coeffs] / q


_SOLVERS = {
    Method.PROPOSED: recover_proposed,
    Method.BER: recover_ber,
    Method.PINV: recover_pinv,
}


def recover(known: KnownSamples, method: Method | str = Method.PROPOSED, *,
            weights: ErasureWeights | None = None,
            coefficients: bool = False) -> RecoveryResult:
    """Dispatch to one of the solvers.

    With ``coefficients=True`` the result also carries S_p (extracted from
    the recovered samples, except for pinv which solves for them directly).
    ``weights`` is only used by the proposed method.
    """
    method = Method(method)
    if method is Method.PROPOSED:
        result = recover_proposed(known, weights)
    else:
        result = _SOLVERS[method](known)
    if not coefficients:
        return RecoveryResult(result.full_samples, method)
    if result.coefficients is None:
        coeffs = extract_coefficients(result.full_samples, known.grid.n_known)
        return RecoveryResult(result.full_samples, method, coeffs)
    return result
