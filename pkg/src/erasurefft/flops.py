"""Analytic flop counts for the solvers.

Costs are in the usual signal-processing convention: a complex addition is 2
flops, a complex multiplication 6, a complex exponential 7 and a size-N
FFT/IFFT ``5 N log2 N``. ``log2`` is evaluated as a real number, so counts for
non-power-of-two N are smooth model values rather than instruction counts.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InvalidArgumentError

__all__ = [
    "CostMethod",
    "CostReport",
    "Crossover",
    "FLOP_MODEL",
    "FlopModel",
    "ber_flops",
    "ber_flops_itemized",
    "crossover_scan",
    "proposed_flops",
    "proposed_flops_itemized",
    "zp_fft_flops",
]


@dataclass(frozen=True)
class FlopModel:
    real_add: int = 1
    complex_add: int = 2
    real_mul: int = 1
    complex_mul: int = 6
    complex_exp: int = 7

    @staticmethod
    def fft_of(n: float) -> float:
        return 5 * n * math.log2(n)


FLOP_MODEL = FlopModel()


class CostMethod(str, enum.Enum):
    BER = "ber"
    PROP_A = "prop_a"
    PROP_B = "prop_b"
    PROP_NO_WEIGHTS = "prop_no_weights"
    ZP_FFT = "zp_fft"


@dataclass(frozen=True)
class CostReport:
    method: CostMethod
    n_total: int
    n_known: int
    flops: float


def _check(n_total: int, n_known: int) -> None:
    if n_total < 2 or not 1 <= n_known <= n_total:
        raise InvalidArgumentError(f"need N >= 2 and 1 <= P <= N, got N={n_total}, P={n_known}")


def ber_flops_itemized(n_total: int, n_known: int) -> dict[str, float]:
    _check(n_total, n_known)
    N, P = n_total, n_known
    fft = FLOP_MODEL.fft_of(N)
    return {
        "phi_samples": 10 * P * (N - P) - 11 * P + 3,
        "phi_dft": fft,
        "known_dft": fft,
        "recursion": 8 * P * (N - P) - P,
        "idft": fft,
    }


def ber_flops(n_total: int, n_known: int) -> float:
    _check(n_total, n_known)
    N, P = n_total, n_known
    return 18 * P * (N - P) - 12 * P + 3 + 15 * N * math.log2(N)


def proposed_flops_itemized(n_total: int, n_known: int, variant: str = "A") -> dict[str, float]:
    """Per-block counts of the proposed method.

    Variant ``"A"`` builds beta with two FFTs, ``"B"`` evaluates the indicator
    convolution directly (additions only, N - P per output sample) and
    ``"no_weights"`` assumes phi on J is precomputed for a fixed grid.
    """
    _check(n_total, n_known)
    N, P = n_total, n_known
    fft = FLOP_MODEL.fft_of(N)
    blocks = {
        "beta": 2 * fft + 8 * N - 1,
        "phi_known": 18 * P - 3,
        "derivative": 2 * fft + 4 * N - 2,
        "inv_dphi_product": 20 * (N - P) - 4,
    }
    if variant == "A":
        return blocks
    if variant == "B":
        blocks["beta"] = FLOP_MODEL.complex_add * N * (N - P)
        return blocks
    if variant == "no_weights":
        del blocks["beta"], blocks["phi_known"]
        return blocks
    raise InvalidArgumentError(f"unknown variant {variant!r}; expected 'A', 'B' or 'no_weights'")


def proposed_flops(n_total: int, n_known: int, variant: str = "A") -> float:
    blocks = proposed_flops_itemized(n_total, n_known, variant)
    if variant == "A":
        # closed form of the four blocks
        N, P = n_total, n_known
        return 20 * N * math.log2(N) + 32 * N - 2 * P - 10
    return sum(blocks.values())


def zp_fft_flops(n_total: int, n_known: int) -> float:
    """Zero-padding FFT interpolation from a regular subgrid of spacing N/P.

    Size-P FFT, zero padding, size-N IFFT and one complex scaling pass.
    """
    _check(n_total, n_known)
    if n_total % n_known:
        raise InvalidArgumentError(f"ZP-FFT needs P | N, got N={n_total}, P={n_known}")
    N, P = n_total, n_known
    return FLOP_MODEL.fft_of(P) + FLOP_MODEL.fft_of(N) + FLOP_MODEL.complex_mul * N


@dataclass(frozen=True)
class Crossover:
    low_P: int
    high_P: int
    max_ratio: float
    argmax_P: int


def crossover_scan(n_total: int) -> Crossover:
    """Where BER is cheaper than proposed variant A, scanning P = 1..N-1.

    ``low_P`` is the last P of the initial run where BER wins (0 if BER never
    wins at P = 1); ``high_P`` the first P of the final run (N if BER does not
    win at P = N-1). ``max_ratio`` is the largest BER / prop A ratio.
    """
    if n_total < 16:
        raise InvalidArgumentError(f"crossover scan needs N >= 16, got {n_total}")
    ps = range(1, n_total)
    ber_wins = [ber_flops(n_total, p) < proposed_flops(n_total, p, "A") for p in ps]

    low = 0
    while low < len(ber_wins) and ber_wins[low]:
        low += 1
    high = len(ber_wins)
    while high > 0 and ber_wins[high - 1]:
        high -= 1

    ratios = [ber_flops(n_total, p) / proposed_flops(n_total, p, "A") for p in ps]
    i = max(range(len(ratios)), key=ratios.__getitem__)
    return Crossover(low_P=low, high_P=high + 1, max_ratio=ratios[i], argmax_P=i + 1)
