"""Transforms and convolutions on length-N complex vectors.

Conventions used throughout the package:

* ``dft`` is unscaled, ``V_k = sum_n v_n exp(-2j*pi*n*k/N)``.
* ``idft`` carries the ``1/N`` factor.

With these, the samples ``v(n)`` of ``v(t) = sum_p V_p exp(2j*pi*p*t/N)``
satisfy ``dft(v) = N * V``.

Transforms are delegated to :mod:`numpy.fft` (pocketfft), which handles any
length in O(N log N), using Bluestein's algorithm for large prime factors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError

__all__ = [
    "TrigPolynomial",
    "as_vector",
    "cyclic_convolve",
    "cyclic_convolve_direct",
    "derivative_weights",
    "dft",
    "eval_trig",
    "idft",
    "spectral_derivative",
]


def as_vector(v, name: str = "v") -> np.ndarray:
    """Coerce ``v`` to a finite, non-empty, 1-D complex128 array."""
    arr = np.asarray(v, dtype=np.complex128)
    if arr.ndim != 1:
        raise InvalidArgumentError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise InvalidArgumentError(f"{name} must not be empty")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{name} contains NaN or Inf")
    return arr


def dft(v) -> np.ndarray:
    """Unscaled forward DFT of any length."""
    return np.fft.fft(as_vector(v))


def idft(V) -> np.ndarray:
    """Inverse DFT including the 1/N factor."""
    return np.fft.ifft(as_vector(V, "V"))


def _check_pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = as_vector(a, "a")
    b = as_vector(b, "b")
    if a.size != b.size:
        raise InvalidArgumentError(f"length mismatch: {a.size} != {b.size}")
    return a, b


def cyclic_convolve(a, b) -> np.ndarray:
    """Cyclic convolution ``c_n = sum_p a_p b_{(n-p) mod N}`` through the FFT."""
    a, b = _check_pair(a, b)
    return idft(dft(a) * dft(b))


def cyclic_convolve_direct(a, b) -> np.ndarray:
    """Same as :func:`cyclic_convolve` but by direct O(N^2) summation.

    The shifted copies of ``b`` are built by indexing only, so no transform is
    involved; this is the reference path for tests and for the
    multiplication-free evaluation of indicator convolutions.
    """
    a, b = _check_pair(a, b)
    n = a.size
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return b[idx] @ a


def derivative_weights(n: int) -> np.ndarray:
    """Frequency-domain differentiation weights ``j*2*pi*p/N``, p = 0..N-1."""
    return 2j * np.pi * np.arange(n) / n


def spectral_derivative(v) -> np.ndarray:
    """Samples of v'(t) at t = 0..N-1 from samples of v(t) in F_N.

    F_N is the span of exp(2j*pi*p*t/N) for p = 0..N-1; note the one-sided
    frequency range, so this is *not* the symmetric-spectrum derivative.
    """
    v = as_vector(v)
    return idft(dft(v) * derivative_weights(v.size))


@dataclass(frozen=True)
class TrigPolynomial:
    """``s(t) = sum_{p<P} S_p exp(2j*pi*p*t/N)`` with period ``N >= P``."""

    coefficients: np.ndarray
    period: int

    def __post_init__(self):
        coeffs = as_vector(self.coefficients, "coefficients")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)
        if int(self.period) != self.period or self.period < coeffs.size:
            raise InvalidArgumentError(
                f"period must be an integer >= {coeffs.size}, got {self.period}"
            )
        object.__setattr__(self, "period", int(self.period))

    @property
    def n_coefficients(self) -> int:
        return self.coefficients.size

    def __call__(self, t):
        return eval_trig(self, t)


def eval_trig(poly: TrigPolynomial, t):
    """Evaluate ``poly`` at real ``t`` by direct summation.

    ``t`` may be a scalar or an array; the result has the same shape.
    """
    t_arr = np.asarray(t, dtype=np.float64)
    p = np.arange(poly.n_coefficients)
    phase = np.exp(2j * np.pi * np.multiply.outer(t_arr, p) / poly.period)
    out = phase @ poly.coefficients
    if t_arr.ndim == 0:
        return complex(out)
    return out
