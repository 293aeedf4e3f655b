import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from erasurefft.errors import InvalidArgumentError
from erasurefft.spectral import (
    TrigPolynomial,
    cyclic_convolve,
    cyclic_convolve_direct,
    dft,
    eval_trig,
    idft,
    spectral_derivative,
)

from conftest import direct_cyclic, direct_dft, random_complex, rel_err

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
complex_vectors = st.lists(st.complex_numbers(max_magnitude=1e3, allow_nan=False,
                                              allow_infinity=False),
                           min_size=1, max_size=64)


def test_dft_delta_and_constant():
    np.testing.assert_allclose(dft([1, 0, 0, 0]), [1, 1, 1, 1])
    c = 2.5 - 1j
    np.testing.assert_allclose(dft([c, c]), [2 * c, 0], atol=1e-15)


def test_dft_matches_direct_sum(rng):
    v = random_complex(rng, 12)
    assert rel_err(dft(v), direct_dft(v)) <= 1e-12


@pytest.mark.parametrize("n", [7, 31, 97, 257])
def test_prime_lengths_match_direct_sum(rng, n):
    v = random_complex(rng, n)
    assert rel_err(dft(v), direct_dft(v)) <= 1e-12


def test_idft_examples(rng):
    c = 0.3 + 0.7j
    np.testing.assert_allclose(idft([2 * c, 0]), [c, c])
    np.testing.assert_allclose(idft([1, 1, 1, 1]), [1, 0, 0, 0], atol=1e-16)
    v = random_complex(rng, 7)
    assert rel_err(idft(dft(v)), v) <= 1e-12


@pytest.mark.parametrize("fn", [dft, idft, spectral_derivative])
def test_empty_input_rejected(fn):
    with pytest.raises(InvalidArgumentError):
        fn([])


def test_non_finite_rejected():
    with pytest.raises(InvalidArgumentError):
        dft([1.0, np.nan])


@pytest.mark.parametrize("n", range(1, 65))
def test_round_trip_all_lengths(rng, n):
    v = random_complex(rng, n)
    assert rel_err(idft(dft(v)), v) <= 1e-12


@given(complex_vectors)
def test_parseval(v):
    v = np.array(v)
    energy = np.sum(np.abs(v) ** 2)
    spec = np.sum(np.abs(dft(v)) ** 2) / v.size
    assert abs(energy - spec) <= 1e-10 * max(energy, 1e-300)


@given(st.integers(1, 64), st.integers(0, 2**32 - 1), finite, finite)
@settings(max_examples=50)
def test_linearity(n, seed, a, b):
    rng = np.random.default_rng(seed)
    x, y = random_complex(rng, n), random_complex(rng, n)
    for fn in (dft, spectral_derivative):
        lhs = fn(a * x + b * y)
        rhs = a * fn(x) + b * fn(y)
        assert np.max(np.abs(lhs - rhs)) <= 1e-10 * (1 + np.max(np.abs(rhs)))


def test_convolution_examples(rng):
    b = random_complex(rng, 5)
    delta = np.eye(5)[0]
    for conv in (cyclic_convolve, cyclic_convolve_direct):
        np.testing.assert_allclose(conv(delta, b), b, atol=1e-14)
        x, y = 1.5 - 2j, 0.25 + 1j
        np.testing.assert_allclose(conv([1, 1], [x, y]), [x + y, x + y], atol=1e-15)
        a9, b9 = random_complex(rng, 9), random_complex(rng, 9)
        assert rel_err(conv(a9, b9), direct_cyclic(a9, b9)) <= 1e-12


@pytest.mark.parametrize("n", [1, 2, 3, 16, 31, 64])
def test_fft_and_direct_convolution_agree(rng, n):
    a, b = random_complex(rng, n), random_complex(rng, n)
    assert rel_err(cyclic_convolve(a, b), cyclic_convolve_direct(a, b)) <= 1e-11


@pytest.mark.parametrize("conv", [cyclic_convolve, cyclic_convolve_direct])
def test_convolution_length_mismatch(conv):
    with pytest.raises(InvalidArgumentError):
        conv([1, 2], [1, 2, 3])


def test_derivative_of_constant_is_zero():
    for n in (1, 2, 5, 16, 63):
        d = spectral_derivative(np.full(n, 3.25))
        assert np.max(np.abs(d)) <= 1e-13


def test_derivative_single_tone():
    n = np.arange(8)
    v = np.exp(2j * np.pi * n / 8)
    want = (2j * np.pi / 8) * v
    assert np.max(np.abs(spectral_derivative(v) - want)) <= 1e-12


def test_derivative_matches_analytic(poly16):
    n_total = poly16.period
    t = np.arange(n_total)
    samples = np.array([eval_trig(poly16, k) for k in t])
    # term-by-term derivative of sum_p V_p exp(2j pi p t / N)
    want = np.array([
        sum(V * 2j * np.pi * p / n_total * np.exp(2j * np.pi * p * k / n_total)
            for p, V in enumerate(poly16.coefficients))
        for k in t
    ])
    assert rel_err(spectral_derivative(samples), want) <= 1e-10


def test_eval_trig_examples():
    c = -0.5 + 2j
    const = TrigPolynomial([c], 5)
    for t in (0.0, 1.3, -7.25, 1e3):
        assert eval_trig(const, t) == pytest.approx(c)
    two = TrigPolynomial([1, 1], 4)
    assert eval_trig(two, 1) == pytest.approx(1 + 1j, abs=1e-15)


def test_eval_trig_zero_padding_identity(rng):
    coeffs = random_complex(rng, 5)
    poly = TrigPolynomial(coeffs, 12)
    padded = np.concatenate([coeffs, np.zeros(7)])
    grid_values = eval_trig(poly, np.arange(12))
    assert rel_err(grid_values, 12 * idft(padded)) <= 1e-12


def test_eval_trig_is_periodic(rng):
    poly = TrigPolynomial(random_complex(rng, 4), 9)
    assert eval_trig(poly, 2.3 + 9) == pytest.approx(eval_trig(poly, 2.3), abs=1e-12)


def test_trig_polynomial_validation():
    with pytest.raises(InvalidArgumentError):
        TrigPolynomial([1, 2, 3], 2)
    with pytest.raises(InvalidArgumentError):
        TrigPolynomial([], 2)
