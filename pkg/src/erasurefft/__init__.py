"""FFT-based recovery of missing samples of periodic band-limited signals."""

from .erasure import (
    AlphaTable,
    ErasureWeights,
    GridPartition,
    alpha_table,
    beta,
    build_alpha_table,
    erasure_phi_direct,
    erasure_phi_prime_direct,
    erasure_weights,
    erasure_weights_fast,
)
from .errors import ConsistencyError, InvalidArgumentError, NumericOverflowError
from .flops import ber_flops, crossover_scan, proposed_flops, zp_fft_flops
from .recovery import (
    KnownSamples,
    Method,
    RecoveryResult,
    extract_coefficients,
    recover,
    recover_ber,
    recover_pinv,
    recover_proposed,
)
from .spectral import (
    TrigPolynomial,
    cyclic_convolve,
    cyclic_convolve_direct,
    dft,
    eval_trig,
    idft,
    spectral_derivative,
)

__version__ = "0.1.0"
