"""Monte-Carlo accuracy runs and flop-count sweeps.

Random streams: every (grid point, trial) pair gets its own
``numpy.random.SeedSequence(seed, spawn_key=(point, trial))`` feeding a PCG64
generator, so results do not depend on execution order or worker count.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import flops
from .erasure import GridPartition
from .errors import InvalidArgumentError
from .recovery import KnownSamples, Method, recover
from .spectral import TrigPolynomial, eval_trig

__all__ = [
    "ACCURACY_COLUMNS",
    "ErrorStats",
    "ExperimentConfig",
    "FLOPS_COLUMNS",
    "FlopsSweepConfig",
    "RNG_ALGORITHM",
    "TrialError",
    "accuracy_csv",
    "crossover_from_reports",
    "flops_csv",
    "gen_gap_grid",
    "gen_jittered_grid",
    "gen_signal",
    "run_accuracy",
    "run_flops_sweep",
    "trial_rng",
]

RNG_ALGORITHM = "numpy PCG64 via SeedSequence(seed, spawn_key=(point, trial))"
ACCURACY_COLUMNS = ("scenario", "method", "N", "P", "trials", "seed",
                    "max_err", "median_err", "mean_err")
FLOPS_COLUMNS = ("method", "N", "P", "flops")
ALL_METHODS = (Method.PROPOSED, Method.BER, Method.PINV)


class TrialError(RuntimeError):
    """A solver failed inside an experiment; the message names the trial."""


def trial_rng(seed: int, point: int, trial: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(point, trial))
    return np.random.Generator(np.random.PCG64(ss))


def gen_signal(n_coeffs: int, n_total: int, rng: np.random.Generator):
    """Random trigonometric polynomial and its samples at t = 0..N-1.

    Real and imaginary parts of each coefficient are independent U[-1, 1].
    Samples come from direct summation, not from an inverse FFT.
    """
    if not 1 <= n_coeffs <= n_total:
        raise InvalidArgumentError(f"need 1 <= P <= N, got P={n_coeffs}, N={n_total}")
    re = rng.uniform(-1.0, 1.0, n_coeffs)
    im = rng.uniform(-1.0, 1.0, n_coeffs)
    poly = TrigPolynomial(re + 1j * im, n_total)
    return poly, eval_trig(poly, np.arange(n_total))


def gen_jittered_grid(n_total: int, a: int, rng: np.random.Generator) -> GridPartition:
    """One known sample per length-``a`` cell, at a uniform offset in the cell."""
    if a < 1 or n_total < 1 or n_total % a:
        raise InvalidArgumentError(f"jittered grid needs a | N, got N={n_total}, a={a}")
    n_known = n_total // a
    known = a * np.arange(n_known) + rng.integers(0, a, n_known)
    return GridPartition.from_known(n_total, known)


def gen_gap_grid(n_total: int, n_known: int) -> GridPartition:
    """Known samples 0..P-1, everything after is missing."""
    if not 1 <= n_known <= n_total:
        raise InvalidArgumentError(f"need 1 <= P <= N, got P={n_known}, N={n_total}")
    return GridPartition.from_known(n_total, range(n_known))


@dataclass(frozen=True)
class ExperimentConfig:
    """Accuracy experiment.

    ``scenario="jittered"`` sweeps ``n_values`` with P = N / a.
    ``scenario="gap"`` fixes N = ``n_values[0]`` and sweeps ``p_values``.
    """

    scenario: str
    n_values: tuple[int, ...]
    a: int = 8
    p_values: tuple[int, ...] = ()
    trials: int = 100
    seed: int = 1
    methods: tuple[Method, ...] = ALL_METHODS
    workers: int = field(default=1, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        object.__setattr__(self, "p_values", tuple(int(p) for p in self.p_values))
        object.__setattr__(self, "methods", tuple(Method(m) for m in self.methods))
        if self.trials < 1:
            raise InvalidArgumentError("trials must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise InvalidArgumentError("seed must be a 64-bit unsigned integer")
        if not self.methods:
            raise InvalidArgumentError("at least one method is required")
        if not self.n_values:
            raise InvalidArgumentError("at least one N is required")
        if self.scenario == "jittered":
            for n in self.n_values:
                if self.a < 1 or n % self.a:
                    raise InvalidArgumentError(f"a={self.a} does not divide N={n}")
        elif self.scenario == "gap":
            if len(self.n_values) != 1:
                raise InvalidArgumentError("gap scenario takes a single N")
            if not self.p_values:
                raise InvalidArgumentError("gap scenario needs P values")
            for p in self.p_values:
                if not 1 <= p <= self.n_values[0]:
                    raise InvalidArgumentError(f"P={p} outside 1..{self.n_values[0]}")
        else:
            raise InvalidArgumentError(f"unknown scenario {self.scenario!r}")

    def points(self) -> list[tuple[int, int]]:
        if self.scenario == "jittered":
            return [(n, n // self.a) for n in self.n_values]
        return [(self.n_values[0], p) for p in self.p_values]


@dataclass(frozen=True)
class ErrorStats:
    """Error summary for one (method, N, P) over all trials.

    ``max_error`` is the largest |recovered - truth| over trials and missing
    samples; median and mean are taken over the per-trial maxima.
    """

    scenario: str
    method: Method
    n_total: int
    n_known: int
    trials: int
    seed: int
    max_error: float
    median_error: float
    mean_error: float


def _run_trial(config: ExperimentConfig, point: int, trial: int) -> list[float]:
    n_total, n_known = config.points()[point]
    rng = trial_rng(config.seed, point, trial)
    if config.scenario == "jittered":
        grid = gen_jittered_grid(n_total, config.a, rng)
    else:
        grid = gen_gap_grid(n_total, n_known)
    _, truth = gen_signal(n_known, n_total, rng)
    known = KnownSamples.from_full(grid, truth)
    errors = []
    for method in config.methods:
        try:
            result = recover(known, method)
        except Exception as exc:
            raise TrialError(
                f"{method.value} failed at N={n_total}, P={n_known}, "
                f"trial={trial}, seed={config.seed}: {exc}"
            ) from exc
        missing = grid.missing_array
        err = np.abs(result.full_samples[missing] - truth[missing])
        errors.append(float(err.max()) if err.size else 0.0)
    return errors


def _run_trial_args(args):
    return _run_trial(*args)


def run_accuracy(config: ExperimentConfig) -> list[ErrorStats]:
    jobs = [(config, i, t) for i in range(len(config.points())) for t in range(config.trials)]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_run_trial_args, jobs, chunksize=8))
    else:
        results = [_run_trial(*job) for job in jobs]

    stats = []
    for i, (n_total, n_known) in enumerate(config.points()):
        per_trial = np.array(results[i * config.trials:(i + 1) * config.trials])
        for j, method in enumerate(config.methods):
            col = per_trial[:, j]
            stats.append(ErrorStats(
                scenario=config.scenario, method=method,
                n_total=n_total, n_known=n_known,
                trials=config.trials, seed=config.seed,
                max_error=float(col.max()),
                median_error=float(np.median(col)),
                mean_error=float(col.mean()),
            ))
    return stats


def _fmt(x: float) -> str:
    return repr(float(x))


def accuracy_csv(stats: Iterable[ErrorStats]) -> str:
    """CSV text; the first line is a ``#`` comment naming the RNG."""
    buf = io.StringIO()
    buf.write(f"# rng: {RNG_ALGORITHM}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ACCURACY_COLUMNS)
    for s in stats:
        w.writerow([s.scenario, s.method.value, s.n_total, s.n_known, s.trials, s.seed,
                    _fmt(s.max_error), _fmt(s.median_error), _fmt(s.mean_error)])
    return buf.getvalue()


@dataclass(frozen=True)
class FlopsSweepConfig:
    """``sweep="n"``: P = N / a for each N. ``sweep="p"``: P = 1..N-1 at each N."""

    sweep: str
    n_values: tuple[int, ...]
    a: int = 8
    methods: tuple[flops.CostMethod, ...] | None = None

    def __post_init__(self):
        if self.sweep not in ("n", "p"):
            raise InvalidArgumentError(f"unknown sweep {self.sweep!r}")
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        if not self.n_values or min(self.n_values) < 2:
            raise InvalidArgumentError("N values must be >= 2")
        if self.methods is None:
            default = ("ber", "prop_a", "prop_b") if self.sweep == "n" else ("ber", "prop_a")
            object.__setattr__(self, "methods", default)
        object.__setattr__(self, "methods", tuple(flops.CostMethod(m) for m in self.methods))
        if self.sweep == "n":
            for n in self.n_values:
                if self.a < 1 or n % self.a or n // self.a < 1:
                    raise InvalidArgumentError(f"a={self.a} does not divide N={n}")

    def points(self) -> list[tuple[int, int]]:
        if self.sweep == "n":
            return [(n, n // self.a) for n in self.n_values]
        return [(n, p) for n in self.n_values for p in range(1, n)]


def _cost(method: flops.CostMethod, n_total: int, n_known: int) -> float | None:
    if method is flops.CostMethod.BER:
        return flops.ber_flops(n_total, n_known)
    if method is flops.CostMethod.PROP_A:
        return flops.proposed_flops(n_total, n_known, "A")
    if method is flops.CostMethod.PROP_B:
        return flops.proposed_flops(n_total, n_known, "B")
    if method is flops.CostMethod.PROP_NO_WEIGHTS:
        return flops.proposed_flops(n_total, n_known, "no_weights")
    if n_total % n_known:
        return None
    return flops.zp_fft_flops(n_total, n_known)


def run_flops_sweep(config: FlopsSweepConfig) -> list[flops.CostReport]:
    """Cost model over the sweep lattice; ZP-FFT rows are skipped where P does not divide N."""
    reports = []
    for n_total, n_known in config.points():
        for method in config.methods:
            cost = _cost(method, n_total, n_known)
            if cost is not None:
                reports.append(flops.CostReport(method, n_total, n_known, cost))
    return reports


def flops_csv(reports: Iterable[flops.CostReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FLOPS_COLUMNS)
    for r in reports:
        w.writerow([r.method.value, r.n_total, r.n_known, _fmt(r.flops)])
    return buf.getvalue()


def crossover_from_reports(reports: Sequence[flops.CostReport], n_total: int) -> flops.Crossover:
    """Recompute the BER / prop A crossover summary from P-sweep rows."""
    by_p: dict[int, dict[flops.CostMethod, float]] = {}
    for r in reports:
        if r.n_total == n_total:
            by_p.setdefault(r.n_known, {})[r.method] = r.flops
    ps = sorted(by_p)
    ber = [by_p[p][flops.CostMethod.BER] for p in ps]
    prop = [by_p[p][flops.CostMethod.PROP_A] for p in ps]
    wins = [b < a for b, a in zip(ber, prop)]
    low = 0
    while low < len(wins) and wins[low]:
        low += 1
    high = len(wins)
    while high > 0 and wins[high - 1]:
        high -= 1
    ratios = [b / a for b, a in zip(ber, prop)]
    i = max(range(len(ratios)), key=ratios.__getitem__)
    return flops.Crossover(
        low_P=ps[low - 1] if low else 0,
        high_P=ps[high] if high < len(ps) else n_total,
        max_ratio=ratios[i],
        argmax_P=ps[i],
    )

