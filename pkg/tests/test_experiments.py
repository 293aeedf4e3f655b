import csv
import io

import numpy as np
import pytest
from scipy import stats

from erasurefft import experiments
from erasurefft.errors import InvalidArgumentError
from erasurefft.experiments import (
    ACCURACY_COLUMNS,
    ExperimentConfig,
    FlopsSweepConfig,
    TrialError,
    accuracy_csv,
    crossover_from_reports,
    flops_csv,
    gen_gap_grid,
    gen_jittered_grid,
    gen_signal,
    run_accuracy,
    run_flops_sweep,
)
from erasurefft.flops import CostMethod, crossover_scan
from erasurefft.recovery import Method


def _by_method(rows):
    return {r.method: r for r in rows}


def test_gen_signal_constant():
    poly, samples = gen_signal(1, 16, np.random.default_rng(0))
    assert poly.n_coefficients == 1
    np.testing.assert_allclose(samples, samples[0])
    assert np.all(np.abs(samples) <= np.sqrt(2))


def test_gen_signal_deterministic():
    a, _ = gen_signal(8, 64, np.random.default_rng(99))
    b, _ = gen_signal(8, 64, np.random.default_rng(99))
    np.testing.assert_array_equal(a.coefficients, b.coefficients)


def test_gen_signal_moments():
    rng = np.random.default_rng(5)
    # 10^5 draws; samples are not needed, so keep N small per call
    coeffs = np.concatenate([gen_signal(50, 50, rng)[0].coefficients for _ in range(2000)])
    assert abs(coeffs.real.mean()) <= 0.02
    assert abs(coeffs.imag.mean()) <= 0.02
    assert coeffs.real.var() == pytest.approx(1 / 3, rel=0.02)
    assert coeffs.imag.var() == pytest.approx(1 / 3, rel=0.02)


def test_gen_signal_samples_match_coefficients():
    poly, samples = gen_signal(5, 40, np.random.default_rng(1))
    spectrum = np.fft.fft(samples) / 40
    np.testing.assert_allclose(spectrum[:5], poly.coefficients, atol=1e-13)
    np.testing.assert_allclose(spectrum[5:], 0, atol=1e-13)


def test_jittered_grid_shapes():
    g = gen_jittered_grid(32, 1, np.random.default_rng(0))
    assert g.known == tuple(range(32))
    g = gen_jittered_grid(64, 8, np.random.default_rng(0))
    assert g.n_known == 8
    assert [t // 8 for t in g.known] == list(range(8))
    with pytest.raises(InvalidArgumentError):
        gen_jittered_grid(60, 8, np.random.default_rng(0))


def test_jittered_offsets_uniform():
    rng = np.random.default_rng(11)
    offsets = np.concatenate([np.array(gen_jittered_grid(64, 8, rng).known) % 8
                              for _ in range(1250)])
    assert offsets.size == 10_000
    counts = np.bincount(offsets, minlength=8)
    assert stats.chisquare(counts).pvalue > 0.05


def test_gap_grid():
    assert gen_gap_grid(64, 64).n_missing == 0
    g = gen_gap_grid(64, 16)
    assert g.missing == tuple(range(16, 64))
    np.testing.assert_array_equal(g.known_indicator() + g.missing_indicator(), np.ones(64))


@pytest.mark.slow
def test_jittered_accuracy_512():
    cfg = ExperimentConfig("jittered", (512,), a=8, trials=100, seed=3, methods=("proposed",))
    (row,) = run_accuracy(cfg)
    assert row.max_error <= 1e-6
    assert 0 <= row.median_error <= row.max_error


def test_gap_accuracy_p8():
    cfg = ExperimentConfig("gap", (64,), p_values=(8,), trials=100, seed=3)
    rows = _by_method(run_accuracy(cfg))
    errs = [rows[m].max_error for m in Method]
    assert max(errs) <= 1e-6
    assert max(errs) / min(errs) <= 100


def test_no_missing_gives_zero_error():
    cfg = ExperimentConfig("jittered", (16, 32), a=1, trials=3, methods=("proposed",))
    assert all(r.max_error == 0.0 for r in run_accuracy(cfg))


def test_accuracy_csv_is_deterministic():
    cfg = ExperimentConfig("jittered", (32, 64), a=4, trials=6, seed=42)
    assert accuracy_csv(run_accuracy(cfg)) == accuracy_csv(run_accuracy(cfg))


def test_parallel_matches_serial():
    cfg = ExperimentConfig("jittered", (32, 64), a=4, trials=8, seed=9)
    par = ExperimentConfig("jittered", (32, 64), a=4, trials=8, seed=9, workers=2)
    assert accuracy_csv(run_accuracy(cfg)) == accuracy_csv(run_accuracy(par))


def test_seed_changes_results():
    a = ExperimentConfig("jittered", (64,), trials=4, seed=1)
    b = ExperimentConfig("jittered", (64,), trials=4, seed=2)
    assert accuracy_csv(run_accuracy(a)) != accuracy_csv(run_accuracy(b))


def test_accuracy_csv_schema():
    cfg = ExperimentConfig("gap", (64,), p_values=(4, 8), trials=2)
    text = accuracy_csv(run_accuracy(cfg))
    lines = text.splitlines()
    assert lines[0].startswith("# rng:")
    rows = list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))
    assert tuple(rows[0]) == ACCURACY_COLUMNS
    assert len(rows) == 6
    assert {r["method"] for r in rows} == {"proposed", "ber", "pinv"}
    float(rows[0]["max_err"])


def test_errors_only_on_missing_samples():
    rng = experiments.trial_rng(4, 0, 0)
    grid = gen_jittered_grid(128, 8, rng)
    _, truth = gen_signal(16, 128, rng)
    from erasurefft.recovery import KnownSamples, recover
    known = KnownSamples.from_full(grid, truth)
    for m in Method:
        err = np.abs(recover(known, m).full_samples - truth)
        assert np.all(err[grid.known_array] == 0)


def test_trial_failure_is_annotated(monkeypatch):
    def boom(known, method):
        raise ValueError("solver exploded")
    monkeypatch.setattr(experiments, "recover", boom)
    cfg = ExperimentConfig("jittered", (32,), trials=2, seed=77, methods=("ber",))
    with pytest.raises(TrialError, match=r"ber failed at N=32, P=4, trial=0, seed=77"):
        run_accuracy(cfg)


def test_config_validation():
    with pytest.raises(InvalidArgumentError):
        ExperimentConfig("jittered", (60,), a=8)
    with pytest.raises(InvalidArgumentError):
        ExperimentConfig("gap", (64,), p_values=(65,))
    with pytest.raises(InvalidArgumentError):
        ExperimentConfig("gap", (64, 128), p_values=(4,))
    with pytest.raises(InvalidArgumentError):
        ExperimentConfig("jittered", (64,), trials=0)
    with pytest.raises(InvalidArgumentError):
        ExperimentConfig("spiral", (64,))
    with pytest.raises(ValueError):
        ExperimentConfig("jittered", (64,), methods=("lagrange",))


@pytest.mark.slow
def test_jittered_error_grows_with_n():
    ns = tuple(2**k for k in range(4, 11))
    cfg = ExperimentConfig("jittered", ns, a=8, trials=20, seed=5, methods=("proposed",))
    rows = run_accuracy(cfg)
    rho, pvalue = stats.spearmanr([r.n_total for r in rows], [r.mean_error for r in rows])
    assert rho > 0 and pvalue < 0.05


def test_flops_n_sweep_methods():
    reports = run_flops_sweep(FlopsSweepConfig("n", tuple(2**k for k in range(3, 15))))
    assert {r.method for r in reports} == {CostMethod.BER, CostMethod.PROP_A, CostMethod.PROP_B}
    table = {}
    for r in reports:
        table.setdefault(r.n_total, {})[r.method] = r.flops
    b_better = [table[n][CostMethod.PROP_B] < table[n][CostMethod.PROP_A] for n in sorted(table)]
    assert b_better[0] and not b_better[-1]
    assert sum(x != y for x, y in zip(b_better, b_better[1:])) == 1


def test_flops_p_sweep_reproduces_crossover():
    reports = run_flops_sweep(FlopsSweepConfig("p", (1024,)))
    assert len(reports) == 2 * 1023
    assert crossover_from_reports(reports, 1024) == crossover_scan(1024)


def test_flops_sweep_skips_inapplicable_zp_fft():
    reports = run_flops_sweep(FlopsSweepConfig("p", (12,), methods=("zp_fft",)))
    assert sorted(r.n_known for r in reports) == [1, 2, 3, 4, 6]


def test_flops_csv():
    text = flops_csv(run_flops_sweep(FlopsSweepConfig("n", (64, 128))))
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == ["method", "N", "P", "flops"]
    assert len(rows) == 6
