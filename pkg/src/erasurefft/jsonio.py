"""JSON documents for problem instances and recovery results.

Instance::

    {"n": N, "p": P, "known": [{"index": n, "re": x, "im": y}, ...]}

Result::

    {"method": "proposed", "samples": [{"index": n, "re": x, "im": y}, ...],
     "coefficients": [{"index": p, "re": x, "im": y}, ...]}   # optional

Indices are 0-based. Floats are written with ``repr`` precision so a
document round-trips bit-for-bit.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidArgumentError
from .recovery import KnownSamples, RecoveryResult

__all__ = ["instance_from_json", "instance_to_json", "result_from_json", "result_to_json"]


def _entries(values) -> list[dict]:
    return [{"index": i, "re": float(v.real), "im": float(v.imag)} for i, v in enumerate(values)]


def instance_to_json(known: KnownSamples) -> dict:
    return {
        "n": known.grid.n_total,
        "p": known.grid.n_known,
        "known": [
            {"index": int(n), "re": float(v.real), "im": float(v.imag)}
            for n, v in zip(known.grid.known, known.values)
        ],
    }


def instance_from_json(doc: dict) -> KnownSamples:
    """Parse and validate an instance document.

    Raises :class:`InvalidArgumentError` for any schema violation, naming the
    offending index for duplicates.
    """
    if not isinstance(doc, dict):
        raise InvalidArgumentError("instance must be a JSON object")
    try:
        n_total = doc["n"]
        entries = doc["known"]
    except KeyError as exc:
        raise InvalidArgumentError(f"instance is missing field {exc.args[0]!r}") from None
    if not isinstance(n_total, int) or isinstance(n_total, bool) or n_total < 1:
        raise InvalidArgumentError(f"'n' must be a positive integer, got {n_total!r}")
    if not isinstance(entries, list):
        raise InvalidArgumentError("'known' must be a list")

    samples: dict[int, complex] = {}
    for e in entries:
        try:
            idx, re, im = e["index"], e["re"], e["im"]
        except (KeyError, TypeError):
            raise InvalidArgumentError(f"malformed known entry {e!r}") from None
        if not isinstance(idx, int) or isinstance(idx, bool):
            raise InvalidArgumentError(f"index must be an integer, got {idx!r}")
        if not 0 <= idx < n_total:
            raise InvalidArgumentError(f"index {idx} out of range 0..{n_total - 1}")
        if idx in samples:
            raise InvalidArgumentError(f"duplicate known index {idx}")
        try:
            samples[idx] = complex(float(re), float(im))
        except (TypeError, ValueError):
            raise InvalidArgumentError(f"non-numeric value at index {idx}") from None

    p = doc.get("p", len(samples))
    if p != len(samples):
        raise InvalidArgumentError(f"'p' is {p} but {len(samples)} known samples were given")
    if not samples:
        raise InvalidArgumentError("at least one known sample is required")
    return KnownSamples.from_mapping(n_total, samples)


def result_to_json(result: RecoveryResult) -> dict:
    doc = {"method": result.method.value, "samples": _entries(result.full_samples)}
    if result.coefficients is not None:
        doc["coefficients"] = _entries(result.coefficients)
    return doc


def result_from_json(doc: dict) -> tuple[str, np.ndarray, np.ndarray | None]:
    """(method, samples, coefficients or None) from a result document."""

    def values(entries):
        out = np.zeros(len(entries), dtype=np.complex128)
        for e in entries:
            out[e["index"]] = complex(e["re"], e["im"])
        return out

    coeffs = doc.get("coefficients")
    return doc["method"], values(doc["samples"]), None if coeffs is None else values(coeffs)
