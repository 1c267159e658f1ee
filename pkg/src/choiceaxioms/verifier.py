"""Exhaustive verification of the characterization results on small universes.

Every correspondence in an index range is reduced to its predicate pattern
by the compiled kernel; each claim is a condition on patterns. Ranges can be
split into shards, and shard histograms merge by addition.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import _kernel as K
from .core import MAX_ENUMERATION, dataset_to_dict
from .errors import UniverseTooLarge
from .generators import count_correspondences, from_index, index_to_digits

log = logging.getLogger(__name__)

MAX_COUNTEREXAMPLES = 10
DEFAULT_MAX_N = 4
_CHUNK = 1 << 62


def _has(p: int, *flags: int) -> bool:
    return all(p & f for f in flags)


@dataclass(frozen=True)
class Claim:
    name: str
    statement: str
    fails: Callable[[int], bool]


CLAIMS: dict[str, Claim] = {
    c.name: c
    for c in [
        Claim(
            "prop-tau",
            "tau holds iff the strict revealed preference is a preference relation",
            lambda p: _has(p, K.TAU) != _has(p, K.PREF),
        ),
        Claim(
            "prop-rho",
            "rho holds iff the strict revealed preference rationalizes c",
            lambda p: _has(p, K.RHO) != _has(p, K.RAT),
        ),
        Claim(
            "theorem1",
            "tau and rho hold iff the strict revealed preference is a preference that rationalizes c",
            lambda p: _has(p, K.TAU, K.RHO) != _has(p, K.PREF, K.RAT),
        ),
        Claim(
            "lemma1",
            "the V-axiom holds iff the strict revealed preference rationalizes c; "
            "then weak revealed preference equals V",
            lambda p: _has(p, K.VAX) != _has(p, K.RAT) or (_has(p, K.VAX) and not _has(p, K.WEAKV)),
        ),
        Claim(
            "warp",
            "WARP holds iff tau and rho hold",
            lambda p: _has(p, K.WARP) != _has(p, K.TAU, K.RHO),
        ),
        Claim(
            "delta",
            "for normal c, tau implies delta",
            lambda p: _has(p, K.VAX, K.TAU) and not _has(p, K.DELTA),
        ),
    ]
}


def _converse_delta(p: int) -> bool:
    # normal, delta holds, tau fails
    return _has(p, K.VAX, K.DELTA) and not _has(p, K.TAU)


@dataclass
class ScanResult:
    n: int
    lo: int
    hi: int
    histogram: np.ndarray
    examples: dict[int, list[int]]
    scanned: int

    @property
    def complete(self) -> bool:
        return self.scanned == self.hi - self.lo

    def count(self, pred: Callable[[int], bool]) -> int:
        return int(sum(self.histogram[p] for p in range(K.N_PATTERNS) if pred(p)))

    def first(self, pred: Callable[[int], bool], limit: int) -> list[int]:
        found = sorted(i for p, idx in self.examples.items() if pred(p) for i in idx)
        return found[:limit]

    def merge(self, other: ScanResult) -> ScanResult:
        examples = {p: list(v) for p, v in self.examples.items()}
        for p, idx in other.examples.items():
            examples[p] = sorted(examples.get(p, []) + idx)[:MAX_COUNTEREXAMPLES]
        return ScanResult(
            self.n,
            min(self.lo, other.lo),
            max(self.hi, other.hi),
            self.histogram + other.histogram,
            examples,
            self.scanned + other.scanned,
        )


_cache: dict[tuple[int, int, int], ScanResult] = {}


def _scan_range(n: int, lo: int, hi: int, bad: np.ndarray, max_bad: int) -> ScanResult:
    proper, options, bases = K.layout(n)
    hist = np.zeros(K.N_PATTERNS, dtype=np.int64)
    examples: dict[int, list[int]] = {}
    scanned = 0
    pos = lo
    while pos < hi:
        count = min(hi - pos, _CHUNK)
        start = np.array(index_to_digits(n, pos), dtype=np.int64)
        h, ex, s = K.scan(n, proper, options, bases, start, count, bad, max_bad - int(hist[bad].sum()),
                          MAX_COUNTEREXAMPLES)
        hist += h
        for p in np.nonzero(h)[0]:
            got = [pos + int(o) for o in ex[p] if o >= 0]
            examples[int(p)] = sorted(examples.get(int(p), []) + got)[:MAX_COUNTEREXAMPLES]
        scanned += int(s)
        pos += int(s)
        if s < count:
            break
    return ScanResult(n, lo, hi, hist, examples, scanned)


def _bad_mask(pred: Callable[[int], bool]) -> np.ndarray:
    return np.array([pred(p) for p in range(K.N_PATTERNS)], dtype=np.bool_)


def scan(
    n: int,
    lo: int = 0,
    hi: int | None = None,
    fails: Callable[[int], bool] | None = None,
    workers: int = 1,
) -> ScanResult:
    """Pattern histogram over correspondences with index in ``[lo, hi)``.

    With ``fails`` given, the scan aborts after ``MAX_COUNTEREXAMPLES``
    matching patterns. Complete scans are cached per range.
    """
    if not 1 <= n <= MAX_ENUMERATION:
        raise UniverseTooLarge(f"exhaustive scans support 1 <= n <= {MAX_ENUMERATION}, got {n}")
    total = count_correspondences(n)
    hi = total if hi is None else min(hi, total)
    key = (n, lo, hi)
    if key in _cache:
        return _cache[key]
    bad = _bad_mask(fails or (lambda p: False))
    max_bad = MAX_COUNTEREXAMPLES if fails else 1
    if not bad.any():
        max_bad = 1  # never reached
    if workers > 1 and hi - lo > workers:
        bounds = [lo + (hi - lo) * k // workers for k in range(workers + 1)]
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_scan_range, [n] * workers, bounds[:-1], bounds[1:],
                                  [bad] * workers, [max_bad] * workers))
        result = parts[0]
        for part in parts[1:]:
            result = result.merge(part)
        result.lo, result.hi = lo, hi
    else:
        result = _scan_range(n, lo, hi, bad, max_bad)
    if result.complete:
        _cache[key] = result
    return result


def shard_bounds(n: int, shards: int, shard: int) -> tuple[int, int]:
    if shards < 1 or not 0 <= shard < shards:
        raise ValueError(f"shard {shard} out of range for {shards} shards")
    total = count_correspondences(n)
    return total * shard // shards, total * (shard + 1) // shards


@dataclass
class VerificationReport:
    claim: str
    n: int
    instances: int
    counterexamples: list[dict[str, Any]] = field(default_factory=list)
    elapsed: float = 0.0
    lo: int = 0
    hi: int = 0
    shards: int | None = None
    shard: int | None = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return not self.counterexamples and self.details.get("converse_required", 0) <= self.details.get(
            "converse_witnesses", 0
        )

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "claim": self.claim,
            "statement": CLAIMS[self.claim].statement,
            "n": self.n,
            "instances": self.instances,
            "range": [self.lo, self.hi],
            "verified": self.verified,
            "counterexample_count": len(self.counterexamples),
            "counterexamples": self.counterexamples,
            "elapsed_seconds": round(self.elapsed, 3),
        }
        if self.shards is not None:
            out["shards"] = self.shards
            out["shard"] = self.shard
        if self.details:
            out["details"] = self.details
        return out


def _describe(n: int, index: int, pattern: int) -> dict[str, Any]:
    c = from_index(n, index)
    return {
        "index": index,
        "predicates": {name: bool(pattern & bit) for name, bit in K.PREDICATES.items()},
        "correspondence": dataset_to_dict(c),
    }


def verify(
    claim: str,
    n: int,
    shards: int | None = None,
    shard: int | None = None,
    lo: int | None = None,
    hi: int | None = None,
    workers: int = 1,
    allow_large: bool = False,
) -> VerificationReport:
    """Check ``claim`` over every correspondence on ``n`` alternatives (or a slice).

    ``n = 5`` is refused unless the run is sliced (``shards`` or an explicit
    range) and ``allow_large`` is set.
    """
    if claim not in CLAIMS:
        raise ValueError(f"unknown claim {claim!r}; choose from {sorted(CLAIMS)}")
    if not 1 <= n <= MAX_ENUMERATION:
        raise UniverseTooLarge(f"verification supports 1 <= n <= {MAX_ENUMERATION}, got {n}")
    sliced = shards is not None or lo is not None or hi is not None
    if n > DEFAULT_MAX_N and not (sliced and allow_large):
        raise UniverseTooLarge(
            f"n={n} has {count_correspondences(n):.3e} correspondences; "
            "run it sliced (--shards/--range) with the long-running flag"
        )
    total = count_correspondences(n)
    if shards is not None:
        lo, hi = shard_bounds(n, shards, shard if shard is not None else 0)
    lo = 0 if lo is None else lo
    hi = total if hi is None else min(hi, total)
    rule = CLAIMS[claim]
    t0 = time.perf_counter()
    result = scan(n, lo, hi, rule.fails, workers=workers)
    elapsed = time.perf_counter() - t0
    found = []
    for p in range(K.N_PATTERNS):
        if rule.fails(p):
            found += [(i, p) for i in result.examples.get(p, [])]
    found.sort()
    counterexamples = [_describe(n, i, p) for i, p in found[:MAX_COUNTEREXAMPLES]]
    details: dict[str, Any] = {
        "satisfying": {
            "tau": result.count(lambda p: _has(p, K.TAU)),
            "rho": result.count(lambda p: _has(p, K.RHO)),
            "tau_and_rho": result.count(lambda p: _has(p, K.TAU, K.RHO)),
            "warp": result.count(lambda p: _has(p, K.WARP)),
            "v-axiom": result.count(lambda p: _has(p, K.VAX)),
            "delta": result.count(lambda p: _has(p, K.DELTA)),
        }
    }
    if not result.complete:
        details["aborted"] = True
    if claim == "delta":
        details["converse_witnesses"] = result.count(_converse_delta)
        # the converse can only fail to exist on tiny universes or partial slices
        details["converse_required"] = int(n >= 3 and lo == 0 and hi == total)
        first = result.first(_converse_delta, 1)
        if first:
            details["converse_example"] = _describe(n, first[0], _pattern_of(result, first[0]))
    report = VerificationReport(
        claim, n, result.scanned, counterexamples, elapsed, lo, hi, shards, shard, details
    )
    log.info("claim %s n=%d: %d instances, verified=%s", claim, n, report.instances, report.verified)
    return report


def _pattern_of(result: ScanResult, index: int) -> int:
    for p, idx in result.examples.items():
        if index in idx:
            return p
    raise KeyError(index)


def verify_proposition_tau(n: int, **kw: Any) -> VerificationReport:
    return verify("prop-tau", n, **kw)


def verify_proposition_rho(n: int, **kw: Any) -> VerificationReport:
    return verify("prop-rho", n, **kw)


def verify_theorem_1(n: int, **kw: Any) -> VerificationReport:
    return verify("theorem1", n, **kw)


def verify_lemma_normal(n: int, **kw: Any) -> VerificationReport:
    return verify("lemma1", n, **kw)


def verify_warp_bridge(n: int, **kw: Any) -> VerificationReport:
    return verify("warp", n, **kw)


def verify_footnote_delta(n: int, **kw: Any) -> VerificationReport:
    return verify("delta", n, **kw)
