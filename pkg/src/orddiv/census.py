"""Empirical prime census: count primes p <= x with d | ord_p(g).

The hot path is a segmented, odd-only sieve with vectorized modular
exponentiation over whole segments of primes (int64 products stay below
2^63 for x up to 3e9, which covers the full published-table scale).
Divisibility of the order by d is decided per prime power l^a || d from the
l-adic valuation of p - 1 and a single power test, never from a full order
computation.

Long runs checkpoint one line-delimited JSON record per finished segment and
can resume, skipping completed segments after validating a config
fingerprint.  The verification entry points (`verify_key_identity`,
`verify_order_flip`) use exact per-prime orders instead of the fast test.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import (
    Factorization,
    divisors_of_dinfty,
    factorize,
    squarefree_divisors,
)
from .base import RationalBase, as_base

__all__ = [
    "CensusConfig",
    "CensusResult",
    "SegmentCount",
    "OrderRecord",
    "CheckpointError",
    "reduce_mod_p",
    "order_divisible",
    "full_order",
    "order_record",
    "run_census",
    "verify_key_identity",
    "KeyIdentityReport",
    "verify_order_flip",
]

# (p-1)^2 must fit in int64 for the vectorized square-and-multiply.
_MAX_X_LIMIT = 3_000_000_000


class CheckpointError(RuntimeError):
    """Checkpoint file disagrees with the current run configuration."""


@dataclass(frozen=True)
class CensusConfig:
    g: RationalBase
    d: int
    x_limit: int
    segment_size: int = 10_000_000
    worker_count: int = 1
    checkpoint_path: str | os.PathLike | None = None

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("d must be positive")
        if self.x_limit < 3:
            raise ValueError("x_limit must be at least 3")
        if self.x_limit > _MAX_X_LIMIT:
            raise ValueError(f"x_limit beyond supported bound {_MAX_X_LIMIT}")
        if self.segment_size < 10_000:
            raise ValueError("segment_size must be at least 10^4")
        if self.worker_count < 1:
            raise ValueError("worker_count must be positive")

    @property
    def fingerprint(self) -> str:
        return f"{self.g.g1}/{self.g.g2}|{self.d}|{self.segment_size}"

    def segments(self) -> list[tuple[int, int]]:
        bounds = []
        lo = 3
        while lo <= self.x_limit:
            hi = min(lo + self.segment_size - 1, self.x_limit)
            bounds.append((lo, hi))
            lo = hi + 1
        return bounds


@dataclass(frozen=True)
class SegmentCount:
    start: int
    end: int
    counted: int
    considered: int


@dataclass(frozen=True)
class CensusResult:
    """Census totals: counted = #{p : d | ord_p(g)}, considered = #{p : p odd, p coprime to g}."""

    counted: int
    considered: int
    segments: tuple[SegmentCount, ...]

    def __post_init__(self) -> None:
        assert self.counted <= self.considered
        assert sum(s.counted for s in self.segments) == self.counted
        assert sum(s.considered for s in self.segments) == self.considered

    @property
    def ratio(self) -> Fraction:
        if self.considered == 0:
            raise ZeroDivisionError("no primes considered")
        return Fraction(self.counted, self.considered)


@dataclass(frozen=True)
class OrderRecord:
    """Exact multiplicative data of g at one odd prime."""

    p: int
    gbar: int
    order: int
    residual_index: int

    def __post_init__(self) -> None:
        assert self.order * self.residual_index == self.p - 1


# ---------------------------------------------------------------------------
# scalar order machinery
# ---------------------------------------------------------------------------


def reduce_mod_p(g: RationalBase | int | str | Fraction, p: int) -> int:
    """Residue of g1 * g2^(-1) in [1, p-1]; rejects primes dividing g1 g2."""
    base = as_base(g)
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    if base.g1 % p == 0 or base.g2 % p == 0:
        raise ValueError(f"{p} divides the numerator or denominator of g")
    return base.g1 * pow(base.g2, -1, p) % p


def order_divisible(p: int, gbar: int, d_factored: Factorization) -> bool:
    """True iff d | ord_p(gbar), using one power test per prime factor of d.

    For l^a || d and e = v_l(p-1): the order is divisible by l^a exactly
    when e >= a and gbar^((p-1)/l^(e-a+1)) != 1 (mod p).
    """
    pm1 = p - 1
    if pm1 % d_factored.value != 0:
        return False
    for ell, a in d_factored.factors:
        e = 0
        t = pm1
        while t % ell == 0:
            t //= ell
            e += 1
        if e < a:
            return False
        if pow(gbar, pm1 // ell ** (e - a + 1), p) == 1:
            return False
    return True


def full_order(p: int, gbar: int, p_minus_1_factored: Factorization) -> int:
    """Exact multiplicative order of gbar modulo p."""
    order = p - 1
    for q, _ in p_minus_1_factored.factors:
        while order % q == 0 and pow(gbar, order // q, p) == 1:
            order //= q
    return order


def order_record(
    g: RationalBase | int | str | Fraction, p: int, p_minus_1_factored: Factorization | None = None
) -> OrderRecord:
    gbar = reduce_mod_p(g, p)
    if p_minus_1_factored is None:
        p_minus_1_factored = factorize(p - 1)
    order = full_order(p, gbar, p_minus_1_factored)
    return OrderRecord(p=p, gbar=gbar, order=order, residual_index=(p - 1) // order)


# ---------------------------------------------------------------------------
# vectorized segment kernel
# ---------------------------------------------------------------------------


def _small_primes(limit: int) -> np.ndarray:
    """Primes up to limit inclusive (plain sieve; limit ~ sqrt(x) stays small)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def _primes_in_segment(lo: int, hi: int, base_primes: np.ndarray) -> np.ndarray:
    """Odd primes in [lo, hi] via an odd-only segmented sieve."""
    lo = max(lo, 3)
    if lo % 2 == 0:
        lo += 1
    if lo > hi:
        return np.empty(0, dtype=np.int64)
    mask = np.ones((hi - lo) // 2 + 1, dtype=bool)
    for p in base_primes:
        p = int(p)
        if p == 2:
            continue
        if p * p > hi:
            break
        start = max(p * p, (lo + p - 1) // p * p)
        if start % 2 == 0:
            start += p
        if start > hi:
            continue
        mask[(start - lo) // 2 :: p] = False
    return lo + 2 * np.flatnonzero(mask).astype(np.int64)


def _powmod_vec(basev: np.ndarray, exp: np.ndarray, mod: np.ndarray) -> np.ndarray:
    """Elementwise base^exp % mod for int64 arrays (mod < 2^31.5)."""
    result = np.ones_like(mod)
    b = basev % mod
    e = exp.copy()
    while True:
        active = e > 0
        if not active.any():
            return result
        odd = (e & 1).astype(bool)
        result[odd] = result[odd] * b[odd] % mod[odd]
        e >>= 1
        square = e > 0
        b[square] = b[square] * b[square] % mod[square]


def _valuation_vec(values: np.ndarray, ell: int) -> np.ndarray:
    """Elementwise l-adic valuation."""
    e = np.zeros(values.shape, dtype=np.int64)
    t = values.copy()
    divisible = t % ell == 0
    while divisible.any():
        t[divisible] //= ell
        e[divisible] += 1
        divisible[divisible] = t[divisible] % ell == 0
    return e


def _segment_census(
    lo: int,
    hi: int,
    base_primes: np.ndarray,
    g1: int,
    g2: int,
    d_factors: tuple[tuple[int, int], ...],
    excluded: np.ndarray,
) -> tuple[int, int]:
    """(counted, considered) over one segment."""
    ps = _primes_in_segment(lo, hi, base_primes)
    if excluded.size:
        ps = ps[~np.isin(ps, excluded)]
    considered = int(ps.size)
    if considered == 0 or not d_factors:
        return considered, considered
    pm1 = ps - 1
    keep = np.ones(ps.size, dtype=bool)
    valuations = []
    for ell, a in d_factors:
        e = _valuation_vec(pm1, ell)
        valuations.append(e)
        keep &= e >= a
    ps = ps[keep]
    if ps.size == 0:
        return 0, considered
    pm1 = pm1[keep]
    valuations = [e[keep] for e in valuations]
    if g2 == 1:
        gbar = g1 % ps
    else:
        inv = _powmod_vec(np.full_like(ps, g2) % ps, ps - 2, ps)
        gbar = (g1 % ps) * inv % ps
    hit = np.ones(ps.size, dtype=bool)
    for (ell, a), e in zip(d_factors, valuations):
        exponent = pm1 // ell ** (e - a + 1)
        hit &= _powmod_vec(gbar, exponent, ps) != 1
    return int(np.count_nonzero(hit)), considered


_WORKER_STATE: dict | None = None


def _init_worker(state: dict) -> None:
    global _WORKER_STATE
    _WORKER_STATE = state


def _segment_task(bounds: tuple[int, int]) -> tuple[int, int]:
    assert _WORKER_STATE is not None
    return _segment_census(bounds[0], bounds[1], **_WORKER_STATE)


# ---------------------------------------------------------------------------
# checkpointing
# ---------------------------------------------------------------------------


def _load_checkpoint(path, fingerprint: str) -> dict[tuple[int, int], tuple[int, int]]:
    done: dict[tuple[int, int], tuple[int, int]] = {}
    if not os.path.exists(path):
        return done
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                key = (int(record["segment_start"]), int(record["segment_end"]))
                counts = (int(record["counted"]), int(record["considered"]))
                seen_fp = record["config_fingerprint"]
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise CheckpointError(f"{path}: line {lineno} is not a valid record: {exc}")
            if seen_fp != fingerprint:
                raise CheckpointError(
                    f"{path}: line {lineno} fingerprint {seen_fp!r} does not match "
                    f"current configuration {fingerprint!r}"
                )
            if key in done and done[key] != counts:
                raise CheckpointError(
                    f"{path}: conflicting counts for segment {key}: {done[key]} vs {counts}"
                )
            done[key] = counts
    return done


def _append_checkpoint(path, seg: SegmentCount, fingerprint: str) -> None:
    record = {
        "segment_start": seg.start,
        "segment_end": seg.end,
        "counted": seg.counted,
        "considered": seg.considered,
        "config_fingerprint": fingerprint,
    }
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(record) + "\n")
        fh.flush()


# ---------------------------------------------------------------------------
# the census driver
# ---------------------------------------------------------------------------


def run_census(config: CensusConfig) -> CensusResult:
    """Count primes p <= x_limit (p odd, coprime to g) with d | ord_p(g).

    Totals are exact and identical for any worker_count / segment_size
    split.  With a checkpoint path, finished segments are appended as JSON
    lines and skipped on resume (fingerprint-validated; on any inconsistency
    the run aborts rather than recounting).
    """
    g = config.g
    base_primes = _small_primes(math.isqrt(config.x_limit))
    bad = sorted(
        (set(factorize(abs(g.g1)).primes()) | set(factorize(g.g2).primes())) - {2}
    )
    state = {
        "base_primes": base_primes,
        "g1": g.g1,
        "g2": g.g2,
        "d_factors": factorize(config.d).factors if config.d > 1 else (),
        "excluded": np.asarray(bad, dtype=np.int64),
    }
    segments = config.segments()
    done: dict[tuple[int, int], tuple[int, int]] = {}
    expected = set(segments)
    if config.checkpoint_path is not None:
        done = _load_checkpoint(config.checkpoint_path, config.fingerprint)
        for key in done:
            if key not in expected:
                raise CheckpointError(
                    f"{config.checkpoint_path}: segment {key} does not match the "
                    f"segmentation of x_limit={config.x_limit}"
                )
    pending = [seg for seg in segments if seg not in done]
    results: dict[tuple[int, int], tuple[int, int]] = dict(done)
    if config.worker_count == 1 or len(pending) <= 1:
        _init_worker(state)
        for seg in pending:
            counts = _segment_task(seg)
            results[seg] = counts
            if config.checkpoint_path is not None:
                _append_checkpoint(
                    config.checkpoint_path,
                    SegmentCount(seg[0], seg[1], *counts),
                    config.fingerprint,
                )
    else:
        with ProcessPoolExecutor(
            max_workers=config.worker_count,
            initializer=_init_worker,
            initargs=(state,),
        ) as pool:
            futures = {seg: pool.submit(_segment_task, seg) for seg in pending}
            for seg in pending:
                counts = futures[seg].result()
                results[seg] = counts
                if config.checkpoint_path is not None:
                    _append_checkpoint(
                        config.checkpoint_path,
                        SegmentCount(seg[0], seg[1], *counts),
                        config.fingerprint,
                    )
    ordered = tuple(
        SegmentCount(lo, hi, *results[(lo, hi)]) for lo, hi in segments
    )
    return CensusResult(
        counted=sum(s.counted for s in ordered),
        considered=sum(s.considered for s in ordered),
        segments=ordered,
    )


# ---------------------------------------------------------------------------
# exact finite-x verifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KeyIdentityReport:
    """Both sides of the finite-x counting identity plus per-v block counts."""

    g: RationalBase
    d: int
    x: int
    lhs: int
    rhs: int
    blocks: tuple[tuple[int, int], ...] = field(repr=False)

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def _spf_sieve(limit: int) -> np.ndarray:
    """Smallest-prime-factor table up to limit."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    spf[1] = 1
    for p in range(2, limit + 1):
        if spf[p] == 0:
            spf[p : limit + 1 : p][spf[p : limit + 1 : p] == 0] = p
    return spf


def _factor_with_spf(n: int, spf: np.ndarray) -> Factorization:
    counts: dict[int, int] = {}
    while n > 1:
        p = int(spf[n])
        counts[p] = counts.get(p, 0) + 1
        n //= p
    value = 1
    for p, e in counts.items():
        value *= p**e
    return Factorization(value, tuple(sorted(counts.items())))


def verify_key_identity(
    g: RationalBase | int | str | Fraction,
    d: int,
    x: int,
    *,
    max_x: int = 10_000_000,
) -> KeyIdentityReport:
    """Check the exact finite-x identity between the direct order count and
    the Mobius-weighted residual-index census.

    lhs counts primes p <= x with d | ord_p(g); rhs sums mu(alpha) times the
    count of primes with p = 1 (mod dv) and alpha*v | r_p(g), over v | d^inf
    and squarefree alpha | d.  Primes dividing 2*d*g1*g2 are excluded from
    both sides.  Exact integer equality is expected for every input.
    """
    base = as_base(g)
    if x > max_x:
        raise ValueError(f"x={x} beyond factoring budget {max_x}")
    bad = set(factorize(abs(base.g1)).primes())
    bad |= set(factorize(base.g2).primes())
    bad |= set(factorize(d).primes()) if d > 1 else set()
    bad.add(2)
    spf = _spf_sieve(max(x, 3))
    primes = np.flatnonzero(spf[2:] == np.arange(2, len(spf))) + 2
    primes = primes[primes <= x]
    vs = divisors_of_dinfty(d, max(1, (x - 1) // d))
    alphas = squarefree_divisors(d)
    lhs = 0
    blocks = {v: 0 for v in vs}
    for p in primes.tolist():
        if p in bad:
            continue
        rec = order_record(base, p, _factor_with_spf(p - 1, spf))
        if rec.order % d == 0:
            lhs += 1
        r = rec.residual_index
        for v in vs:
            if (p - 1) % (d * v) != 0:
                continue
            for alpha, mu in alphas:
                if r % (alpha * v) == 0:
                    blocks[v] += mu
    rhs = sum(blocks.values())
    return KeyIdentityReport(
        g=base, d=d, x=x, lhs=lhs, rhs=rhs, blocks=tuple(sorted(blocks.items()))
    )


def verify_order_flip(g: RationalBase | int | str | Fraction, x: int) -> bool:
    """Check the order relation between g and -g at every odd prime p <= x.

    ord_p(-g) must be 2*ord_p(g), ord_p(g)/2, or ord_p(g) according to
    whether ord_p(g) is odd, 2 mod 4, or divisible by 4.
    """
    base = as_base(g)
    if base.g1 < 0:
        raise ValueError("verify_order_flip requires g > 0")
    spf = _spf_sieve(max(x, 3))
    primes = np.flatnonzero(spf[2:] == np.arange(2, len(spf))) + 2
    primes = primes[primes <= x]
    bad = set(factorize(abs(base.g1)).primes()) | set(factorize(base.g2).primes())
    bad.add(2)
    for p in primes.tolist():
        if p in bad:
            continue
        fact = _factor_with_spf(p - 1, spf)
        gbar = reduce_mod_p(base, p)
        o = full_order(p, gbar, fact)
        o_neg = full_order(p, (p - gbar) % p, fact)
        if o % 2 == 1:
            expected = 2 * o
        elif o % 4 == 2:
            expected = o // 2
        else:
            expected = o
        if o_neg != expected:
            return False
    return True
