import json
import math
from fractions import Fraction

import pytest

from orddiv.arith import factorize
from orddiv.base import RationalBase
from orddiv.census import (
    CensusConfig,
    CheckpointError,
    OrderRecord,
    _primes_in_segment,
    _small_primes,
    full_order,
    order_divisible,
    order_record,
    reduce_mod_p,
    run_census,
    verify_key_identity,
    verify_order_flip,
)


class TestReduceModP:
    def test_examples(self):
        assert reduce_mod_p(Fraction(1, 2), 3) == 2
        assert reduce_mod_p(2, 7) == 2
        assert reduce_mod_p(-4, 5) == 1

    def test_rejects_dividing_primes(self):
        with pytest.raises(ValueError):
            reduce_mod_p(Fraction(3, 5), 5)
        with pytest.raises(ValueError):
            reduce_mod_p(10, 5)


class TestOrders:
    def test_full_order_examples(self):
        assert full_order(7, 2, factorize(6)) == 3
        assert full_order(11, 2, factorize(10)) == 10
        assert full_order(13, 1, factorize(12)) == 1

    def test_order_record_invariants(self):
        for p in (5, 7, 11, 101, 99991):
            rec = order_record(2, p)
            assert rec.order * rec.residual_index == p - 1
            assert pow(rec.gbar, rec.order, p) == 1
            for q, _ in factorize(rec.order).factors:
                assert pow(rec.gbar, rec.order // q, p) != 1

    def test_order_divisible_examples(self):
        assert order_divisible(7, 2, factorize(2)) is False
        assert order_divisible(5, 2, factorize(4)) is True
        assert order_divisible(11, 2, factorize(3)) is False

    def test_divisible_matches_full_order(self):
        # fast power test vs exact order, moderate sweep (the acceptance
        # suite runs the full one)
        primes = [int(p) for p in _small_primes(3000) if p > 2]
        d_facts = {d: factorize(d) for d in range(1, 49)}
        for g in (2, 3, -2, -4, Fraction(1, 2)):
            for p in primes:
                try:
                    gbar = reduce_mod_p(g, p)
                except ValueError:
                    continue
                order = full_order(p, gbar, factorize(p - 1))
                for d, fact in d_facts.items():
                    assert order_divisible(p, gbar, fact) == (order % d == 0)


class TestSieve:
    def test_segment_matches_simple_sieve(self):
        base = _small_primes(1000)
        whole = [int(p) for p in _small_primes(100_000) if p > 2]
        collected = []
        for lo in range(0, 100_001, 7919):
            hi = min(lo + 7918, 100_000)
            collected.extend(int(p) for p in _primes_in_segment(lo, hi, base))
        assert collected == whole


class TestRunCensus:
    def test_hand_enumeration(self):
        result = run_census(CensusConfig(RationalBase(2, 1), 2, 23, segment_size=10**4))
        assert (result.counted, result.considered) == (6, 8)

    def test_d_one_counts_everything(self):
        result = run_census(CensusConfig(RationalBase(2, 1), 1, 100, segment_size=10**4))
        assert (result.counted, result.considered) == (24, 24)

    def test_rational_base(self):
        # ord_p(1/2) = ord_p(2), so censuses agree wherever both defined
        a = run_census(CensusConfig(RationalBase(1, 2), 4, 5000, segment_size=10**4))
        b = run_census(CensusConfig(RationalBase(2, 1), 4, 5000, segment_size=10**4))
        assert (a.counted, a.considered) == (b.counted, b.considered)

    def test_excludes_base_primes(self):
        result = run_census(CensusConfig(RationalBase(15, 1), 2, 100, segment_size=10**4))
        # 24 odd primes up to 100, minus p in {3, 5}
        assert result.considered == 22

    def test_deterministic_across_schedules(self):
        reference = None
        for workers in (1, 4, 8):
            for segment_size in (10**4, 10**6):
                cfg = CensusConfig(
                    RationalBase(-9, 1), 6, 200_000,
                    segment_size=segment_size, worker_count=workers,
                )
                result = run_census(cfg)
                totals = (result.counted, result.considered)
                if reference is None:
                    reference = totals
                assert totals == reference

    def test_segment_ledger_sums(self):
        cfg = CensusConfig(RationalBase(2, 1), 2, 100_000, segment_size=10**4)
        result = run_census(cfg)
        assert sum(s.counted for s in result.segments) == result.counted
        assert sum(s.considered for s in result.segments) == result.considered
        assert [s.start for s in result.segments] == list(range(3, 100_001, 10**4))

    def test_partition_by_order_gcd(self):
        # every considered prime lands in exactly one gcd(ord, 2d) class, and
        # the d-divisible classes add up to the census count
        g, d, x = RationalBase(-9, 1), 6, 10_000
        result = run_census(CensusConfig(g, d, x, segment_size=10**4))
        classes: dict[int, int] = {}
        for p in (int(q) for q in _small_primes(x) if q > 2):
            if 9 % p == 0:
                continue
            rec = order_record(g, p)
            key = math.gcd(rec.order, 2 * d)
            classes[key] = classes.get(key, 0) + 1
        assert sum(classes.values()) == result.considered
        assert all((2 * d) % key == 0 for key in classes)
        from_classes = sum(c for key, c in classes.items() if key % d == 0)
        assert from_classes == result.counted

    def test_validation(self):
        with pytest.raises(ValueError):
            CensusConfig(RationalBase(2, 1), 2, 2)
        with pytest.raises(ValueError):
            CensusConfig(RationalBase(2, 1), 2, 100, segment_size=100)
        with pytest.raises(ValueError):
            CensusConfig(RationalBase(2, 1), 2, 4_000_000_000)


class TestCheckpoint:
    def _config(self, path, x=50_000):
        return CensusConfig(
            RationalBase(2, 1), 2, x, segment_size=10**4, checkpoint_path=path
        )

    def test_roundtrip_resume(self, tmp_path):
        path = tmp_path / "census.jsonl"
        full = run_census(self._config(path))
        lines = path.read_text().strip().splitlines()
        assert len(lines) == 5
        record = json.loads(lines[0])
        assert set(record) == {
            "segment_start", "segment_end", "counted", "considered",
            "config_fingerprint",
        }
        assert record["config_fingerprint"] == "2/1|2|10000"
        # truncate to simulate an interrupted run, then resume
        path.write_text("\n".join(lines[:2]) + "\n")
        resumed = run_census(self._config(path))
        assert (resumed.counted, resumed.considered) == (full.counted, full.considered)
        assert len(path.read_text().strip().splitlines()) == 5

    def test_completed_run_recounts_nothing(self, tmp_path):
        path = tmp_path / "census.jsonl"
        first = run_census(self._config(path))
        before = path.read_text()
        second = run_census(self._config(path))
        assert path.read_text() == before
        assert (second.counted, second.considered) == (first.counted, first.considered)

    def test_fingerprint_mismatch_aborts(self, tmp_path):
        path = tmp_path / "census.jsonl"
        run_census(self._config(path))
        other = CensusConfig(
            RationalBase(3, 1), 2, 50_000, segment_size=10**4, checkpoint_path=path
        )
        with pytest.raises(CheckpointError):
            run_census(other)

    def test_corrupt_line_aborts(self, tmp_path):
        path = tmp_path / "census.jsonl"
        run_census(self._config(path))
        path.write_text(path.read_text() + "{not json\n")
        with pytest.raises(CheckpointError):
            run_census(self._config(path))

    def test_conflicting_counts_abort(self, tmp_path):
        path = tmp_path / "census.jsonl"
        run_census(self._config(path))
        lines = path.read_text().strip().splitlines()
        record = json.loads(lines[0])
        record["counted"] += 1
        path.write_text("\n".join(lines + [json.dumps(record)]) + "\n")
        with pytest.raises(CheckpointError):
            run_census(self._config(path))

    def test_foreign_segmentation_aborts(self, tmp_path):
        path = tmp_path / "census.jsonl"
        record = {
            "segment_start": 5, "segment_end": 10_004,
            "counted": 1, "considered": 1,
            "config_fingerprint": "2/1|2|10000",
        }
        path.write_text(json.dumps(record) + "\n")
        with pytest.raises(CheckpointError):
            run_census(self._config(path))


class TestKeyIdentity:
    def test_exact_small(self):
        report = verify_key_identity(2, 2, 10_000)
        assert report.lhs == report.rhs
        assert report.holds

    def test_d_one_counts_considered(self):
        report = verify_key_identity(2, 1, 10_000)
        census = run_census(CensusConfig(RationalBase(2, 1), 1, 10_000, segment_size=10**4))
        assert report.lhs == report.rhs == census.considered

    def test_blocks_nonnegative(self):
        report = verify_key_identity(-9, 6, 50_000)
        assert report.holds
        assert all(count >= 0 for _, count in report.blocks)

    def test_lhs_matches_census(self):
        # for g = -9, d = 6 the excluded primes {2, 3} are skipped by the
        # census as well, so the direct counts must coincide
        report = verify_key_identity(-9, 6, 30_000)
        census = run_census(CensusConfig(RationalBase(-9, 1), 6, 30_000, segment_size=10**4))
        assert report.lhs == census.counted

    def test_rejects_large_x(self):
        with pytest.raises(ValueError):
            verify_key_identity(2, 2, 10**8)


class TestOrderFlip:
    def test_specific_primes(self):
        # ord_7(2) = 3 is odd, so ord_7(-2) doubles to 6
        assert full_order(7, 2, factorize(6)) == 3
        assert full_order(7, 5, factorize(6)) == 6
        # ord_5(2) = 4 is divisible by 4, so ord_5(-2) = 4
        assert full_order(5, 2, factorize(4)) == 4
        assert full_order(5, 3, factorize(4)) == 4

    def test_sweep(self):
        assert verify_order_flip(2, 10_000)
        assert verify_order_flip(Fraction(3, 5), 2_000)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            verify_order_flip(-2, 100)


class TestOrderRecordType:
    def test_invariant_enforced(self):
        with pytest.raises(AssertionError):
            OrderRecord(p=7, gbar=2, order=3, residual_index=3)
