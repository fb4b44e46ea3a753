import numpy as np
import pytest

from eaqecc.codes import LinearCode, random_code
from eaqecc.distance import (
    DistanceFact,
    information_set_bounds,
    span_weight_scan,
)
from eaqecc.errors import BudgetError
from eaqecc.fields import GF
from oracles import brute_min_distance, brute_min_outside

F2, F3, F4, F9 = GF(2), GF(3), GF(4), GF(9)


def test_span_scan_matches_oracle():
    rng = np.random.default_rng(40)
    for field in (F2, F3, F4, F9):
        for _ in range(10):
            n = int(rng.integers(3, 9))
            k = int(rng.integers(1, min(n, 4)))
            C = random_code(field, n, k, rng)
            scan = span_weight_scan(field, C.G.array)
            assert scan.min_weight == brute_min_distance(field, C.G.array)
            assert sum(1 for v in scan.witness if v) == scan.min_weight
            total = (field.order**k - 1) // (field.order - 1)
            assert scan.classes_scanned == total


def test_span_scan_relative_matches_oracle():
    rng = np.random.default_rng(41)
    for field in (F3, F9):
        for _ in range(10):
            n = int(rng.integers(4, 8))
            k = int(rng.integers(2, min(n, 5)))
            C = random_code(field, n, k, rng)
            t = int(rng.integers(1, k))
            sub = LinearCode(field, C.G.array[:t])
            scan = span_weight_scan(field, C.G.array, sub_rows=t)
            want = brute_min_outside(
                field, C.G.array, lambda w: sub.contains_vector(np.array(w, dtype=np.uint8))
            )
            assert scan.outside_min == want
            assert scan.min_weight == brute_min_distance(field, C.G.array)


def test_span_scan_cap():
    rng = np.random.default_rng(42)
    C = random_code(F9, 8, 5, rng)
    with pytest.raises(BudgetError):
        span_weight_scan(F9, C.G.array, cap=100)


def test_information_sets_match_enumeration():
    rng = np.random.default_rng(43)
    for field in (F2, F3, F4, F9):
        for _ in range(10):
            n = int(rng.integers(4, 11))
            k = int(rng.integers(1, min(n, 5)))
            C = random_code(field, n, k, rng)
            res = information_set_bounds(field, C.G.array)
            scan = span_weight_scan(field, C.G.array)
            assert res.fact.exact, (field.order, n, k)
            assert res.fact.value == scan.min_weight
            assert sum(1 for v in res.fact.witness if v) == res.fact.value


def test_information_sets_budget_honesty():
    rng = np.random.default_rng(44)
    C = random_code(F9, 12, 5, rng)
    true_d = span_weight_scan(F9, C.G.array).min_weight
    res = information_set_bounds(F9, C.G.array, work_budget=50)
    fact = res.fact
    if fact.exact:
        assert fact.value == true_d
    else:
        assert fact.certainty == "lower_bound"
        assert fact.value <= true_d
        if fact.upper is not None:
            assert fact.upper >= true_d


def test_information_sets_target_mode_stops_early():
    rng = np.random.default_rng(45)
    C = random_code(F9, 14, 6, rng)
    res = information_set_bounds(F9, C.G.array, target=2)
    assert res.fact.value >= 2 or res.fact.exact


def test_information_sets_relative_tracking():
    rng = np.random.default_rng(46)
    C = random_code(F9, 7, 3, rng)
    sub = LinearCode(F9, C.G.array[:1])
    res = information_set_bounds(F9, C.G.array, sub_checker=sub.contains_vector)
    want = brute_min_outside(
        F9, C.G.array, lambda w: sub.contains_vector(np.array(w, dtype=np.uint8))
    )
    assert res.outside_fact is not None
    if res.outside_fact.exact:
        assert res.outside_fact.value == want
    else:
        assert res.outside_fact.value <= want


def test_large_prime_field_enumeration():
    # p > 128 exercises the widened-addition path
    F = GF(251)
    rng = np.random.default_rng(47)
    C = random_code(F, 4, 2, rng)
    scan = span_weight_scan(F, C.G.array)
    assert scan.min_weight == brute_min_distance(F, C.G.array)
    res = information_set_bounds(F, C.G.array)
    assert res.fact.exact and res.fact.value == scan.min_weight


def test_distance_fact_rendering():
    f = DistanceFact(5, "exact", "enumeration", (1, 0, 1, 1, 1, 1))
    assert str(f) == "5" and f.exact
    g = DistanceFact(4, "lower_bound", "information_sets", None, upper=6)
    assert str(g) == ">= 4, <= 6"
    h = DistanceFact(7, "upper_bound", "witness", None)
    assert str(h) == "<= 7"
