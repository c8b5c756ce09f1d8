import itertools

import pytest
from hypothesis import given, strategies as st

from specj import CompatLevel, PropertyKind, PropertyResult, Status, classify
from specj.errors import MalformedResults
from specj.scale import TIERS, classify_statuses

KINDS = list(PropertyKind)
TIER_OF = {PropertyKind.FORMAT: 1, PropertyKind.DEPENDENCIES: 1,
           PropertyKind.DATA_IO: 2, PropertyKind.FAULT_HANDLER: 2,
           PropertyKind.ENTRY_POINT: 3, PropertyKind.CONTROL_FLOW: 3,
           PropertyKind.DESIGN: 3}


def oracle(statuses):
    failed = [TIER_OF[k] for k, s in statuses.items() if s is Status.FAIL]
    return CompatLevel(min(failed) - 1) if failed else CompatLevel.USAGE


def _results(statuses):
    return [PropertyResult(k, s, ()) for k, s in statuses.items()]


def test_tier_table_matches_oracle():
    for level, kinds in TIERS:
        for k in kinds:
            assert TIER_OF[k] == int(level)
    assert set().union(*(k for _, k in TIERS)) == set(KINDS)


def test_exhaustive_against_oracle():
    n = 0
    for combo in itertools.product(list(Status), repeat=len(KINDS)):
        statuses = dict(zip(KINDS, combo))
        assert classify_statuses(statuses) is oracle(statuses)
        n += 1
    assert n == 3 ** 7


def test_never_fully_compatible():
    for combo in itertools.product([Status.PASS, Status.NOT_SPECIFIED], repeat=len(KINDS)):
        assert classify_statuses(dict(zip(KINDS, combo))) is CompatLevel.USAGE


@given(st.lists(st.sampled_from(list(Status)), min_size=7, max_size=7),
       st.sampled_from(KINDS))
def test_monotone_when_a_property_starts_failing(combo, kind):
    statuses = dict(zip(KINDS, combo))
    worse = {**statuses, kind: Status.FAIL}
    assert classify_statuses(worse) <= classify_statuses(statuses)


def test_classify_on_results():
    statuses = {k: Status.PASS for k in KINDS}
    statuses[PropertyKind.DATA_IO] = Status.FAIL
    assert classify(_results(statuses)) is CompatLevel.COMPILE_TIME


def test_missing_kind_rejected():
    results = _results({k: Status.PASS for k in KINDS})[:-1]
    with pytest.raises(MalformedResults):
        classify(results)


def test_duplicate_kind_rejected():
    results = _results({k: Status.PASS for k in KINDS})
    with pytest.raises(MalformedResults):
        classify(results + results[:1])


def test_labels_round_trip():
    for level in CompatLevel:
        assert CompatLevel.from_label(level.label) is level
    with pytest.raises(ValueError):
        CompatLevel.from_label("Sometimes")
    assert CompatLevel.NOT_COMPATIBLE < CompatLevel.COMPILE_TIME < CompatLevel.RUN_TIME \
        < CompatLevel.USAGE < CompatLevel.FULLY_COMPATIBLE
