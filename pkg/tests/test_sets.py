import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from radolab import IntegerSet, RangeError


def test_interval():
    s = IntegerSet.interval(10)
    assert s.cardinality == 10
    assert 1 in s and 10 in s and 0 not in s and 11 not in s


def test_membership_bounds():
    s = IntegerSet(10, [3, 7])
    assert s.members().tolist() == [3, 7]
    with pytest.raises(RangeError):
        IntegerSet(10, [11])
    with pytest.raises(RangeError):
        IntegerSet(0)


def test_from_mask_clears_zero():
    mask = np.ones(6, dtype=bool)
    s = IntegerSet.from_mask(mask)
    assert s.limit == 5 and s.cardinality == 5


def test_dilate():
    s = IntegerSet(5, [1, 2, 5])
    d = s.dilate(3)
    assert d.limit == 15 and d.members().tolist() == [3, 6, 15]
    assert s.dilate(3, limit=10).members().tolist() == [3, 6]


def test_lines_roundtrip():
    s = IntegerSet(20, [2, 3, 5, 19])
    assert IntegerSet.from_lines(s.to_lines(), limit=20) == s


def test_runs_json_roundtrip():
    s = IntegerSet(30, list(range(4, 12)) + [20, 25, 26])
    doc = s.to_runs_json()
    assert IntegerSet.from_runs_json(doc) == s
    assert '"runs": [[4, 8], [20, 1], [25, 2]]' in doc


def test_parse_both_formats():
    s = IntegerSet(9, [1, 4, 9])
    assert IntegerSet.parse(s.to_runs_json()) == s
    assert IntegerSet.parse(s.to_lines(), limit=9) == s


@given(st.sets(st.integers(min_value=1, max_value=200), max_size=40))
def test_runs_roundtrip_property(members):
    s = IntegerSet(200, sorted(members))
    assert IntegerSet.from_runs_json(s.to_runs_json()) == s
    assert set(s) == members


def test_equality_and_hash():
    a = IntegerSet(5, [1, 3])
    b = IntegerSet(5, [3, 1])
    assert a == b and hash(a) == hash(b)
    assert a != IntegerSet(6, [1, 3])
