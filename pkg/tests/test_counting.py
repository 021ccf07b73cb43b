import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radolab import (CountRequest, DiagonalEquation, IntegerSet, RangeError,
                     ShapeError, SplitEquation, WeightFunction,
                     count_bruteforce, count_orthogonality, counting_operator,
                     growth_exponent, min_admissible_q)

SCHUR = DiagonalEquation(1, (1, 1, -1))
PYTH3 = DiagonalEquation(2, (1, 1, -1))


def naive_count(eq, n, distinct=False):
    total = 0
    for xs in itertools.product(range(1, n + 1), repeat=eq.s):
        if distinct and len(set(xs)) < eq.s:
            continue
        if eq.evaluate(xs) == 0:
            total += 1
    return total


def interval_request(eq, n, **kw):
    return CountRequest(eq, (IntegerSet.interval(n),) * eq.s, **kw)


def test_weight_function_basics():
    w = WeightFunction(10, {2: Fraction(1, 2), 5: 3})
    assert w(2) == Fraction(1, 2) and w(3) == 0
    assert w.l1() == Fraction(7, 2)
    assert w.support() == [2, 5]
    xs, nums, denom = w.integerized()
    assert xs == [2, 5] and nums == [1, 6] and denom == 2
    with pytest.raises(RangeError):
        WeightFunction(10, {2: -1})
    with pytest.raises(RangeError):
        WeightFunction(10, {11: 1})


def test_weight_restrict_and_scale():
    w = WeightFunction.ones(6)
    r = w.restrict(IntegerSet(6, [2, 4]))
    assert r.support() == [2, 4]
    assert w.scaled(Fraction(1, 6)).l1() == 1


def test_count_request_arity_check():
    with pytest.raises(ShapeError):
        CountRequest(SCHUR, (IntegerSet.interval(5),) * 2)


def test_schur_counts_small():
    # x + y = z over [4]: z=2..4 gives 1+2+3 = 6
    assert count_bruteforce(interval_request(SCHUR, 4)) == 6
    assert count_bruteforce(interval_request(SCHUR, 10)) == 45


def test_counts_match_naive_oracle():
    for eq, n in [(SCHUR, 12), (PYTH3, 15),
                  (DiagonalEquation(3, (1, 1, -2)), 10),
                  (DiagonalEquation(1, (2, -3, 1, -1)), 8)]:
        expected = naive_count(eq, n)
        assert count_bruteforce(interval_request(eq, n)) == expected
        assert count_orthogonality(interval_request(eq, n)) == expected


def test_distinct_counts_match_naive_oracle():
    for eq, n in [(SCHUR, 12), (PYTH3, 15)]:
        expected = naive_count(eq, n, distinct=True)
        got = count_bruteforce(interval_request(eq, n, distinct_only=True))
        assert got == expected


def test_distinct_fermat_cubes():
    eq = DiagonalEquation(3, (1, 1, -1))
    req = interval_request(eq, 50, distinct_only=True)
    assert count_bruteforce(req) == 0


def test_oracle_equivalence_weighted():
    w = WeightFunction(8, {1: Fraction(1, 2), 3: 2, 8: 1})
    req = CountRequest(SCHUR, (w, IntegerSet.interval(8), w))
    assert count_bruteforce(req) == count_orthogonality(req)


def test_split_equation_counting():
    # x1 - x2 = y^2 over [10] x [10] x [3]
    se = SplitEquation(1, 2, (1, -1), (1,))
    doms = (IntegerSet.interval(10),) * 2 + (IntegerSet.interval(3),)
    expected = sum(1 for a in range(1, 11) for b in range(1, 11)
                   for y in range(1, 4) if a - b == y * y)
    req = CountRequest(se, doms)
    assert count_bruteforce(req) == expected
    assert count_orthogonality(req) == expected


def test_dilation_invariance():
    base = interval_request(PYTH3, 20)
    dilated = CountRequest(PYTH3, tuple(IntegerSet.interval(20).dilate(3)
                                        for _ in range(3)))
    assert count_bruteforce(base) == count_bruteforce(dilated)


def test_monotonicity():
    small = count_bruteforce(interval_request(SCHUR, 10))
    big = count_bruteforce(interval_request(SCHUR, 11))
    assert big >= small


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=2, max_value=20),
       st.integers(min_value=1, max_value=2))
def test_oracles_agree_property(n, k):
    eq = DiagonalEquation(k, (1, 2, -1, -2))
    req = interval_request(eq, n)
    assert count_bruteforce(req) == count_orthogonality(req)


def test_min_admissible_q_is_power_of_two():
    req = interval_request(PYTH3, 40)
    q = min_admissible_q(req.terms())
    assert q & (q - 1) == 0
    assert q > 2 * 3 * 40 ** 2


def test_counting_operator_generic():
    # T over all-ones weights counts solutions; x+y=z over [2]: only 1+1=2
    val = counting_operator("T", [WeightFunction.ones(2)] * 3, equation=SCHUR)
    assert val == 1


def test_counting_operator_t1():
    # x1 - x2 = y1^2+y2^2+y3^2 with A = {1,...,10} indicator, B = [1]
    a = IntegerSet.interval(10)
    b = IntegerSet.interval(1)
    val = counting_operator("T1", [a, a], B=b)
    # x1 - x2 = 3 has 7 solutions in [10]^2
    assert val == 7


def test_counting_operator_multilinear():
    w1 = WeightFunction(4, {1: 1, 3: 2})
    w2 = WeightFunction(4, {2: 1})
    others = [WeightFunction.ones(4)] * 2
    lhs = counting_operator("T", [WeightFunction(4, {1: 1, 3: 2, 2: 1})]
                            + others, equation=SCHUR)
    parts = (counting_operator("T", [w1] + others, equation=SCHUR)
             + counting_operator("T", [w2] + others, equation=SCHUR))
    assert lhs == parts


def test_growth_exponent():
    pts = [(10, 10.0 ** 3), (20, 20.0 ** 3), (40, 40.0 ** 3)]
    fit = growth_exponent(pts)
    assert abs(fit.slope - 3.0) < 1e-9
    with pytest.raises(RangeError):
        growth_exponent(pts[:2])
