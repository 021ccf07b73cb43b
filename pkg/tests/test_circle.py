import cmath
import math

import pytest

from radolab import (DiagonalEquation, RangeError, complete_sum_Sqa,
                     gauss_sum, local_density, predict_count,
                     singular_integral, singular_series)
from radolab.arith import sieve_primes
from radolab.wtrick import build_context

PYTH = DiagonalEquation(2, (1, 1, 1, 1, -1))


def test_gauss_sum_odd_prime_magnitude():
    for p in (3, 5, 7, 11, 13):
        for a in range(1, p):
            assert abs(abs(gauss_sum(p, a, 2)) - math.sqrt(p)) < 1e-9


def test_gauss_sum_classical_values():
    # S(q, 1, 2) = (1+i)sqrt(q) for q = 0 mod 4; S(4,1,2) = 2 + 2i
    v = gauss_sum(4, 1, 2)
    assert abs(v - (2 + 2j)) < 1e-12
    assert abs(gauss_sum(1, 0, 2) - 1) < 1e-15


def test_gauss_sum_multiplicativity():
    # |S(pq)| = |S(p)||S(q)| for coprime odd moduli (quadratic case)
    v15 = abs(gauss_sum(15, 1, 2))
    assert abs(v15 - math.sqrt(15)) < 1e-9


def test_gauss_sum_naive_oracle():
    for q in (6, 9, 10):
        for k in (2, 3):
            direct = sum(cmath.exp(2j * cmath.pi * (x ** k % q) / q)
                         for x in range(1, q + 1))
            assert abs(gauss_sum(q, 1, k) - direct) < 1e-9


def test_complete_sum_normalization():
    ctx = build_context(2, 3, 10 ** 4)
    assert abs(complete_sum_Sqa(1, 0, ctx) - 1) < 1e-15


def test_complete_sum_vanishing():
    # S_{q,a} vanishes for 2 <= q <= w, gcd(a, q) = 1
    ctx = build_context(2, 3, 10 ** 4)
    for q in (2, 3):
        for a in range(1, q):
            if math.gcd(a, q) == 1:
                assert abs(complete_sum_Sqa(q, a, ctx)) < 1e-9


def test_local_density_matches_direct_count():
    eq = DiagonalEquation(1, (1, 1, -1))
    ld = local_density(eq, 3, 1)
    direct = sum(1 for x in range(3) for y in range(3) for z in range(3)
                 if (x + y - z) % 3 == 0)
    assert ld.value == direct / 3 ** 2


def test_local_density_depth_guard():
    with pytest.raises(RangeError):
        local_density(PYTH, 2, 0)


def test_singular_series_pyth():
    est = singular_series(PYTH, 500)
    assert abs(est.value - 0.74074) < 5e-3
    assert est.max_imag_residue < 1e-9
    assert est.stabilization_gap < 0.01


def test_singular_series_rejects_definite():
    with pytest.raises(RangeError):
        singular_series(DiagonalEquation(2, (1, 1, 1)))
    with pytest.raises(RangeError):
        singular_series(PYTH, 5000)


def test_singular_integral_known_volume():
    # s=2, k=1, x - y = 0 on [0,1]^2: density of x-y at 0 is 1
    eq = DiagonalEquation(1, (1, -1))
    j = singular_integral(eq, samples=200_000, seed=0)
    assert abs(j.estimate - 1.0) < 0.05
    assert j.stderr < 0.05


def test_singular_integral_triangle():
    # x + y - z = 0 on [0,1]^3: density at 0 equals area {x+y<=1} = 1/2
    eq = DiagonalEquation(1, (1, 1, -1))
    j = singular_integral(eq, samples=200_000, seed=0)
    assert abs(j.estimate - 0.5) < 0.05


def test_singular_integral_deterministic():
    eq = DiagonalEquation(1, (1, -1))
    a = singular_integral(eq, samples=50_000, seed=3)
    b = singular_integral(eq, samples=50_000, seed=3)
    assert a.estimate == b.estimate


def test_predict_linear_equation():
    eq = DiagonalEquation(1, (1, 1, -1))
    pred = predict_count(eq, 1000, samples=400_000, seed=0)
    # exact count is floor((N-1)N/2) ~ N^2/2
    assert abs(pred.value - 499500) / 499500 < 0.1
    assert pred.low <= pred.value <= pred.high
