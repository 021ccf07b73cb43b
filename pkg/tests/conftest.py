"""Shared fixtures: the equation battery used across the test suite.

The battery spans degrees k in {1, 2, 3} and arities s in {3, 4, 5} with
mixed-sign coefficients, and includes the named special cases: the two
criterion-failing linear equations, the zero-coefficient-sum quadrics, and
the certificate-amenable quadrics.
"""

from radolab import DiagonalEquation

# (k, coeffs) spanning k x s with mixed signs
BATTERY = [
    (1, (1, 1, -1)),
    (1, (2, 3, -4)),
    (1, (1, 2, -1, -2)),
    (1, (1, 1, 1, 1, -4)),
    (1, (1, -2)),
    (1, (1, 1, -3)),
    (2, (1, 1, -1)),
    (2, (1, 9, -2, -8)),
    (2, (3, 1, -2, -2)),
    (2, (1, 1, 1, 1, -1)),
    (2, (1, 1, 1, -1, -1, -1, 7)),
    (3, (1, 1, -1)),
    (3, (1, 2, -2, -1)),
    (3, (1, 1, 1, -1, -2)),
]

PYTH = DiagonalEquation(2, (1, 1, 1, 1, -1))
SCHUR = DiagonalEquation(1, (1, 1, -1))

# linear battery members for which the subset-sum criterion fails
CRITERION_FAILING = [(1, (1, -2)), (1, (1, 1, -3)), (1, (2, 3, -4))]

# degree-2 battery members with zero coefficient sum (certificates expected)
ZERO_SUM_QUADRICS = [(2, (1, 9, -2, -8)), (2, (3, 1, -2, -2))]

# degree-2 battery members meeting the size-6 zero-sum-subset hypotheses
AMENABLE_QUADRICS = [(2, (1, 1, 1, -1, -1, -1, 7))]


def battery_equations():
    return [DiagonalEquation(k, c) for k, c in BATTERY]
