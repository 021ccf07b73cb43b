"""Exact integer arithmetic, prime/smooth sieves, and the Dickman rho function."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import RangeError
from .sets import IntegerSet

# Wide integers are exact Python ints, but the public contract is a fixed
# 128-bit range with explicit overflow detection.
WIDE_MAX = (1 << 128) - 1


def sieve_primes(limit: int) -> list[int]:
    """All primes in [2, limit], ascending."""
    if limit < 2:
        raise RangeError(f"prime sieve needs limit >= 2, got {limit}")
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p::p] = False
    return np.flatnonzero(mask).tolist()


def smallest_prime_factors(limit: int) -> np.ndarray:
    """spf[x] = least prime factor of x, for x in [2, limit] (spf[0]=spf[1]=0)."""
    if limit < 2:
        raise RangeError(f"spf sieve needs limit >= 2, got {limit}")
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if spf[p] == 0:
            spf[p::p] = np.where(spf[p::p] == 0, p, spf[p::p])
            if p * p > limit:
                # remaining unset entries are primes; finish in one pass
                rest = np.flatnonzero(spf == 0)
                spf[rest] = rest
                spf[:2] = 0
                break
    return spf


@dataclass(frozen=True)
class SmoothParams:
    """Parameters for the smooth-number sieve: S(N; R)."""

    N: int
    R: int

    def __post_init__(self):
        if self.N < 1:
            raise RangeError(f"N must be positive, got {self.N}")
        if not 2 <= self.R <= self.N:
            raise RangeError(f"need 2 <= R <= N, got R={self.R}, N={self.N}")

    @classmethod
    def from_eta(cls, N: int, eta: float) -> "SmoothParams":
        """R = N^eta, the parametrisation used by the density estimates."""
        return cls(N, max(2, int(N ** eta)))


def smooth_sieve(params: SmoothParams) -> IntegerSet:
    """S(N; R) = {x in [N] : every prime factor of x is <= R}.  1 is smooth."""
    n, r = params.N, params.R
    mask = np.zeros(n + 1, dtype=bool)
    mask[1] = True
    if n >= 2:
        spf = smallest_prime_factors(n)
        spf_l = spf.tolist()
        mask_l = mask.tolist()
        for x in range(2, n + 1):
            p = spf_l[x]
            mask_l[x] = p <= r and mask_l[x // p]
        mask = np.asarray(mask_l, dtype=bool)
    return IntegerSet.from_mask(mask)


def largest_prime_factor(x: int) -> int:
    """P+(x) by trial division; P+(1) = 1."""
    if x < 1:
        raise RangeError("positive integers only")
    best, d = 1, 2
    while d * d <= x:
        while x % d == 0:
            best, x = d, x // d
        d += 1 if d == 2 else 2
    return max(best, x) if x > 1 else best


def is_smooth(x: int, bound: int) -> bool:
    return largest_prime_factor(x) <= bound


def pow_checked(x: int, k: int) -> int:
    """Exact x**k, refusing results beyond the 128-bit wide-integer range."""
    if x < 0:
        raise RangeError("base must be nonnegative")
    if k < 1:
        raise RangeError("exponent must be positive")
    result = x ** k
    if result > WIDE_MAX:
        raise OverflowError(f"{x}**{k} exceeds the 128-bit wide-integer range")
    return result


# ---------------------------------------------------------------------------
# Dickman-de Bruijn rho
#
# rho(u) = 1 on [0,1] and u*rho'(u) = -rho(u-1) beyond.  We march the delay
# ODE with classical RK4 on a uniform grid whose step divides 1, so the kink
# points at integer u land on grid nodes and each panel is smooth.  Delayed
# evaluations at half-steps use cubic Hermite interpolation on the previous
# unit interval (the derivative there is already known from the ODE itself).
# ---------------------------------------------------------------------------

_RHO_STEP = 1.0 / 1024
_RHO_UMAX = 20.0
_rho_grid: tuple[np.ndarray, np.ndarray] | None = None  # (values, derivatives)


def _rho_build() -> tuple[np.ndarray, np.ndarray]:
    h = _RHO_STEP
    n_per_unit = int(round(1.0 / h))
    n_total = int(round(_RHO_UMAX / h))
    vals = np.empty(n_total + 1)
    derivs = np.zeros(n_total + 1)
    vals[: n_per_unit + 1] = 1.0  # rho == 1 on [0, 1]
    derivs[n_per_unit] = -1.0  # right derivative at the u=1 kink

    def value_at(idx_float: float) -> float:
        # Hermite interpolation at a (possibly fractional) grid index that has
        # already been computed.  rho' is continuous except at u=1, and the
        # whole panel [0, 1] is constant, so the early-return keeps the kink
        # derivative out of interpolation on [1-h, 1].
        if idx_float <= n_per_unit:
            return 1.0
        i = int(math.floor(idx_float))
        t = idx_float - i
        if t == 0.0:
            return float(vals[i])
        y0, y1 = vals[i], vals[i + 1]
        d0, d1 = derivs[i] * h, derivs[i + 1] * h
        h00 = (1 + 2 * t) * (1 - t) ** 2
        h10 = t * (1 - t) ** 2
        h01 = t * t * (3 - 2 * t)
        h11 = t * t * (t - 1)
        return float(h00 * y0 + h10 * d0 + h01 * y1 + h11 * d1)

    # rho' = g(u) = -rho(u-1)/u does not involve rho(u) itself, so the march
    # is Simpson quadrature of g with Hermite-interpolated midpoints.
    for i in range(n_per_unit, n_total):
        u = i * h
        g0 = -value_at(i - n_per_unit) / u
        gm = -value_at(i - n_per_unit + 0.5) / (u + h / 2)
        g1 = -value_at(i - n_per_unit + 1.0) / (u + h)
        vals[i + 1] = vals[i] + (h / 6) * (g0 + 4 * gm + g1)
        derivs[i + 1] = g1
    return vals, derivs


def dickman_rho(u: float, tol: float = 1e-10) -> float:
    """rho(u) to within tol (the marching grid is accurate to ~1e-12)."""
    if tol < 1e-12:
        raise RangeError("tolerances below 1e-12 are not supported")
    if not 0 <= u <= _RHO_UMAX:
        raise RangeError(f"u must lie in [0, {_RHO_UMAX}], got {u}")
    if u <= 1:
        return 1.0
    global _rho_grid
    if _rho_grid is None:
        _rho_grid = _rho_build()
    vals, derivs = _rho_grid
    h = _RHO_STEP
    idx = u / h
    i = int(math.floor(idx))
    if i >= vals.size - 1:
        return float(vals[-1])
    t = idx - i
    if t == 0.0:
        return float(vals[i])
    y0, y1 = vals[i], vals[i + 1]
    d0, d1 = derivs[i] * h, derivs[i + 1] * h
    h00 = (1 + 2 * t) * (1 - t) ** 2
    h10 = t * (1 - t) ** 2
    h01 = t * t * (3 - 2 * t)
    h11 = t * t * (t - 1)
    return float(h00 * y0 + h10 * d0 + h01 * y1 + h11 * d1)
