"""The W-trick pipeline: modulus construction, greedy density pigeonhole,
the A -> A₁ and B -> B₁ transforms, the weight ν, and the transfer check."""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import SmoothParams, is_smooth, pow_checked, sieve_primes, smooth_sieve
from .counting import CountRequest, WeightFunction, count_bruteforce
from .equations import SplitEquation
from .errors import ConstructionError, RangeError
from .sets import IntegerSet


def modulus_for(k: int, w: int) -> int:
    """W = 2·Π_{p<=w} p² for squares; W = k^{k-1}·Π_{p<=w} pᵏ for k >= 3."""
    if k < 2:
        raise RangeError("the construction needs degree >= 2")
    if w < 2:
        raise RangeError("the prime cutoff must be >= 2")
    prod = 1
    for p in sieve_primes(w):
        prod *= p ** (2 if k == 2 else k)
    return 2 * prod if k == 2 else k ** (k - 1) * prod


@dataclass(frozen=True)
class CircleContext:
    """Bundle (k, w, W, ξ, ζ, N, P, X) tying the residue trick to the
    exponential-sum layer.  (kW)^{1/k} is always an integer."""

    k: int
    w: int
    N: int
    xi: int = 1
    zeta: int = 1
    eta: float = 0.25
    W: int = field(init=False)
    P: int = field(init=False)
    X: int = field(init=False)
    root: int = field(init=False)  # (kW)^{1/k}

    def __post_init__(self):
        W = modulus_for(self.k, self.w)
        if math.gcd(self.xi, W) != 1:
            raise RangeError(f"xi={self.xi} is not coprime to W={W}")
        if self.zeta < 1 or not is_smooth(self.zeta, self.w):
            raise RangeError(f"zeta={self.zeta} must be {self.w}-smooth")
        if not 0 < self.eta <= 1:
            raise RangeError("eta must lie in (0, 1]")
        if self.N < 1:
            raise RangeError("N must be positive")
        P = self.N // self.zeta
        if P < 1:
            raise RangeError("N too small for the requested dilation")
        pow_checked(P, self.k)  # overflow guard for X
        root = round((self.k * W) ** (1.0 / self.k))
        while root ** self.k < self.k * W:
            root += 1
        if root ** self.k != self.k * W:
            raise AssertionError("kW is not a perfect k-th power")
        object.__setattr__(self, "W", W)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "X", P ** self.k // (self.k * W))
        object.__setattr__(self, "root", root)

    def lift_index(self, x: int) -> int:
        """n = ((Wx + ξ)ᵏ − ξᵏ) / (kW), an integer for every x.

        Computed with exact arbitrary precision: the lift feeds the complete
        exponential sums, which are exempt from the 128-bit range contract.
        """
        num = (self.W * x + self.xi) ** self.k - self.xi ** self.k
        q, rem = divmod(num, self.k * self.W)
        if rem:
            raise AssertionError("integrality invariant violated")
        return q

    def to_json(self) -> str:
        return json.dumps({"k": self.k, "w": self.w, "W": self.W,
                           "xi": self.xi, "zeta": self.zeta, "N": self.N,
                           "eta": self.eta})

    @classmethod
    def from_json(cls, text: str) -> "CircleContext":
        doc = json.loads(text)
        ctx = cls(k=doc["k"], w=doc["w"], N=doc["N"], xi=doc.get("xi", 1),
                  zeta=doc.get("zeta", 1), eta=doc.get("eta", 0.25))
        if "W" in doc and doc["W"] != ctx.W:
            raise RangeError(f"stated W={doc['W']} disagrees with {ctx.W}")
        return ctx


def build_context(k: int, w: int, N: int, xi: int = 1, zeta: int = 1,
                  eta: float = 0.25) -> CircleContext:
    return CircleContext(k=k, w=w, N=N, xi=xi, zeta=zeta, eta=eta)


# ---------------------------------------------------------------------------
# Greedy pigeonhole
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GreedyReport:
    zeta: int
    xi: int
    count_A: int
    count_S: int
    relative_density: float


def _smooth_integers(bound: int, w: int):
    """Yield w-smooth positive integers <= bound in increasing order."""
    primes = sieve_primes(w)
    heap = [1]
    seen = {1}
    while heap:
        z = heapq.heappop(heap)
        yield z
        for p in primes:
            nz = z * p
            if nz <= bound and nz not in seen:
                seen.add(nz)
                heapq.heappush(heap, nz)


def greedy_split(A: IntegerSet, S: IntegerSet, w: int, W: int,
                 delta: float, eta: float = 0.25) -> GreedyReport:
    """Scan for a w-smooth ζ and ξ coprime to W with the class
    {ζ(ξ+Wx)} at least half as dense in A as in S."""
    if not 0 < delta <= 1:
        raise RangeError("delta must lie in (0, 1]")
    n = S.limit
    bound = max(1, math.ceil(4 * (delta * eta) ** -2 * 10 ** (2 * w)))
    for zeta in _smooth_integers(min(bound, n), w):
        for xi in range(1, W + 1):
            if math.gcd(xi, W) != 1:
                continue
            vals = range(zeta * xi, n + 1, zeta * W)
            count_s = sum(1 for v in vals if v in S)
            if count_s == 0:
                continue
            count_a = sum(1 for v in vals if v in A)
            if 2 * count_a >= delta * count_s:
                return GreedyReport(zeta, xi, count_a, count_s,
                                    count_a / count_s)
    raise ConstructionError(
        "no qualifying (zeta, xi) below the pigeonhole scan bound; "
        "the density precondition |A| >= delta|S| is likely violated")


# ---------------------------------------------------------------------------
# Transforms
# ---------------------------------------------------------------------------

def _admissible_x(ctx: CircleContext):
    """x >= 1 with Wx + ξ <= P."""
    return range(1, (ctx.P - ctx.xi) // ctx.W + 1)


def _smooth_filter(ctx: CircleContext, smooth: IntegerSet | None) -> IntegerSet | None:
    if ctx.k == 2:
        return None
    if smooth is not None:
        return smooth
    params = SmoothParams.from_eta(ctx.P, ctx.eta)
    return smooth_sieve(params)


def transform_A1(A: IntegerSet, ctx: CircleContext,
                 smooth: IntegerSet | None = None) -> IntegerSet:
    """A₁ = {((Wx+ξ)ᵏ − ξᵏ)/(kW) : ζ(Wx+ξ) ∈ A, smoothness filter for k>=3}."""
    filt = _smooth_filter(ctx, smooth)
    members = []
    for x in _admissible_x(ctx):
        y = ctx.W * x + ctx.xi
        if ctx.zeta * y > A.limit or ctx.zeta * y not in A:
            continue
        if filt is not None and y not in filt:
            continue
        n = ctx.lift_index(x)
        if n > 0:
            members.append(n)
    return IntegerSet(max(ctx.X, 1), members)


def transform_B1(B: IntegerSet, ctx: CircleContext) -> IntegerSet:
    """B₁ = {y : ζ·(kW)^{1/k}·y ∈ B}."""
    step = ctx.zeta * ctx.root
    limit = max(B.limit // step, 1)
    members = [y for y in range(1, limit + 1) if step * y in B]
    return IntegerSet(limit, members)


def weight_nu(ctx: CircleContext, smooth: IntegerSet | None = None) -> WeightFunction:
    """The pseudorandom majorant ν on [X].

    Squares: ν(n) = Wx+ξ at n = ((Wx+ξ)²−ξ²)/(2W).  Higher degrees:
    ν(n) = x^{k−1} at n = (xᵏ−ξᵏ)/(kW) for smooth x ≡ ξ (mod W).
    """
    vals: dict[int, Fraction] = {}
    if ctx.k == 2:
        for x in _admissible_x(ctx):
            n = ctx.lift_index(x)
            if 1 <= n <= ctx.X:
                vals[n] = Fraction(ctx.W * x + ctx.xi)
    else:
        filt = _smooth_filter(ctx, smooth)
        for x in _admissible_x(ctx):
            y = ctx.W * x + ctx.xi
            if y not in filt:
                continue
            n = ctx.lift_index(x)
            if 1 <= n <= ctx.X:
                vals[n] = Fraction(y ** (ctx.k - 1))
    return WeightFunction(max(ctx.X, 1), vals)


# ---------------------------------------------------------------------------
# Transfer inequality
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TransferReport:
    lhs: int  # T_k(A; B)
    rhs: int  # T₁(A₁; B₁)
    holds: bool
    lifted: bool  # every right-hand solution lifted and re-verified
    lift_count: int


def verify_transfer(A: IntegerSet, B: IntegerSet, ctx: CircleContext,
                    smooth: IntegerSet | None = None,
                    max_lifts: int = 10 ** 6) -> TransferReport:
    """Check T_k(A;B) >= T₁(A₁;B₁) by exact counting, and re-verify every
    counted right-hand solution through its explicit lift."""
    k = ctx.k
    a1 = transform_A1(A, ctx, smooth=smooth)
    b1 = transform_B1(B, ctx)
    lhs_eq = SplitEquation(l=k, k=k, lam=(1, -1), mu=(1, 1, 1))
    lhs = int(count_bruteforce(CountRequest(lhs_eq, (A, A, B, B, B))))
    rhs_eq = SplitEquation(l=1, k=k, lam=(1, -1), mu=(1, 1, 1))
    rhs = int(count_bruteforce(CountRequest(rhs_eq, (a1, a1, b1, b1, b1))))

    # enumerate right-hand solutions and lift each one
    inv = {}
    for x in _admissible_x(ctx):
        n = ctx.lift_index(x)
        if n in a1:
            inv[n] = ctx.zeta * (ctx.W * x + ctx.xi)
    step = ctx.zeta * ctx.root
    b1m = b1.members().tolist()
    lift_count = 0
    lifted = True
    if b1m and a1.cardinality:
        pair_sums: dict[int, list[tuple[int, int]]] = {}
        for z1 in b1m:
            for z2 in b1m:
                pair_sums.setdefault(z1 ** k + z2 ** k, []).append((z1, z2))
        a1m = a1.members().tolist()
        for n1 in a1m:
            for n2 in a1m:
                d = n1 - n2
                if d < 2:
                    continue
                for z3 in b1m:
                    rest = d - z3 ** k
                    if rest < 2:
                        break
                    for z1, z2 in pair_sums.get(rest, ()):
                        lift_count += 1
                        if lift_count > max_lifts:
                            raise ConstructionError(
                                f"more than {max_lifts} lifts requested")
                        ax1, ax2 = inv[n1], inv[n2]
                        ys = (step * z1, step * z2, step * z3)
                        if (ax1 ** k - ax2 ** k
                                != ys[0] ** k + ys[1] ** k + ys[2] ** k):
                            lifted = False
                        if not (ax1 in A and ax2 in A
                                and all(y in B for y in ys)):
                            lifted = False
    if lift_count != rhs:
        lifted = False
    return TransferReport(lhs, rhs, lhs >= rhs, lifted, lift_count)
