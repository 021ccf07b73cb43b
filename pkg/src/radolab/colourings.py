"""Colourings, monochromatic statistics, homogeneity, and Rado numbers."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import backend
from .arith import sieve_primes
from .counting import CountRequest, count_bruteforce
from .equations import DiagonalEquation, rado_criterion
from .errors import ConstructionError, RangeError, UnsupportedDegreeError
from .sets import IntegerSet


class Colouring:
    """A colouring of a finite base set with colours 1..r."""

    __slots__ = ("base", "r", "_colour")

    def __init__(self, base: IntegerSet, r: int, assignment):
        if r < 1:
            raise RangeError(f"colour count must be >= 1, got {r}")
        col = np.zeros(base.limit + 1, dtype=np.int64)
        if isinstance(assignment, dict):
            for x, c in assignment.items():
                col[x] = c
        else:
            arr = np.asarray(assignment, dtype=np.int64)
            if arr.size == base.limit:  # colours for 1..N
                col[1:] = arr
            else:
                col = arr.astype(np.int64).copy()
        members = base.mask()
        if np.any(col[members] < 1) or np.any(col[members] > r):
            raise RangeError("every base member needs a colour in [1, r]")
        col[~members[:col.size]] = 0
        col.setflags(write=False)
        self.base = base
        self.r = int(r)
        self._colour = col

    def colour(self, x: int) -> int:
        if x not in self.base:
            raise RangeError(f"{x} is not in the base set")
        return int(self._colour[x])

    def colour_class(self, c: int) -> IntegerSet:
        mask = self._colour == c
        return IntegerSet.from_mask(mask)

    def classes(self) -> list[IntegerSet]:
        return [self.colour_class(c) for c in range(1, self.r + 1)]

    def colours_used(self) -> int:
        return len(set(self._colour[self.base.mask()].tolist()))

    def __eq__(self, other):
        return (isinstance(other, Colouring) and self.base == other.base
                and self.r == other.r
                and np.array_equal(self._colour, other._colour))

    def __repr__(self):
        return f"Colouring(N={self.base.limit}, r={self.r})"

    # -- serialisation ------------------------------------------------------

    def to_text(self) -> str:
        """Header "N r" then one colour digit per integer (r <= 9 only)."""
        if self.r > 9:
            raise RangeError("digit format supports at most 9 colours")
        if self.base != IntegerSet.interval(self.base.limit):
            raise RangeError("digit format requires a full-interval base")
        digits = "".join(str(int(c)) for c in self._colour[1:])
        return f"{self.base.limit} {self.r}\n{digits}\n"

    @classmethod
    def from_text(cls, text: str) -> "Colouring":
        header, digits = text.split("\n", 1)
        n, r = (int(v) for v in header.split())
        arr = [int(ch) for ch in digits.strip()]
        if len(arr) != n:
            raise RangeError(f"expected {n} digits, got {len(arr)}")
        return cls(IntegerSet.interval(n), r, arr)

    def to_json(self) -> str:
        return json.dumps({
            "n": self.base.limit, "r": self.r,
            "classes": [json.loads(self.colour_class(c).to_runs_json())["runs"]
                        for c in range(1, self.r + 1)],
        })

    @classmethod
    def from_json(cls, text: str) -> "Colouring":
        doc = json.loads(text)
        col = np.zeros(doc["n"] + 1, dtype=np.int64)
        mask = np.zeros(doc["n"] + 1, dtype=bool)
        for c, runs in enumerate(doc["classes"], start=1):
            for start, length in runs:
                col[start:start + length] = c
                mask[start:start + length] = True
        return cls(IntegerSet.from_mask(mask), doc["r"], col)


@dataclass(frozen=True)
class HomogeneityReport:
    M: int
    verdict: bool
    witness_q: int | None


def mono_count(eq: DiagonalEquation, col: Colouring,
               distinct_only: bool = False) -> list[int]:
    """Exact count of monochromatic solutions, per colour."""
    out = []
    for c in range(1, col.r + 1):
        cls = col.colour_class(c)
        if cls.cardinality == 0:
            out.append(0)
            continue
        req = CountRequest(eq, (cls,) * eq.s, distinct_only=distinct_only)
        out.append(int(count_bruteforce(req)))
    return out


def is_homogeneous(B: IntegerSet, M: int, S: IntegerSet) -> HomogeneityReport:
    """Does B meet q·[M] for every q with q·[M] contained in S?"""
    if M < 1:
        raise RangeError("M must be positive")
    n = S.limit
    if M > n:
        warnings.warn(f"M={M} exceeds the ambient limit {n}: "
                      "no progression fits, so the verdict is vacuously true")
        return HomogeneityReport(M, True, None)
    for q in range(1, n // M + 1):
        if all(q * i in S for i in range(1, M + 1)):
            if not any(q * i in B for i in range(1, M + 1)):
                return HomogeneityReport(M, False, q)
    return HomogeneityReport(M, True, None)


def homogeneous_density(B: IntegerSet, M: int) -> tuple[int, Fraction, bool]:
    """(|B|, the pigeonhole floor(N/M)/M, whether |B| meets it)."""
    if M < 1:
        raise RangeError("M must be positive")
    bound = Fraction(B.limit // M, M)
    return B.cardinality, bound, Fraction(B.cardinality) >= bound


def dilate_colouring(col: Colouring, q: int, M: int) -> Colouring:
    """Colouring of [M] by x -> colour(qx), with labels compacted so unused
    colours disappear (the colour-count can only drop)."""
    if q < 1 or M < 1:
        raise RangeError("q and M must be positive")
    relabel: dict[int, int] = {}
    arr = []
    for x in range(1, M + 1):
        c = col.colour(q * x)  # raises when qx is outside the base
        if c not in relabel:
            relabel[c] = len(relabel) + 1
        arr.append(relabel[c])
    return Colouring(IntegerSet.interval(M), len(relabel), arr)


# ---------------------------------------------------------------------------
# Solution-free colouring search
# ---------------------------------------------------------------------------

def solution_value_sets(eq: DiagonalEquation, N: int,
                        distinct: bool = False) -> list[tuple[int, ...]]:
    """Distinct value sets (sorted tuples) of solutions over [N]^s.

    A colouring has a monochromatic solution iff one of these value sets is
    contained in a single colour class, so the search only needs the sets.
    """
    s = eq.s
    coeffs = eq.coeffs
    k = eq.k
    powers = [x ** k for x in range(N + 1)]
    out: set[tuple[int, ...]] = set()

    def rec(i: int, partial: int, chosen: tuple[int, ...]):
        if i == s - 1:
            # solve c_s * x^k = -partial
            c = coeffs[-1]
            if partial % c:
                return
            target = -partial // c
            if target < 1:
                return
            x = round(target ** (1.0 / k))
            for cand in (x - 1, x, x + 1):
                if 1 <= cand <= N and powers[cand] == target:
                    tup = chosen + (cand,)
                    if distinct and len(set(tup)) < s:
                        return
                    out.add(tuple(sorted(set(tup))))
            return
        for x in range(1, N + 1):
            rec(i + 1, partial + coeffs[i] * powers[x], chosen + (x,))

    rec(0, 0, ())
    return sorted(out)


@dataclass(frozen=True)
class SearchOutcome:
    status: str  # "found" | "none-within-N" | "budget-exhausted"
    colouring: Colouring | None
    nodes: int


def search_solution_free(eq: DiagonalEquation, N: int, r: int,
                         budget: int = 10 ** 9, distinct: bool = False,
                         force_python: bool = False) -> SearchOutcome:
    """Backtracking search for an r-colouring of [N] with no monochromatic
    solution; "none-within-N" certifies exhaustive refutation."""
    if N < 1 or r < 1:
        raise RangeError("N and r must be positive")
    vsets = solution_value_sets(eq, N, distinct=distinct)
    by_max: list[list[tuple[int, ...]]] = [[] for _ in range(N + 1)]
    for vs in vsets:
        by_max[vs[-1]].append(vs[:-1])
    con_start = [0] * (N + 1)
    con_cnt = [0] * (N + 1)
    con_off: list[int] = []
    con_len: list[int] = []
    elems: list[int] = []
    for m in range(1, N + 1):
        con_start[m] = len(con_off)
        for others in by_max[m]:
            con_off.append(len(elems))
            con_len.append(len(others))
            elems.extend(others)
        con_cnt[m] = len(by_max[m])
    status, colours, nodes = backend.search(
        N, r, con_start, con_cnt, con_off, con_len, elems, budget,
        force_python=force_python)
    if status == backend.FOUND:
        col = Colouring(IntegerSet.interval(N), r, colours)
        if any(mono_count(eq, col, distinct_only=distinct)):
            raise AssertionError("search returned a non-solution-free colouring")
        return SearchOutcome("found", col, nodes)
    if status == backend.REFUTED:
        return SearchOutcome("none-within-N", None, nodes)
    return SearchOutcome("budget-exhausted", None, nodes)


@dataclass(frozen=True)
class RadoNumberResult:
    value: int | None  # least N with no solution-free colouring, if <= cap
    exceeded_cap: bool
    indeterminate: bool  # some search hit its node budget
    nodes: int


def rado_number(eq: DiagonalEquation, r: int, distinct: bool = True,
                n_max: int = 10 ** 4, budget: int = 10 ** 9,
                force_python: bool = False) -> RadoNumberResult:
    """Least N such that every r-colouring of [N] has a monochromatic
    solution (coordinates pairwise distinct by default)."""
    total_nodes = 0
    for n in range(1, n_max + 1):
        outcome = search_solution_free(eq, n, r, budget=budget,
                                       distinct=distinct,
                                       force_python=force_python)
        total_nodes += outcome.nodes
        if outcome.status == "none-within-N":
            return RadoNumberResult(n, False, False, total_nodes)
        if outcome.status == "budget-exhausted":
            return RadoNumberResult(None, False, True, total_nodes)
    return RadoNumberResult(None, True, False, total_nodes)


# ---------------------------------------------------------------------------
# Necessity witness for the Rado criterion
# ---------------------------------------------------------------------------

class WitnessColouring:
    """Colour n by its least significant nonzero digit in base p.

    When no nonempty subset of the coefficients sums to 0 mod p, the induced
    (p-1)-colouring of the positive integers admits no monochromatic solution
    of the linear equation: dividing a would-be solution by the smallest
    power of p present forces a zero subset sum mod p.
    """

    __slots__ = ("eq", "p")

    def __init__(self, eq: DiagonalEquation, p: int):
        self.eq = eq
        self.p = int(p)

    @property
    def colours(self) -> int:
        return self.p - 1

    def colour(self, n: int) -> int:
        if n < 1:
            raise RangeError("positive integers only")
        while n % self.p == 0:
            n //= self.p
        return n % self.p

    def colouring(self, N: int) -> Colouring:
        return Colouring(IntegerSet.interval(N), self.colours,
                         [self.colour(n) for n in range(1, N + 1)])


def rado_witness_colouring(eq: DiagonalEquation, p: int | None = None,
                           p_cap: int = 10 ** 5) -> WitnessColouring:
    """Witness colouring for an equation failing the subset-sum criterion."""
    if eq.k != 1:
        raise UnsupportedDegreeError("the digit witness works for degree 1")
    if rado_criterion(eq).holds:
        raise RangeError("the criterion holds; no witness colouring exists")

    def admissible(prime: int) -> bool:
        # reachable sums of nonempty subsets, mod prime
        nonempty: set[int] = set()
        acc = {0}
        for c in eq.coeffs:
            new = {(v + c) % prime for v in acc}
            nonempty |= new
            acc |= new
        return 0 not in nonempty

    floor = sum(abs(c) for c in eq.coeffs)
    if p is not None:
        if p <= floor or not admissible(p):
            raise RangeError(f"p={p} is not an admissible witness prime")
        return WitnessColouring(eq, p)
    for prime in sieve_primes(p_cap):
        if prime > floor and admissible(prime):
            return WitnessColouring(eq, prime)
    raise ConstructionError(f"no admissible prime below {p_cap}")
