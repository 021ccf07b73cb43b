"""Exact solution counting for diagonal equations.

Two independent exact routes are provided and never merged:

* ``count_bruteforce`` — meet-in-the-middle over partial-sum histograms;
* ``count_orthogonality`` — exact cyclic convolution over Z/Q realised with
  number-theoretic transforms modulo several word-sized primes plus CRT.

Both return identical values on every valid request, which is what makes each
usable as an oracle for the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from .equations import DiagonalEquation, SplitEquation
from .errors import RangeError, ResourceLimitError, ShapeError
from .sets import IntegerSet

Equation = Union[DiagonalEquation, SplitEquation]

# Dense int64 histograms are used while every intermediate value provably fits;
# otherwise the counter falls back to exact big-integer dictionaries.
_INT64_SAFE = 1 << 62
_DEFAULT_TUPLE_BUDGET = 10 ** 13
_MAX_SPAN = 1 << 28  # histogram length cap per half


class WeightFunction:
    """Nonnegative rational weights with finite support inside [1, X]."""

    __slots__ = ("limit", "_values")

    def __init__(self, limit: int, values: dict[int, Fraction] | None = None):
        if limit < 1:
            raise RangeError(f"support limit must be >= 1, got {limit}")
        vals: dict[int, Fraction] = {}
        for x, w in (values or {}).items():
            w = Fraction(w)
            if w < 0:
                raise RangeError(f"negative weight at {x}")
            if not 1 <= x <= limit:
                raise RangeError(f"support point {x} outside [1, {limit}]")
            if w != 0:
                vals[int(x)] = w
        self.limit = int(limit)
        self._values = vals

    @classmethod
    def indicator(cls, s: IntegerSet) -> "WeightFunction":
        return cls(s.limit, {int(x): Fraction(1) for x in s.members()})

    @classmethod
    def ones(cls, limit: int) -> "WeightFunction":
        return cls(limit, {x: Fraction(1) for x in range(1, limit + 1)})

    def __call__(self, x: int) -> Fraction:
        return self._values.get(x, Fraction(0))

    def support(self) -> list[int]:
        return sorted(self._values)

    def l1(self) -> Fraction:
        return sum(self._values.values(), Fraction(0))

    def is_indicator(self) -> bool:
        return all(w == 1 for w in self._values.values())

    def scaled(self, c) -> "WeightFunction":
        c = Fraction(c)
        if c < 0:
            raise RangeError("scale must be nonnegative")
        return WeightFunction(self.limit, {x: w * c for x, w in self._values.items()})

    def integerized(self) -> tuple[list[int], list[int], int]:
        """(support, integer numerators, common denominator)."""
        denom = 1
        for w in self._values.values():
            denom = denom * w.denominator // math.gcd(denom, w.denominator)
        xs = self.support()
        nums = [int(self._values[x] * denom) for x in xs]
        return xs, nums, denom

    def to_dense(self) -> np.ndarray:
        """Float array indexed 0..limit (index 0 unused)."""
        arr = np.zeros(self.limit + 1)
        for x, w in self._values.items():
            arr[x] = float(w)
        return arr

    def restrict(self, s: IntegerSet) -> "WeightFunction":
        """Pointwise product with the indicator of s."""
        return WeightFunction(self.limit,
                              {x: w for x, w in self._values.items() if x in s})

    def __eq__(self, other):
        return (isinstance(other, WeightFunction)
                and self.limit == other.limit and self._values == other._values)

    def __repr__(self):
        return f"WeightFunction(limit={self.limit}, support={len(self._values)})"


Domain = Union[IntegerSet, WeightFunction]


@dataclass(frozen=True)
class CountRequest:
    equation: Equation
    domains: tuple[Domain, ...]
    distinct_only: bool = False
    budget: int = _DEFAULT_TUPLE_BUDGET

    def __post_init__(self):
        object.__setattr__(self, "domains", tuple(self.domains))
        arity = _arity(self.equation)
        if len(self.domains) != arity:
            raise ShapeError(f"equation has {arity} variables, "
                             f"got {len(self.domains)} domains")

    def terms(self) -> list[tuple[int, int, Domain]]:
        """(coefficient, degree, domain) per variable, all moved to one side."""
        eq = self.equation
        if isinstance(eq, DiagonalEquation):
            return [(c, eq.k, d) for c, d in zip(eq.coeffs, self.domains)]
        out = [(c, eq.l, d) for c, d in zip(eq.lam, self.domains[:eq.s])]
        out += [(-c, eq.k, d) for c, d in zip(eq.mu, self.domains[eq.s:])]
        return out


def _arity(eq: Equation) -> int:
    if isinstance(eq, DiagonalEquation):
        return eq.s
    return eq.s + eq.t


def _domain_items(dom: Domain) -> tuple[list[int], list[int], int]:
    """(values, integer weights, denominator) for a domain."""
    if isinstance(dom, IntegerSet):
        xs = dom.members().tolist()
        return xs, [1] * len(xs), 1
    return dom.integerized()


def _term_contribs(coef: int, degree: int, xs: list[int]) -> list[int]:
    return [coef * x ** degree for x in xs]


_SPARSE_CAP = 10 ** 7  # intermediate key-array length cap for the sparse path


class _Histogram:
    """Exact histogram of Σ cᵢxᵢᵏ over a block of variables.

    Three exact representations: dense int64 over the value span, sparse
    int64 (sorted key/mass arrays) when supports are small relative to the
    span, and a Python-int dict when int64 safety cannot be certified.
    """

    def __init__(self, kind: str):
        self.kind = kind  # "dense" | "sparse" | "map"
        self.lo = 0
        self.arr: np.ndarray | None = None
        self.keys: np.ndarray | None = None  # sorted, for "sparse"
        self.masses: np.ndarray | None = None
        self.map: dict[int, int] | None = None

    @classmethod
    def build(cls, parts: list[tuple[list[int], list[int]]],
              dense_ok: bool) -> "_Histogram":
        """parts: per-variable (contribution values, integer weights)."""
        if not dense_ok:
            return cls._build_map(parts)
        lo_tot = sum(min(v) for v, _ in parts)
        hi_tot = sum(max(v) for v, _ in parts)
        span = hi_tot - lo_tot + 1
        dense_cost = span * max(sum(len(v) for v, _ in parts[1:]), 1)
        sparse_cost = math.prod(len(v) for v, _ in parts)
        if sparse_cost <= _SPARSE_CAP and (sparse_cost * 8 < dense_cost
                                           or span > _MAX_SPAN):
            return cls._build_sparse(parts)
        if span > _MAX_SPAN:
            raise ResourceLimitError(
                f"partial-sum span {span} exceeds the histogram "
                f"cap {_MAX_SPAN}")
        h = cls("dense")
        first_vals, first_wts = parts[0]
        lo, hi = min(first_vals), max(first_vals)
        arr = np.zeros(hi - lo + 1, dtype=np.int64)
        np.add.at(arr, np.asarray(first_vals) - lo, np.asarray(first_wts))
        for vals, wts in parts[1:]:
            vlo, vhi = min(vals), max(vals)
            new = np.zeros(arr.size + vhi - vlo, dtype=np.int64)
            for v, w in zip(vals, wts):
                if w:
                    new[v - vlo:v - vlo + arr.size] += w * arr
            arr, lo = new, lo + vlo
        h.lo, h.arr = lo, arr
        return h

    @classmethod
    def _build_sparse(cls, parts) -> "_Histogram":
        keys = np.asarray(parts[0][0], dtype=np.int64)
        masses = np.asarray(parts[0][1], dtype=np.int64)
        for vals, wts in parts[1:]:
            v = np.asarray(vals, dtype=np.int64)
            w = np.asarray(wts, dtype=np.int64)
            keys = (keys[:, None] + v[None, :]).ravel()
            masses = (masses[:, None] * w[None, :]).ravel()
            uniq, inv = np.unique(keys, return_inverse=True)
            agg = np.zeros(uniq.size, dtype=np.int64)
            np.add.at(agg, inv, masses)
            keys, masses = uniq, agg
        h = cls("sparse")
        live = masses != 0
        h.keys, h.masses = keys[live], masses[live]
        return h

    @classmethod
    def _build_map(cls, parts) -> "_Histogram":
        cur: dict[int, int] = {}
        for v, w in zip(*parts[0]):
            if w:
                cur[v] = cur.get(v, 0) + w
        for vals, wts in parts[1:]:
            nxt: dict[int, int] = {}
            for v, w in zip(vals, wts):
                if not w:
                    continue
                for u, m in cur.items():
                    key = u + v
                    nxt[key] = nxt.get(key, 0) + m * w
            cur = nxt
        h = cls("map")
        h.map = cur
        return h

    def dot_negated(self, other: "_Histogram") -> int:
        """Σ_v self[v] * other[-v]."""
        if self.kind == "dense" and other.kind == "dense":
            a, b = self.arr, other.arr
            # overlap of [lo_a, hi_a] with [-hi_b, -lo_b]
            lo = max(self.lo, -(other.lo + b.size - 1))
            hi = min(self.lo + a.size - 1, -other.lo)
            if lo > hi:
                return 0
            seg_a = a[lo - self.lo: hi - self.lo + 1]
            seg_b = b[-lo - other.lo: -hi - other.lo - 1 if -hi - other.lo - 1 >= 0 else None: -1]
            return _int64_or_exact_dot(seg_a, seg_b)
        if self.kind == "sparse" and other.kind == "sparse":
            pos = np.searchsorted(other.keys, -self.keys)
            pos_c = np.minimum(pos, other.keys.size - 1)
            hit = (pos < other.keys.size) & (other.keys[pos_c] == -self.keys)
            return _int64_or_exact_dot(self.masses[hit],
                                       other.masses[pos_c[hit]])
        if self.kind == "sparse" and other.kind == "dense":
            return other.dot_negated(self)
        if self.kind == "dense" and other.kind == "sparse":
            idx = -other.keys - self.lo
            ok = (idx >= 0) & (idx < self.arr.size)
            return _int64_or_exact_dot(self.arr[idx[ok]], other.masses[ok])
        amap = self._as_map()
        bmap = other._as_map()
        if len(amap) > len(bmap):
            amap, bmap = bmap, amap
        return sum(m * bmap.get(-v, 0) for v, m in amap.items())

    def _as_map(self) -> dict[int, int]:
        if self.map is not None:
            return self.map
        if self.kind == "sparse":
            return {int(k): int(m) for k, m in zip(self.keys, self.masses)}
        idx = np.flatnonzero(self.arr)
        return {int(i) + self.lo: int(self.arr[i]) for i in idx}


def _int64_or_exact_dot(a: np.ndarray, b: np.ndarray) -> int:
    ma = int(np.abs(a).max(initial=0))
    mb = int(np.abs(b).max(initial=0))
    if ma * mb * max(a.size, 1) < _INT64_SAFE:
        return int(a @ b) if a.size else 0
    # exact fallback: promote to Python ints
    return int((a.astype(object) * b.astype(object)).sum())


def _safe_dense(terms) -> bool:
    """Can every histogram mass and value stay inside int64?"""
    mass = 1
    maxval = 0
    for coef, degree, dom in terms:
        xs, wts, _ = _domain_items(dom)
        if not xs:
            return True
        mass *= sum(wts)
        maxval += max(abs(coef * x ** degree) for x in xs)
        if mass >= _INT64_SAFE or maxval >= _INT64_SAFE:
            return False
    return True


def _check_budget(terms, budget: int) -> None:
    sizes = []
    names = []
    for i, (_, _, dom) in enumerate(terms):
        n = dom.cardinality if isinstance(dom, IntegerSet) else len(dom.support())
        sizes.append(n)
        names.append(f"domain {i + 1} (size {n})")
    if not sizes:
        return
    order = sorted(range(len(sizes)), key=lambda i: sizes[i])
    prod = 1
    for i in order[:-1]:
        prod *= max(sizes[i], 1)
    if prod > budget:
        largest_small = order[-2] if len(order) > 1 else order[0]
        raise ResourceLimitError(
            f"product of all-but-largest domain sizes {prod} exceeds budget "
            f"{budget}; limiting {names[largest_small]}")


def _plain_count(terms, budget: int) -> tuple[int, int]:
    """(weighted numerator, denominator) over all tuples; MITM over halves."""
    _check_budget(terms, budget)
    items = []
    denom = 1
    for coef, degree, dom in terms:
        xs, wts, d = _domain_items(dom)
        if not xs:
            return 0, 1
        denom *= d
        items.append((_term_contribs(coef, degree, xs), wts))
    if len(items) == 1:
        vals, wts = items[0]
        return sum(w for v, w in zip(vals, wts) if v == 0), denom
    dense_ok = _safe_dense(terms)
    # balance the split by product of support sizes
    order = sorted(range(len(items)), key=lambda i: -len(items[i][0]))
    left_idx, right_idx = [], []
    pl = pr = 1
    for i in order:
        n = len(items[i][0])
        if pl <= pr:
            left_idx.append(i)
            pl *= n
        else:
            right_idx.append(i)
            pr *= n
    if not right_idx:  # single-variable equations
        right_idx = [left_idx.pop()]
    ha = _Histogram.build([items[i] for i in left_idx], dense_ok)
    hb = _Histogram.build([items[i] for i in right_idx], dense_ok)
    return ha.dot_negated(hb), denom


def _set_partitions(n: int):
    """All set partitions of range(n) as tuples of tuples."""
    if n == 1:
        yield ((0,),)
        return
    for smaller in _set_partitions(n - 1):
        for i, block in enumerate(smaller):
            yield smaller[:i] + (block + (n - 1,),) + smaller[i + 1:]
        yield smaller + ((n - 1,),)


def _merge_domains(doms: list[Domain]) -> Domain:
    """Pointwise product of weights over the common range."""
    if all(isinstance(d, IntegerSet) for d in doms):
        limit = min(d.limit for d in doms)
        mask = np.ones(limit + 1, dtype=bool)
        for d in doms:
            mask &= d.mask()[:limit + 1]
        mask[0] = False
        return IntegerSet.from_mask(mask)
    limit = min(d.limit for d in doms)
    vals: dict[int, Fraction] = {}
    base = doms[0]
    points = (base.members().tolist() if isinstance(base, IntegerSet)
              else base.support())
    for x in points:
        if x > limit:
            continue
        w = Fraction(1)
        for d in doms:
            wx = Fraction(1) if isinstance(d, IntegerSet) and x in d else \
                (Fraction(0) if isinstance(d, IntegerSet) else d(x))
            w *= wx
            if w == 0:
                break
        if w != 0:
            vals[x] = w
    return WeightFunction(limit, vals)


def _distinct_by_inclusion_exclusion(req: CountRequest, counter) -> Fraction:
    terms = req.terms()
    degrees = {deg for _, deg, _ in terms}
    s = len(terms)
    if len(degrees) > 1 or s > 6:
        return _distinct_by_filter(req)
    degree = degrees.pop()
    total = Fraction(0)
    for partition in _set_partitions(s):
        sign = 1
        for block in partition:
            b = len(block)
            sign *= (-1) ** (b - 1) * math.factorial(b - 1)
        merged_terms = []
        for block in partition:
            coef = sum(terms[i][0] for i in block)
            dom = _merge_domains([terms[i][2] for i in block])
            merged_terms.append((coef, degree, dom))
        num, den = counter(merged_terms, req.budget)
        total += sign * Fraction(num, den)
    return total


def _distinct_by_filter(req: CountRequest) -> Fraction:
    """Direct enumeration with a repeated-coordinate filter (slow path)."""
    terms = req.terms()
    items = []
    denom = 1
    prod = 1
    for coef, degree, dom in terms:
        xs, wts, d = _domain_items(dom)
        if not xs:
            return Fraction(0)
        denom *= d
        prod *= len(xs)
        items.append((xs, [coef * x ** degree for x in xs], wts))
    if prod > req.budget:
        raise ResourceLimitError(
            f"filtered enumeration needs {prod} tuples, over budget {req.budget}")
    total = 0

    def rec(i, partial, used, weight):
        nonlocal total
        if i == len(items):
            if partial == 0:
                total += weight
            return
        xs, contribs, wts = items[i]
        for x, v, w in zip(xs, contribs, wts):
            if w and x not in used:
                rec(i + 1, partial + v, used | {x}, weight * w)

    rec(0, 0, frozenset(), 1)
    return Fraction(total, denom)


def count_bruteforce(req: CountRequest):
    """Exact solution count (int for indicator domains, Fraction otherwise)."""
    all_sets = all(isinstance(d, IntegerSet) for d in req.domains)
    if req.distinct_only:
        value = _distinct_by_inclusion_exclusion(req, _plain_count)
    else:
        num, den = _plain_count(req.terms(), req.budget)
        value = Fraction(num, den)
    if all_sets:
        assert value.denominator == 1
        return int(value)
    return value


# ---------------------------------------------------------------------------
# Orthogonality counter: exact cyclic convolution over Z/Q via NTT + CRT
# ---------------------------------------------------------------------------

# primes p = c * 2^e + 1 below 2^31 (products of residues stay inside int64)
_NTT_PRIMES = (
    (2013265921, 31),   # 15 * 2^27 + 1
    (1811939329, 13),   # 27 * 2^26 + 1
    (469762049, 3),     # 7 * 2^26 + 1
    (2113929217, 5),    # 63 * 2^25 + 1
)
_MAX_Q_LOG2 = 25


def _power_table(base: int, count: int, p: int) -> np.ndarray:
    """[1, base, base², ...] mod p of the given length, by doubling."""
    table = np.ones(1, dtype=np.int64)
    while table.size < count:
        step = pow(int(base), table.size, p)
        table = np.concatenate([table, table * step % p])
    return table[:count]


def _ntt(a: np.ndarray, p: int, g: int) -> np.ndarray:
    """Forward number-theoretic transform of length a power of two."""
    n = a.size
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    a = a[rev].copy()
    root_order = pow(g, (p - 1) // n, p)
    length = 2
    while length <= n:
        wlen = pow(root_order, n // length, p)
        half = length // 2
        w = _power_table(wlen, half, p)
        blocks = a.reshape(-1, length)
        u = blocks[:, :half].copy()
        v = blocks[:, half:] * w % p
        blocks[:, :half] = (u + v) % p
        blocks[:, half:] = (u - v) % p
        length <<= 1
    return a


def _crt(residues: list[int], moduli: list[int]) -> int:
    x, m = 0, 1
    for r, p in zip(residues, moduli):
        t = (r - x) * pow(m, -1, p) % p
        x += m * t
        m *= p
    return x % m


def min_admissible_q(terms) -> int:
    bound = 0
    for coef, degree, dom in terms:
        limit = dom.limit
        bound += abs(coef) * limit ** degree
    q = 2
    while q <= 2 * bound:
        q <<= 1
    return q


def _orthogonality_count(terms, budget: int, q: int | None) -> tuple[int, int]:
    _check_budget(terms, budget)
    qmin = min_admissible_q(terms)
    if q is None:
        q = qmin
    if q & (q - 1):
        raise RangeError(f"Q must be a power of two, got {q}")
    if q < qmin:
        raise RangeError(f"Q={q} allows wraparound; minimal admissible Q is {qmin}")
    if q > 1 << _MAX_Q_LOG2:
        raise ResourceLimitError(f"Q={q} exceeds the transform cap 2^{_MAX_Q_LOG2}")
    hists = []
    denom = 1
    mass_bound = 1
    for coef, degree, dom in terms:
        xs, wts, d = _domain_items(dom)
        if not xs:
            return 0, 1
        denom *= d
        mass_bound *= sum(wts)
        h = np.zeros(q, dtype=np.int64)
        for x, w in zip(xs, wts):
            h[(coef * x ** degree) % q] += w
        hists.append(h)
    # enough primes that the CRT modulus certainly exceeds the count
    primes = []
    mod = 1
    for p, g in _NTT_PRIMES:
        primes.append((p, g))
        mod *= p
        if mod > 2 * mass_bound:
            break
    residues = []
    moduli = []
    for p, g in primes:
        acc = np.ones(q, dtype=np.int64)
        for h in hists:
            acc = acc * _ntt(h % p, p, g) % p
        # acc entries are < p < 2^31 and q <= 2^25, so the plain sum fits int64
        total = int(acc.sum()) % p
        residues.append(total * pow(q, -1, p) % p)
        moduli.append(p)
    return _crt(residues, moduli), denom


def count_orthogonality(req: CountRequest, Q: int | None = None):
    """Exact count by harmonic analysis over Z/Q; equals count_bruteforce."""
    all_sets = all(isinstance(d, IntegerSet) for d in req.domains)
    if req.distinct_only:
        value = _distinct_by_inclusion_exclusion(
            req, lambda terms, budget: _orthogonality_count(terms, budget, Q))
    else:
        num, den = _orthogonality_count(req.terms(), req.budget, Q)
        value = Fraction(num, den)
    if all_sets:
        assert value.denominator == 1
        return int(value)
    return value


# ---------------------------------------------------------------------------
# Named counting operators
# ---------------------------------------------------------------------------

def _as_weight(d: Domain) -> WeightFunction:
    return d if isinstance(d, WeightFunction) else WeightFunction.indicator(d)


def counting_operator(kind: str, weights: Iterable[Domain],
                      B: IntegerSet | None = None,
                      equation: Equation | None = None) -> Fraction:
    """Exact weighted counts T, T₁, T₂ and T_ℓ.

    T needs a DiagonalEquation and one weight per variable.  T₁/T₂ take two
    weights on the x-side plus the set B feeding three squares.  T_ℓ takes a
    SplitEquation with a zero-sum left side and one weight per x-variable.
    """
    weights = tuple(weights)
    if kind == "T":
        if not isinstance(equation, DiagonalEquation):
            raise ShapeError("T requires a DiagonalEquation")
        if len(weights) != equation.s:
            raise ShapeError(f"T needs {equation.s} weights, got {len(weights)}")
        return Fraction(count_bruteforce(CountRequest(equation, weights)))
    if kind in ("T1", "T2"):
        if len(weights) != 2 or B is None:
            raise ShapeError(f"{kind} needs two weights and a set B")
        eq = SplitEquation(l=1 if kind == "T1" else 2, k=2,
                           lam=(1, -1), mu=(1, 1, 1))
        req = CountRequest(eq, weights + (B, B, B))
        return Fraction(count_bruteforce(req))
    if kind == "Tl":
        if not isinstance(equation, SplitEquation):
            raise ShapeError("Tl requires a SplitEquation")
        if sum(equation.lam) != 0:
            raise ShapeError("Tl requires a zero-sum left side")
        if len(weights) != equation.s or B is None:
            raise ShapeError(f"Tl needs {equation.s} weights and a set B")
        req = CountRequest(equation, weights + (B,) * equation.t)
        return Fraction(count_bruteforce(req))
    raise ShapeError(f"unknown operator kind {kind!r}")


@dataclass(frozen=True)
class GrowthFit:
    slope: float
    intercept: float
    residual: float


def growth_exponent(counts: list[tuple[int, float]]) -> GrowthFit:
    """Least-squares slope of log(count) against log(N)."""
    if len(counts) < 3:
        raise RangeError("need at least 3 data points")
    ns = [n for n, _ in counts]
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise RangeError("N values must be strictly increasing")
    if any(c <= 0 for _, c in counts):
        raise RangeError("counts must be positive for a log-log fit")
    x = np.log([float(n) for n, _ in counts])
    y = np.log([float(c) for _, c in counts])
    (slope, intercept), res, *_ = np.polyfit(x, y, 1, full=True)
    residual = float(res[0]) if res.size else 0.0
    return GrowthFit(float(slope), float(intercept), residual)
