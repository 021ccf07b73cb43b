"""Sufficient-condition certificates for diagonal quadrics via an auxiliary
rational-point system, plus the 𝒩₁/𝒩₂ solution-count diagnostics.

For a zero-sum index set I (|I| = t, rearranged to the front) and
a = Σ_{i∉I} cᵢ, a certificate is an integer point (y, y₁..y_t) with y ≠ 0,
Σ cᵢyᵢ = 0 and a·y² + Σ cᵢyᵢ² = 0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .equations import DiagonalEquation, zero_sum_subsets
from .errors import RangeError, ResourceLimitError, UnsupportedDegreeError


@dataclass(frozen=True)
class LefmannCertificate:
    coeffs: tuple[int, ...]
    I: tuple[int, ...]  # 1-based indices with zero coefficient sum
    a: int
    y: int
    ys: tuple[int, ...]

    def verify(self) -> bool:
        cs = [self.coeffs[i - 1] for i in self.I]
        lin = sum(c * v for c, v in zip(cs, self.ys))
        quad = self.a * self.y ** 2 + sum(c * v * v for c, v in zip(cs, self.ys))
        return (self.y != 0 and sum(cs) == 0 and lin == 0 and quad == 0)

    def scaled(self, lam: int) -> "LefmannCertificate":
        if lam == 0:
            raise RangeError("scale must be nonzero")
        return LefmannCertificate(self.coeffs, self.I, self.a,
                                  lam * self.y,
                                  tuple(lam * v for v in self.ys))

    def to_json(self) -> str:
        return json.dumps({"coeffs": list(self.coeffs), "I": list(self.I),
                           "a": self.a, "y": self.y, "ys": list(self.ys),
                           "verified": self.verify()})


def _ordered_values(P: int):
    """0, 1, −1, 2, −2, ... down to ±P (canonical small-first order)."""
    return sorted(range(-P, P + 1), key=lambda v: (abs(v), -v))


def _require_quadric(eq: DiagonalEquation) -> None:
    if eq.k != 2:
        raise UnsupportedDegreeError("certificates exist for degree 2 only")


def _split_I(eq: DiagonalEquation, I: tuple[int, ...]):
    cs = tuple(eq.coeffs[i - 1] for i in I)
    if sum(cs) != 0:
        raise RangeError(f"index set {I} is not zero-sum")
    a = sum(c for j, c in enumerate(eq.coeffs, start=1) if j not in set(I))
    return cs, a


def lefmann_search(eq: DiagonalEquation, I: tuple[int, ...],
                   P: int) -> LefmannCertificate | None:
    """Exhaustive integer-point search with max-norm bound P.

    By homogeneity, y > 0 may be assumed; the yᵢ are found by a
    meet-in-the-middle join on (linear sum, square sum) over two halves.
    """
    _require_quadric(eq)
    if P < 1:
        raise RangeError("P must be positive")
    cs, a = _split_I(eq, I)
    t = len(cs)
    if a == 0:
        cert = LefmannCertificate(eq.coeffs, tuple(I), 0, 1, (1,) * t)
        assert cert.verify()
        return cert
    vals = np.array(_ordered_values(P), dtype=np.int64)
    m = vals.size
    half = t // 2

    def block_sums(block):
        lin = np.zeros(1, dtype=np.int64)
        sq = np.zeros(1, dtype=np.int64)
        for c in block:  # last variable varies fastest
            lin = (lin[:, None] + c * vals[None, :]).ravel()
            sq = (sq[:, None] + c * vals[None, :] ** 2).ravel()
        return lin, sq

    def decode(idx: int, size: int) -> tuple[int, ...]:
        out = []
        for pos in range(size - 1, -1, -1):
            out.append(int(vals[(idx // m ** pos) % m]))
        return tuple(out)

    lin_l, sq_l = block_sums(cs[:half])
    lin_r, sq_r = block_sums(cs[half:])
    shift = int(max(np.abs(sq_l).max(), np.abs(sq_r).max()) + abs(a) * P * P) + 1
    key_r = lin_r * (2 * shift) + sq_r
    order = np.argsort(key_r, kind="stable")
    sorted_r = key_r[order]
    for y in range(1, P + 1):
        target = -a * y * y
        wanted = -lin_l * (2 * shift) + (target - sq_l)
        pos = np.searchsorted(sorted_r, wanted, side="left")
        ok = (pos < sorted_r.size) & (sorted_r[np.minimum(pos, sorted_r.size - 1)]
                                      == wanted)
        hits = np.flatnonzero(ok)
        if hits.size:
            i = int(hits[0])
            j = int(order[pos[i]])
            cert = LefmannCertificate(eq.coeffs, tuple(I), a, y,
                                      decode(i, half) + decode(j, t - half))
            assert cert.verify()
            return cert
    return None


@dataclass(frozen=True)
class CertifyResult:
    certificate: LefmannCertificate | None
    tried: tuple[tuple[int, ...], ...]  # zero-sum index sets examined
    P: int

    @property
    def exhausted(self) -> bool:
        return self.certificate is None


def lefmann_certify(eq: DiagonalEquation, P: int = 50) -> CertifyResult:
    """Try every zero-sum index set, size-ascending then lexicographic;
    the first certificate wins."""
    _require_quadric(eq)
    tried = []
    for I in zero_sum_subsets(eq.coeffs):
        tried.append(I)
        cert = lefmann_search(eq, I, P)
        if cert is not None:
            return CertifyResult(cert, tuple(tried), P)
    return CertifyResult(None, tuple(tried), P)


@dataclass(frozen=True)
class LefmannDiagnostics:
    P: int
    N1: int  # solutions (y, ys) in [-P,P]^{t+1} of the full system
    N2: int  # solutions ys of the y-free double system
    N1_scaled: float  # N1 / P^{t-2}
    N2_scaled: float  # N2 / (P^{t-3} log P)
    halved: "LefmannDiagnostics | None" = None  # same counts at P // 2


def _pair_tables(cs: tuple[int, ...], P: int):
    """Vectorized (linear, square) sums for each half of the variables."""
    t = len(cs)
    half = t // 2
    vals = np.arange(-P, P + 1, dtype=np.int64)

    def sums(block: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
        lin = np.zeros(1, dtype=np.int64)
        sq = np.zeros(1, dtype=np.int64)
        for c in block:
            lin = (lin[:, None] + c * vals[None, :]).ravel()
            sq = (sq[:, None] + c * vals[None, :] ** 2).ravel()
        return lin, sq

    return sums(cs[:half]), sums(cs[half:])


class _JoinCounter:
    """Counts matches of (linear, square) sums across two halves, with the
    first half's combined keys sorted once up front."""

    def __init__(self, lin_a, sq_a, lin_b, sq_b, max_target: int):
        self.shift = int(max(np.abs(sq_a).max(initial=0),
                             np.abs(sq_b).max(initial=0), max_target)) + 1
        self.sorted_a = np.sort(lin_a * (2 * self.shift) + sq_a)
        self.lin_b, self.sq_b = lin_b, sq_b

    def count(self, lin_t: int, sq_t: int) -> int:
        key_b = ((lin_t - self.lin_b) * (2 * self.shift)
                 + (sq_t - self.sq_b))
        left = np.searchsorted(self.sorted_a, key_b, side="left")
        right = np.searchsorted(self.sorted_a, key_b, side="right")
        return int((right - left).sum())


def lefmann_diagnostics(eq: DiagonalEquation, I: tuple[int, ...], P: int,
                        include_halved: bool = True) -> LefmannDiagnostics:
    """Exact counts 𝒩₁ and 𝒩₂ at bound P (and at P//2 for the trend)."""
    _require_quadric(eq)
    cs, a = _split_I(eq, I)
    t = len(cs)
    if t > 6:
        raise ResourceLimitError("diagnostics support at most 6 indices")
    if P < 2:
        raise RangeError("P must be >= 2")
    (lin_a, sq_a), (lin_b, sq_b) = _pair_tables(cs, P)
    joiner = _JoinCounter(lin_a, sq_a, lin_b, sq_b, abs(a) * P * P)
    n2 = joiner.count(0, 0)
    n1 = joiner.count(0, 0)  # y = 0 slice
    for y in range(1, P + 1):
        n1 += 2 * joiner.count(0, -a * y * y)
    n1_scaled = n1 / P ** (t - 2)
    n2_scaled = n2 / (P ** (t - 3) * math.log(P))
    halved = (lefmann_diagnostics(eq, I, P // 2, include_halved=False)
              if include_halved and P // 2 >= 2 else None)
    return LefmannDiagnostics(P, n1, n2, n1_scaled, n2_scaled, halved)
