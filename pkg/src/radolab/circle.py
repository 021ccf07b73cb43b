"""Circle-method arithmetic: exponential sums, local densities, the singular
series and integral, and the main-term predictor 𝔖·𝔍·N^{s−k}."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .equations import DiagonalEquation
from .errors import RangeError, ResourceLimitError
from .wtrick import CircleContext


def gauss_sum(q: int, a: int, k: int) -> complex:
    """S(q, a) = Σ_{x <= q} e(a xᵏ / q), phases from exact residues."""
    if q < 1:
        raise RangeError("modulus must be positive")
    total = 0j
    for x in range(1, q + 1):
        r = a * pow(x, k, q) % q
        total += cmath.exp(2j * cmath.pi * r / q)
    return total


def _power_histogram(q: int, k: int) -> np.ndarray:
    """h[t] = #{x <= q : xᵏ ≡ t (mod q)}."""
    h = np.zeros(q, dtype=np.int64)
    for x in range(1, q + 1):
        h[pow(x, k, q)] += 1
    return h


def _all_gauss_sums(q: int, k: int) -> np.ndarray:
    """S(q, b) for every b mod q at once (length-q array)."""
    h = _power_histogram(q, k)
    return np.fft.ifft(h) * q


def complete_sum_Sqa(q: int, a: int, ctx: CircleContext) -> complex:
    """S_{q,a} = Σ_{r mod q} e((a/q)·((Wr+ξ)ᵏ − ξᵏ)/(kW))."""
    if q < 1:
        raise RangeError("modulus must be positive")
    total = 0j
    for r in range(q):
        n = ctx.lift_index(r) if r else 0
        total += cmath.exp(2j * cmath.pi * (a * n % q) / q)
    return total


@dataclass(frozen=True)
class LocalDensity:
    p: int
    depth: int
    value: Fraction
    previous: Fraction | None  # value at depth-1, for stabilization checks


def local_density(eq: DiagonalEquation, p: int, depth: int) -> LocalDensity:
    """χ_p at depth m: (#solutions mod p^m) / p^{m(s−1)}, via per-variable
    residue histograms combined by exact cyclic convolution."""
    if depth < 1:
        raise RangeError("depth must be >= 1")

    def solutions(m: int) -> int:
        q = p ** m
        if q > 1 << 16:
            raise ResourceLimitError(f"histogram modulus {q} too large")
        combined = None
        for c in eq.coeffs:
            h = np.zeros(q, dtype=object)
            base = _power_histogram(q, eq.k)
            for t in range(q):
                h[c * t % q] += int(base[t])
            if combined is None:
                combined = h
            else:
                nxt = np.zeros(q, dtype=object)
                for r in range(q):
                    if combined[r]:
                        nxt += combined[r] * np.roll(h, r)
                combined = nxt
        return int(combined[0])

    value = Fraction(solutions(depth), p ** (depth * (eq.s - 1)))
    prev = (Fraction(solutions(depth - 1), p ** ((depth - 1) * (eq.s - 1)))
            if depth > 1 else None)
    return LocalDensity(p, depth, value, prev)


@dataclass(frozen=True)
class SingularSeriesEstimate:
    Q_max: int
    partial_sums: tuple[float, ...]  # cumulative through q = 1..Q_max
    stabilization_gap: float  # |sum(Q) − sum(Q/2)|
    max_imag_residue: float
    local_products: dict[int, float] = field(default_factory=dict)

    @property
    def value(self) -> float:
        return self.partial_sums[-1]

    def partial_at(self, q: int) -> float:
        return self.partial_sums[min(q, len(self.partial_sums)) - 1]


def _check_signs(eq: DiagonalEquation) -> None:
    if all(c > 0 for c in eq.coeffs) or all(c < 0 for c in eq.coeffs):
        raise RangeError("all coefficients share a sign: only the zero "
                         "solution exists and the series is refused")


def singular_series(eq: DiagonalEquation, Q_max: int = 1000,
                    local_primes: tuple[int, ...] = ()) -> SingularSeriesEstimate:
    """𝔖 ≈ Σ_{q<=Q_max} q^{−s} Σ_{(a,q)=1} Π_i S(q, cᵢa).

    ``local_primes`` optionally adds depth-2 local densities χ_p for a
    non-asserted cross-check against the q-sum.
    """
    _check_signs(eq)
    if Q_max < 1 or Q_max > 4000:
        raise RangeError("Q_max must lie in [1, 4000]")
    s = eq.s
    partials = []
    running = 0.0
    imag_max = 0.0
    for q in range(1, Q_max + 1):
        sums = _all_gauss_sums(q, eq.k)
        a_vals = np.array([a for a in range(1, q + 1) if math.gcd(a, q) == 1])
        prod = np.ones(a_vals.size, dtype=complex)
        for c in eq.coeffs:
            prod *= sums[(c * a_vals) % q]
        term = prod.sum() / q ** s
        imag_max = max(imag_max, abs(term.imag))
        running += term.real
        partials.append(running)
    gap = abs(partials[-1] - partials[Q_max // 2 - 1]) if Q_max >= 2 else 0.0
    locals_ = {}
    for p in local_primes:
        locals_[p] = float(local_density(eq, p, 2).value)
    return SingularSeriesEstimate(Q_max, tuple(partials), gap, imag_max, locals_)


@dataclass(frozen=True)
class JEstimate:
    estimate: float
    stderr: float
    samples: int
    seed: int


def singular_integral(eq: DiagonalEquation, samples: int = 10 ** 7,
                      seed: int = 0, eps: float = 0.05) -> JEstimate:
    """Monte-Carlo slab-volume estimate of 𝔍: the density at 0 of
    Σ cᵢtᵢᵏ over t ∈ [0,1]^s, Richardson-extrapolated over ε and ε/2."""
    _check_signs(eq)
    if samples < 1000:
        raise RangeError("need at least 1000 samples")
    rng = np.random.default_rng(seed)
    hits_full = 0
    hits_half = 0
    chunk = 10 ** 6
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        t = rng.random((m, eq.s))
        vals = np.zeros(m)
        for c, col in zip(eq.coeffs, t.T):
            vals += c * col ** eq.k
        a = np.abs(vals)
        hits_full += int((a <= eps).sum())
        hits_half += int((a <= eps / 2).sum())
        done += m
    v_full = hits_full / (2 * eps * samples)
    v_half = hits_half / (eps * samples)
    estimate = 2 * v_half - v_full
    se_full = math.sqrt(max(hits_full, 1)) / (2 * eps * samples)
    se_half = math.sqrt(max(hits_half, 1)) / (eps * samples)
    stderr = math.sqrt(4 * se_half ** 2 + se_full ** 2)
    return JEstimate(estimate, stderr, samples, seed)


@dataclass(frozen=True)
class Prediction:
    N: int
    value: float
    band: float  # propagated one-sigma-style uncertainty

    @property
    def low(self) -> float:
        return self.value - self.band

    @property
    def high(self) -> float:
        return self.value + self.band


def predict_count(eq: DiagonalEquation, N: int,
                  series: SingularSeriesEstimate | None = None,
                  integral: JEstimate | None = None,
                  samples: int = 10 ** 7, seed: int = 0) -> Prediction:
    """Main-term prediction 𝔖·𝔍·N^{s−k} with a propagated uncertainty band."""
    if series is None:
        series = singular_series(eq)
    if integral is None:
        integral = singular_integral(eq, samples=samples, seed=seed)
    scale = float(N) ** (eq.s - eq.k)
    value = series.value * integral.estimate * scale
    rel_series = (series.stabilization_gap / abs(series.value)
                  if series.value else 1.0)
    rel_j = (integral.stderr / abs(integral.estimate)
             if integral.estimate else 1.0)
    band = abs(value) * (rel_series + 3 * rel_j)
    return Prediction(N, value, band)
